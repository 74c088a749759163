//! Truncated Fock-space vectors and ladder-operator actions.
//!
//! States live in the span of the number states |0⟩..|D-1⟩ and are stored as
//! dense complex amplitude arrays. Operators are implemented as actions on
//! vectors rather than materialized matrices: every operator used here is
//! banded, so an action costs O(D).
//!
//! Amplitude that an operator would push past the top of the space is
//! dropped, and its squared magnitude is accumulated in a per-vector
//! truncation-loss diagnostic.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::nonlinear::NonlinearFn;
use crate::Complex64;

/// Norm-squared deviation below which a vector counts as normalized.
pub const NORM_TOL: f64 = 1e-12;

/// Truncation dimension and the tolerances tied to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationConfig {
    /// Number of retained number states, indices 0..dim-1.
    pub dim: usize,
    /// Maximum acceptable probability mass beyond the residual boundary.
    pub tail_tol: f64,
    /// Top rows excluded from residual norms and tail checks.
    pub boundary_margin: usize,
}

impl TruncationConfig {
    pub const DEFAULT_DIM: usize = 512;
    pub const DEFAULT_TAIL_TOL: f64 = 1e-12;
    pub const DEFAULT_BOUNDARY_MARGIN: usize = 4;

    pub fn new(dim: usize, tail_tol: f64, boundary_margin: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfig("dimension must be positive"));
        }
        if boundary_margin >= dim {
            return Err(Error::InvalidConfig("boundary margin must be below the dimension"));
        }
        if !(tail_tol > 0.0) {
            return Err(Error::InvalidConfig("tail tolerance must be positive"));
        }
        Ok(TruncationConfig {
            dim,
            tail_tol,
            boundary_margin,
        })
    }

    /// Default tolerances at the given dimension.
    pub fn with_dim(dim: usize) -> Result<Self> {
        Self::new(
            dim,
            Self::DEFAULT_TAIL_TOL,
            Self::DEFAULT_BOUNDARY_MARGIN.min(dim.saturating_sub(1)),
        )
    }

    /// First index excluded from residual norms: dim - boundary_margin.
    pub fn band_end(&self) -> usize {
        self.dim - self.boundary_margin
    }

    /// Re-checks the field invariants; fields are public and may have been
    /// set directly.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.dim, self.tail_tol, self.boundary_margin).map(|_| ())
    }
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            dim: Self::DEFAULT_DIM,
            tail_tol: Self::DEFAULT_TAIL_TOL,
            boundary_margin: Self::DEFAULT_BOUNDARY_MARGIN,
        }
    }
}

/// A state vector over the truncated number basis.
///
/// Values are immutable after construction; every operation returns a new
/// vector, so concurrent evaluation needs no coordination.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
    truncation_loss: f64,
}

impl FockVector {
    /// Wraps raw amplitudes, rejecting NaN or infinite entries.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidConfig("dimension must be positive"));
        }
        for (n, a) in amps.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::NonFinite {
                    name: alloc::string::String::from("amplitude"),
                    arg: n as i64,
                });
            }
        }
        Ok(FockVector {
            amps,
            truncation_loss: 0.0,
        })
    }

    pub fn zeros(dim: usize) -> Self {
        FockVector {
            amps: vec![Complex::new(0.0, 0.0); dim],
            truncation_loss: 0.0,
        }
    }

    /// The number state |n⟩ in a space of dimension `cfg.dim`.
    pub fn basis(n: usize, cfg: &TruncationConfig) -> Result<Self> {
        if n >= cfg.dim {
            return Err(Error::IndexOutOfRange { n, dim: cfg.dim });
        }
        let mut v = FockVector::zeros(cfg.dim);
        v.amps[n] = Complex::new(1.0, 0.0);
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps[n]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Squared magnitude dropped past the top row by the operations that
    /// produced this vector, in the amplitude scale current at the drop.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub(crate) fn with_truncation_loss(mut self, loss: f64) -> Self {
        self.truncation_loss = loss;
        self
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Norm restricted to indices 0..=upto (clamped to the dimension).
    pub fn band_norm(&self, upto: usize) -> f64 {
        let end = (upto + 1).min(self.amps.len());
        self.amps[..end]
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() < NORM_TOL
    }

    /// m-fold creation operator. Applied as m successive single raises so
    /// composed and repeated applications agree bitwise.
    pub fn raised(&self, m: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.raised_once();
        }
        out
    }

    fn raised_once(&self) -> Self {
        let dim = self.dim();
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        for n in 0..dim - 1 {
            amps[n + 1] = self.amps[n] * ((n + 1) as f64).sqrt();
        }
        let dropped = self.amps[dim - 1].norm_sqr() * dim as f64;
        FockVector {
            amps,
            truncation_loss: self.truncation_loss + dropped,
        }
    }

    /// m-fold annihilation operator.
    pub fn lowered(&self, m: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..m {
            out = out.lowered_once();
        }
        out
    }

    fn lowered_once(&self) -> Self {
        let dim = self.dim();
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        for n in 1..dim {
            amps[n - 1] = self.amps[n] * (n as f64).sqrt();
        }
        FockVector {
            amps,
            truncation_loss: self.truncation_loss,
        }
    }

    /// Inverse annihilation operator: |n⟩ -> |n+1⟩/sqrt(n+1). Raises the
    /// index, dropping the top row into the truncation-loss account.
    pub fn inv_lowered(&self) -> Self {
        let dim = self.dim();
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        for n in 0..dim - 1 {
            amps[n + 1] = self.amps[n] / ((n + 1) as f64).sqrt();
        }
        let dropped = self.amps[dim - 1].norm_sqr() / dim as f64;
        FockVector {
            amps,
            truncation_loss: self.truncation_loss + dropped,
        }
    }

    /// Inverse creation operator: |n⟩ -> |n-1⟩/sqrt(n) and |0⟩ -> 0.
    pub fn inv_raised(&self) -> Self {
        let dim = self.dim();
        let mut amps = vec![Complex::new(0.0, 0.0); dim];
        for n in 1..dim {
            amps[n - 1] = self.amps[n] / (n as f64).sqrt();
        }
        FockVector {
            amps,
            truncation_loss: self.truncation_loss,
        }
    }

    /// Diagonal operator g(N): multiplies the amplitude at n by g(n).
    pub fn diagonal(&self, g: &NonlinearFn) -> Result<Self> {
        let mut amps = Vec::with_capacity(self.dim());
        for (n, a) in self.amps.iter().enumerate() {
            let v = g.eval(n as i64);
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    name: alloc::string::String::from(g.name()),
                    arg: n as i64,
                });
            }
            amps.push(a * v);
        }
        Ok(FockVector {
            amps,
            truncation_loss: self.truncation_loss,
        })
    }

    /// ⟨self|other⟩ = Σ conj(self[n])·other[n].
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Unit-norm copy with the global phase fixed so the lowest-index
    /// nonzero amplitude is real and positive.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let first = self
            .amps
            .iter()
            .find(|a| a.re != 0.0 || a.im != 0.0)
            .expect("nonzero norm implies a nonzero amplitude");
        let amps = if first.im == 0.0 && first.re > 0.0 {
            self.amps.iter().map(|a| a / norm).collect()
        } else {
            let phase = first.conj() / first.norm();
            self.amps.iter().map(|a| a * phase / norm).collect()
        };
        Ok(FockVector {
            amps,
            truncation_loss: self.truncation_loss / (norm * norm),
        })
    }

    /// Probability mass at index k and above, relative to the full norm.
    pub fn tail_mass(&self, k: usize) -> f64 {
        let total = self.norm_sqr();
        if total == 0.0 || k >= self.dim() {
            return 0.0;
        }
        let tail: f64 = self.amps[k..].iter().map(|a| a.norm_sqr()).sum();
        tail / total
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        FockVector {
            amps: self.amps.iter().map(|a| a * c).collect(),
            truncation_loss: self.truncation_loss * c.norm_sqr(),
        }
    }

    /// self - other, for residual computations.
    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(FockVector {
            amps: self
                .amps
                .iter()
                .zip(other.amps.iter())
                .map(|(a, b)| a - b)
                .collect(),
            truncation_loss: self.truncation_loss + other.truncation_loss,
        })
    }

    /// In-place self += c * other. Both vectors must share a dimension.
    pub fn add_scaled(&mut self, c: Complex64, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        for (a, b) in self.amps.iter_mut().zip(other.amps.iter()) {
            *a += c * b;
        }
        self.truncation_loss += other.truncation_loss * c.norm_sqr();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg(dim: usize) -> TruncationConfig {
        TruncationConfig::with_dim(dim).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex::new(re, im)
    }

    #[test]
    fn basis_state_vacuum_and_excited() {
        let cfg = cfg(8);
        let vac = FockVector::basis(0, &cfg).unwrap();
        assert_eq!(vac.amp(0), c(1.0, 0.0));
        assert!(vac.amplitudes()[1..].iter().all(|a| a.norm_sqr() == 0.0));
        assert!(vac.is_normalized());

        let three = FockVector::basis(3, &cfg).unwrap();
        assert_eq!(three.amp(3), c(1.0, 0.0));
    }

    #[test]
    fn basis_state_out_of_range() {
        let cfg = cfg(8);
        assert_eq!(
            FockVector::basis(8, &cfg),
            Err(Error::IndexOutOfRange { n: 8, dim: 8 })
        );
    }

    #[test]
    fn raise_vacuum() {
        let cfg = cfg(8);
        let one = FockVector::basis(0, &cfg).unwrap().raised(1);
        assert_eq!(one.amp(1), c(1.0, 0.0));
    }

    #[test]
    fn double_raise_factorial_ratio() {
        // a†² |1⟩ = sqrt(3!/1!) |3⟩ = sqrt(6) |3⟩
        let cfg = cfg(8);
        let s = FockVector::basis(1, &cfg).unwrap().raised(2);
        assert_abs_diff_eq!(s.amp(3).re, 2.449489742783178, epsilon = 1e-15);
        assert_eq!(s.amp(3).im, 0.0);
    }

    #[test]
    fn raise_top_row_drops_with_loss() {
        // a† |D-1⟩: the would-be amplitude sqrt(D) at index D is dropped.
        let cfg = cfg(8);
        let s = FockVector::basis(7, &cfg).unwrap().raised(1);
        assert!(s.is_zero());
        assert_abs_diff_eq!(s.truncation_loss(), 8.0, epsilon = 1e-15);
    }

    #[test]
    fn lower_vacuum_annihilates() {
        let cfg = cfg(8);
        assert!(FockVector::basis(0, &cfg).unwrap().lowered(1).is_zero());
    }

    #[test]
    fn lower_ladder_values() {
        let cfg = cfg(8);
        let s = FockVector::basis(2, &cfg).unwrap().lowered(1);
        assert_abs_diff_eq!(s.amp(1).re, 2.0_f64.sqrt(), epsilon = 1e-15);

        // a² |5⟩ = sqrt(5·4) |3⟩ = sqrt(20) |3⟩
        let s = FockVector::basis(5, &cfg).unwrap().lowered(2);
        assert_abs_diff_eq!(s.amp(3).re, 4.47213595499958, epsilon = 1e-14);
    }

    #[test]
    fn inverse_lower_values() {
        let cfg = cfg(8);
        let s = FockVector::basis(0, &cfg).unwrap().inv_lowered();
        assert_eq!(s.amp(1), c(1.0, 0.0));

        let s = FockVector::basis(3, &cfg).unwrap().inv_lowered();
        assert_abs_diff_eq!(s.amp(4).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn inverse_raise_values() {
        let cfg = cfg(8);
        assert!(FockVector::basis(0, &cfg).unwrap().inv_raised().is_zero());

        let s = FockVector::basis(4, &cfg).unwrap().inv_raised();
        assert_abs_diff_eq!(s.amp(3).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn inverse_relations_hold_below_top() {
        let cfg = cfg(16);
        for n in 0..cfg.dim - 1 {
            let basis = FockVector::basis(n, &cfg).unwrap();
            let round = basis.inv_lowered().lowered(1);
            assert_abs_diff_eq!(round.minus(&basis).unwrap().norm(), 0.0, epsilon = 1e-15);
            let round = basis.raised(1).inv_raised();
            assert_abs_diff_eq!(round.minus(&basis).unwrap().norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diagonal_number_operator() {
        let cfg = cfg(8);
        let g = NonlinearFn::new("n", |n| Complex::new(n as f64, 0.0));
        let s = FockVector::basis(5, &cfg).unwrap().diagonal(&g).unwrap();
        assert_eq!(s.amp(5), c(5.0, 0.0));
    }

    #[test]
    fn diagonal_inv_sqrt_value() {
        let cfg = cfg(8);
        let g = NonlinearFn::inv_sqrt_n_plus_one();
        let s = FockVector::basis(3, &cfg).unwrap().diagonal(&g).unwrap();
        assert_abs_diff_eq!(s.amp(3).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_rejects_non_finite() {
        let cfg = cfg(8);
        let g = NonlinearFn::new("bad", |n| {
            if n == 5 {
                Complex::new(f64::INFINITY, 0.0)
            } else {
                Complex::new(1.0, 0.0)
            }
        });
        let err = FockVector::basis(0, &cfg).unwrap().diagonal(&g).unwrap_err();
        assert!(matches!(err, Error::NonFinite { arg: 5, .. }));
    }

    #[test]
    fn inner_product_orthonormality() {
        let cfg = cfg(8);
        let zero = FockVector::basis(0, &cfg).unwrap();
        let one = FockVector::basis(1, &cfg).unwrap();
        assert_eq!(zero.inner(&zero).unwrap(), c(1.0, 0.0));
        assert_eq!(zero.inner(&one).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_dim_mismatch() {
        let a = FockVector::zeros(4);
        let b = FockVector::zeros(5);
        assert!(matches!(
            a.inner(&b),
            Err(Error::DimensionMismatch { left: 4, right: 5 })
        ));
    }

    #[test]
    fn normalize_scales_and_fixes_phase() {
        let s = FockVector::from_amplitudes(vec![c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        let n = s.normalized().unwrap();
        assert_eq!(n.amp(0), c(1.0, 0.0));

        // [0, -3i] -> [0, 1]: lowest nonzero amplitude made real positive.
        let s = FockVector::from_amplitudes(vec![c(0.0, 0.0), c(0.0, -3.0)]).unwrap();
        let n = s.normalized().unwrap();
        assert_abs_diff_eq!(n.amp(1).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n.amp(1).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn normalize_zero_vector_fails() {
        assert_eq!(FockVector::zeros(4).normalized(), Err(Error::ZeroNorm));
    }

    #[test]
    fn tail_mass_basics() {
        let cfg = cfg(8);
        let vac = FockVector::basis(0, &cfg).unwrap();
        assert_eq!(vac.tail_mass(1), 0.0);
        assert_abs_diff_eq!(vac.tail_mass(0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn geometric_tail_mass_closed_form() {
        // |c_n|² = η(1-η)ⁿ with η = 0.5: tail at k is (1-η)^k = 2^-40.
        let dim = 128;
        let eta: f64 = 0.5;
        let amps: Vec<Complex64> = (0..dim)
            .map(|n| c((eta * (1.0 - eta).powi(n as i32)).sqrt(), 0.0))
            .collect();
        let s = FockVector::from_amplitudes(amps).unwrap();
        assert_abs_diff_eq!(s.tail_mass(40), 9.094947017729282e-13, epsilon = 1e-24);
    }
}
