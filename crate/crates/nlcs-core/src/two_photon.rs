//! Two-photon nonlinear coherent states: eigenstates of F(N)a².
//!
//! a² preserves parity, so the eigenspace is two-dimensional and a state
//! is fixed only after choosing a seed (pure even, pure odd, or a mix with
//! a given c₁/c₀). Photon-added versions a†ᵐ|ψ⟩ are again eigenstates of a
//! deformed F(N−m)[1 − m/(N+2)][1 − m/(N+1)]·a², which rests on the
//! operator identity a²a†ᵐa² = (N+4−m)(N+3−m)·a²a†^{m−2}; both facts are
//! checked numerically here.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::builders::{eigen_residual, finish_state, rescale_if_large, AddedPhotonIndex, Sign};
use crate::error::{Error, Result};
use crate::fock::{FockVector, TruncationConfig};
use crate::nonlinear::NonlinearFn;
use crate::Complex64;

/// Seed amplitudes (c₀, c₁) selecting a member of the two-dimensional
/// eigenspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoPhotonSeed {
    /// (1, 0): support on even photon numbers.
    Even,
    /// (0, 1): support on odd photon numbers.
    Odd,
    /// (1, ratio): both parity chains, with c₁/c₀ = ratio.
    Mixed(Complex64),
}

/// Deformation F, eigenvalue α, sector seed and truncation for a
/// two-photon nonlinear coherent state.
#[derive(Debug, Clone)]
pub struct TwoPhotonSpec {
    pub f: NonlinearFn,
    pub alpha: Complex64,
    pub seed: TwoPhotonSeed,
    pub cfg: TruncationConfig,
}

impl TwoPhotonSpec {
    pub fn new(
        f: NonlinearFn,
        alpha: Complex64,
        seed: TwoPhotonSeed,
        cfg: TruncationConfig,
    ) -> Self {
        TwoPhotonSpec {
            f,
            alpha,
            seed,
            cfg,
        }
    }

    fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if !self.alpha.is_finite() {
            return Err(Error::InvalidConfig("eigenvalue must be finite"));
        }
        if let TwoPhotonSeed::Mixed(r) = self.seed {
            if !r.is_finite() {
                return Err(Error::InvalidConfig("mixed seed ratio must be finite"));
            }
        }
        Ok(())
    }
}

/// Unnormalized coefficients of the F(N)a² eigenstate:
/// c_{n+2} = α·cₙ / (F(n)·√((n+1)(n+2))). F is evaluated only at indices
/// actually divided by, so a parity-pure seed never touches the other
/// chain.
fn two_photon_coefficients(spec: &TwoPhotonSpec, dim: usize) -> Result<Vec<Complex64>> {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let mut c = vec![zero; dim];
    let (c0, c1) = match spec.seed {
        TwoPhotonSeed::Even => (one, zero),
        TwoPhotonSeed::Odd => (zero, one),
        TwoPhotonSeed::Mixed(r) => (one, r),
    };
    c[0] = c0;
    if dim > 1 {
        c[1] = c1;
    }
    if spec.alpha.re == 0.0 && spec.alpha.im == 0.0 {
        return Ok(c);
    }
    for n in 0..dim.saturating_sub(2) {
        if c[n].norm_sqr() == 0.0 {
            continue;
        }
        let fv = spec.f.eval(n as i64);
        if !fv.is_finite() {
            return Err(Error::NonFinite {
                name: spec.f.name().into(),
                arg: n as i64,
            });
        }
        if fv.norm_sqr() == 0.0 {
            return Err(Error::ZeroNonlinearity {
                name: spec.f.name().into(),
                arg: n as i64,
            });
        }
        let step = spec.alpha * c[n] / (fv * (((n + 1) * (n + 2)) as f64).sqrt());
        let (head, rest) = c.split_at_mut(n + 2);
        rest[0] = step;
        rescale_if_large(&mut rest[0], head);
    }
    Ok(c)
}

/// Eigenstate of F(N)a² with eigenvalue α, from the given seed.
pub fn build_two_photon_nlcs(spec: &TwoPhotonSpec) -> Result<FockVector> {
    spec.validate()?;
    let amps = two_photon_coefficients(spec, spec.cfg.dim)?;
    finish_state(FockVector::from_amplitudes(amps)?, &spec.cfg, |d| {
        two_photon_coefficients(spec, d)
    })
}

/// Normalized a†ᵐ applied to the two-photon state. m = 0 returns the base
/// state unchanged; amplitude pushed past the top row by the raise is
/// recorded in the result's truncation loss.
pub fn build_photon_added_two_photon(spec: &TwoPhotonSpec, m: u32) -> Result<FockVector> {
    if m == 0 {
        return build_two_photon_nlcs(spec);
    }
    let raised = build_two_photon_nlcs(spec)?.raised(m);
    finish_state(raised, &spec.cfg, |d| {
        let base = FockVector::from_amplitudes(two_photon_coefficients(spec, d)?)?;
        Ok(base.raised(m).amplitudes().to_vec())
    })
}

/// Dispatch on the added-photon index. The negative-m slot is reserved
/// but deliberately not constructed.
pub fn build_added_two_photon(spec: &TwoPhotonSpec, idx: AddedPhotonIndex) -> Result<FockVector> {
    match idx.sign {
        Sign::Plus => build_photon_added_two_photon(spec, idx.m),
        Sign::Minus => Err(Error::Unsupported(
            "negative-m two-photon states are not constructed",
        )),
    }
}

/// Worst relative defect of a²a†ᵐa² = (N+4−m)(N+3−m)·a²a†^{m−2} over
/// basis states |n⟩, n ≤ n_max. Each defect norm is scaled by the norm of
/// the diagonal side, which grows like a square root of factorial ratios
/// and would otherwise swamp an absolute measure with its own rounding.
pub fn operator_identity_residual(m: u32, n_max: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidConfig("the operator identity needs m >= 2"));
    }
    let dim = n_max + m as usize + 3;
    let cfg = TruncationConfig::with_dim(dim)?;
    let shift = NonlinearFn::new("(n+4-m)(n+3-m)", move |n| {
        let m = i64::from(m);
        Complex::new(((n + 4 - m) * (n + 3 - m)) as f64, 0.0)
    });
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let e = FockVector::basis(n, &cfg)?;
        let lhs = e.lowered(2).raised(m).lowered(2);
        let rhs = e.raised(m - 2).lowered(2).diagonal(&shift)?;
        let defect = lhs.minus(&rhs)?.norm();
        let scale = rhs.norm().max(1.0);
        worst = worst.max(defect / scale);
    }
    Ok(worst)
}

/// Residual of the m-added state against its deformed eigen-relation
/// F(N−m)[1 − m/(N+2)][1 − m/(N+1)]·a², measured on the band that
/// excludes the top boundary_margin + m + 2 rows.
pub fn two_photon_added_residual(spec: &TwoPhotonSpec, m: u32) -> Result<f64> {
    let state = build_photon_added_two_photon(spec, m)?;
    let g = spec.f.two_photon_added(m);
    let margin = spec.cfg.boundary_margin + m as usize + 2;
    eigen_residual(&state, 2, &g, spec.alpha, margin)
}
