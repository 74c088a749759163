//! The geometric-state family in closed form.
//!
//! The geometric state is the eigenstate of f(N)a for f(n) = 1/√(n+1) with
//! eigenvalue √(1−η); its photon distribution is geometric in η. Adding m
//! photons produces a negative binomial state. The negative-m member has
//! closed-form coefficients whose normalization constant involves the Gauss
//! hypergeometric value ₂F₁(1,1;m+1;1−η), and its photon and
//! lowering-operator moments reduce to one-dimensional series.
//!
//! Every constructor here is independent of the generic recurrence
//! builders, so agreement between the two is a meaningful cross-check
//! rather than a tautology.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::builders::{finish_state, NlcsSpec, Sign};
use crate::error::{Error, Result};
use crate::fock::{FockVector, TruncationConfig};
use crate::nonlinear::NonlinearFn;
use crate::Complex64;

/// Iteration cap shared by the hypergeometric and moment series.
const SERIES_CAP: usize = 1_000_000;
/// A series terminates once the current term drops below this fraction of
/// the partial sum.
const SERIES_REL_TOL: f64 = 1e-16;

/// Parameters of a geometric-family state: distribution parameter η,
/// added-photon index (m, sign) and the truncation.
#[derive(Debug, Clone, Copy)]
pub struct GeometricSpec {
    pub eta: f64,
    pub m: u32,
    pub sign: Sign,
    pub cfg: TruncationConfig,
}

impl GeometricSpec {
    pub fn new(eta: f64, m: u32, sign: Sign, cfg: TruncationConfig) -> Result<Self> {
        let spec = GeometricSpec { eta, m, sign, cfg };
        spec.validate()?;
        Ok(spec)
    }

    /// The plain geometric state (m = 0).
    pub fn plain(eta: f64, cfg: TruncationConfig) -> Result<Self> {
        Self::new(eta, 0, Sign::Plus, cfg)
    }

    /// The m-photon-added geometric state, m ≥ 1.
    pub fn added(eta: f64, m: u32, cfg: TruncationConfig) -> Result<Self> {
        Self::new(eta, m, Sign::Plus, cfg)
    }

    /// The negative-m member, m ≥ 1.
    pub fn negative(eta: f64, m: u32, cfg: TruncationConfig) -> Result<Self> {
        Self::new(eta, m, Sign::Minus, cfg)
    }

    /// Eigenvalue of the family: α = √(1−η), real positive, which keeps
    /// every amplitude real non-negative.
    pub fn alpha(&self) -> f64 {
        (1.0 - self.eta).sqrt()
    }

    /// The equivalent generic-builder input: f(n) = 1/√(n+1), α = √(1−η).
    pub fn nlcs_spec(&self) -> NlcsSpec {
        NlcsSpec::new(
            NonlinearFn::inv_sqrt_n_plus_one(),
            Complex::new(self.alpha(), 0.0),
            self.cfg,
        )
    }

    fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidConfig("eta must lie in the open interval (0,1)"));
        }
        if self.m == 0 && self.sign == Sign::Minus {
            return Err(Error::InvalidConfig("m = 0 requires the positive sign"));
        }
        Ok(())
    }
}

fn factorial(m: u32) -> f64 {
    (1..=u64::from(m)).map(|j| j as f64).product()
}

fn geometric_amps(eta: f64, dim: usize) -> Vec<Complex64> {
    let ratio = (1.0 - eta).sqrt();
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    let mut cur = eta.sqrt();
    for slot in amps.iter_mut() {
        *slot = Complex::new(cur, 0.0);
        cur *= ratio;
    }
    amps
}

/// Geometric state: cₙ = √η·(1−η)^{n/2}, photon distribution η(1−η)ⁿ.
pub fn build_geometric(spec: &GeometricSpec) -> Result<FockVector> {
    spec.validate()?;
    if spec.m != 0 {
        return Err(Error::InvalidConfig("the plain geometric state takes m = 0"));
    }
    let v = FockVector::from_amplitudes(geometric_amps(spec.eta, spec.cfg.dim))?;
    finish_state(v, &spec.cfg, |d| Ok(geometric_amps(spec.eta, d)))
}

fn added_geometric_amps(eta: f64, m: u32, dim: usize) -> Vec<Complex64> {
    let m = m as usize;
    let z = 1.0 - eta;
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    // P(m+j) = C(m+j, j)·η^{m+1}·(1−η)ʲ, accumulated by its term ratio
    // (m+j+1)/(j+1)·(1−η).
    let mut mass = eta.powi(m as i32 + 1);
    for j in 0..dim.saturating_sub(m) {
        amps[m + j] = Complex::new(mass.sqrt(), 0.0);
        mass *= z * (m + j + 1) as f64 / (j + 1) as f64;
    }
    amps
}

/// m-photon-added geometric state: the negative binomial state with
/// photon distribution P(m+j) = C(m+j, j)·η^{m+1}·(1−η)ʲ and exactly zero
/// amplitude below m.
pub fn build_photon_added_geometric(spec: &GeometricSpec) -> Result<FockVector> {
    spec.validate()?;
    if spec.sign != Sign::Plus || spec.m == 0 {
        return Err(Error::InvalidConfig(
            "the photon-added geometric state takes the positive sign and m >= 1",
        ));
    }
    let v = FockVector::from_amplitudes(added_geometric_amps(spec.eta, spec.m, spec.cfg.dim))?;
    finish_state(v, &spec.cfg, |d| {
        Ok(added_geometric_amps(spec.eta, spec.m, d))
    })
}

fn negative_m_geometric_amps(spec: &GeometricSpec, dim: usize) -> Result<Vec<Complex64>> {
    let z = 1.0 - spec.eta;
    // c₀ = √(m!/₂F₁)·√(0!/m!) = 1/√₂F₁.
    let c0 = hyp2f1_11(spec.m, z)?.sqrt().recip();
    let sqrt_z = z.sqrt();
    let m = spec.m as usize;
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    let mut cur = c0;
    for (n, slot) in amps.iter_mut().enumerate() {
        *slot = Complex::new(cur, 0.0);
        // c_{n+1}/c_n = √(1−η)·√((n+1)/(n+m+1))
        cur *= sqrt_z * (((n + 1) as f64) / ((n + m + 1) as f64)).sqrt();
    }
    Ok(amps)
}

/// Closed-form coefficients of the negative-m geometric state,
/// cₙ = √(m!/₂F₁(1,1;m+1;1−η))·(1−η)^{n/2}·√(n!/(n+m)!), including the
/// hypergeometric normalization constant and NOT renormalized: the result
/// has unit norm up to truncation and series tolerance, which makes its
/// norm a direct test of the ₂F₁ identity.
pub fn negative_m_geometric_closed_form(spec: &GeometricSpec) -> Result<FockVector> {
    spec.validate()?;
    if spec.sign != Sign::Minus {
        return Err(Error::InvalidConfig(
            "the negative-m geometric state takes the minus sign",
        ));
    }
    FockVector::from_amplitudes(negative_m_geometric_amps(spec, spec.cfg.dim)?)
}

/// Negative-m geometric state, normalized.
pub fn build_negative_m_geometric(spec: &GeometricSpec) -> Result<FockVector> {
    let raw = negative_m_geometric_closed_form(spec)?;
    finish_state(raw, &spec.cfg, |d| negative_m_geometric_amps(spec, d))
}

/// ₂F₁(1,1;m+1;z) = Σₙ n!·m!·zⁿ/(n+m)!, summed until the current term
/// falls below 1e−16 of the partial sum. Near z → 1 with small m the
/// series converges too slowly for the iteration cap and errors out.
pub fn hyp2f1_11(m: u32, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::InvalidConfig("hypergeometric argument must lie in [0,1)"));
    }
    let m = m as usize;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..SERIES_CAP {
        term *= z * (n + 1) as f64 / (n + m + 1) as f64;
        sum += term;
        if term < SERIES_REL_TOL * sum {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceCap {
        iterations: SERIES_CAP,
        m: m as u32,
        z,
    })
}

fn require_negative(spec: &GeometricSpec) -> Result<()> {
    spec.validate()?;
    if spec.sign != Sign::Minus {
        return Err(Error::InvalidConfig("moment series apply to the negative-m family"));
    }
    Ok(())
}

/// ⟨Nᵏ⟩ of the negative-m state as the series
/// (m!/₂F₁)·Σₙ nᵏ·(1−η)ⁿ·n!/(n+m)!.
pub fn moment_nk_series(spec: &GeometricSpec, k: u32) -> Result<f64> {
    require_negative(spec)?;
    if k == 0 {
        return Err(Error::InvalidConfig("moment order must be positive"));
    }
    let z = 1.0 - spec.eta;
    let m = spec.m as usize;
    let prefactor = factorial(spec.m) / hyp2f1_11(spec.m, z)?;
    // b_0 = 1/m!; b_{n+1} = b_n·z·(n+1)/(n+m+1); term = nᵏ·b_n
    let mut b = 1.0 / factorial(spec.m);
    let mut sum = 0.0f64;
    for n in 0..SERIES_CAP {
        let term = (n as f64).powi(k as i32) * b;
        sum += term;
        if n > 0 && term < SERIES_REL_TOL * sum {
            return Ok(prefactor * sum);
        }
        b *= z * (n + 1) as f64 / (n + m + 1) as f64;
    }
    Err(Error::ConvergenceCap {
        iterations: SERIES_CAP,
        m: spec.m,
        z,
    })
}

/// ⟨aᵏ⟩ of the negative-m state as the series
/// (m!/₂F₁)·Σₙ (1−η)^{n+k/2}·(n+k)!/√((n+m)!·(n+m+k)!).
pub fn lowering_moment_series(spec: &GeometricSpec, k: u32) -> Result<f64> {
    require_negative(spec)?;
    if k == 0 {
        return Err(Error::InvalidConfig("moment order must be positive"));
    }
    let z = 1.0 - spec.eta;
    let m = spec.m as usize;
    let k = k as usize;
    let prefactor = factorial(spec.m) / hyp2f1_11(spec.m, z)?;
    // u_0 = z^{k/2}·k!/√(m!·(m+k)!)
    let mut u = z.powf(k as f64 / 2.0) * factorial(k as u32)
        / (factorial(m as u32) * factorial((m + k) as u32)).sqrt();
    let mut sum = 0.0f64;
    for n in 0..SERIES_CAP {
        sum += u;
        if n > 0 && u < SERIES_REL_TOL * sum {
            return Ok(prefactor * sum);
        }
        // u_{n+1}/u_n = z·(n+k+1)/√((n+m+1)·(n+m+k+1))
        u *= z * (n + k + 1) as f64 / (((n + m + 1) * (n + m + k + 1)) as f64).sqrt();
    }
    Err(Error::ConvergenceCap {
        iterations: SERIES_CAP,
        m: spec.m,
        z,
    })
}
