//! Observables of truncated Fock vectors: photon distribution, photon
//! moments, Mandel Q, and quadrature means/variances.
//!
//! Quadratures are X = (a + a†)/2 and Y = (a − a†)/(2i). Variances are
//! computed from e₁ = ⟨a⟩, e₂ = ⟨a²⟩ and n̄ = ⟨a†a⟩ in the general complex
//! form; for states with real amplitudes both expectations are real and
//! the expressions reduce to the familiar real-case ones.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::builders::Sign;
use crate::error::{Error, Result};
use crate::fock::FockVector;

/// P(n) = |cₙ|² for each basis index.
pub fn photon_distribution(s: &FockVector) -> Vec<f64> {
    s.amplitudes().iter().map(|c| c.norm_sqr()).collect()
}

/// Σₙ nᵏ·P(n).
pub fn mean_nk(s: &FockVector, k: u32) -> f64 {
    s.amplitudes()
        .iter()
        .enumerate()
        .map(|(n, c)| (n as f64).powi(k as i32) * c.norm_sqr())
        .sum()
}

/// Mandel Q = (⟨N²⟩ − ⟨N⟩² − ⟨N⟩)/⟨N⟩. Undefined (0/0) at the vacuum.
pub fn mandel_q(s: &FockVector) -> Result<f64> {
    let n1 = mean_nk(s, 1);
    if n1 < 1e-14 {
        return Err(Error::VacuumMandelQ);
    }
    let n2 = mean_nk(s, 2);
    Ok((n2 - n1 * n1 - n1) / n1)
}

/// Quadrature means and variances of X = (a + a†)/2, Y = (a − a†)/(2i).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureStats {
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
}

impl QuadratureStats {
    pub fn uncertainty_product(&self) -> f64 {
        self.var_x * self.var_y
    }
}

/// Var(X) = 1/4 + ½(n̄ + Re e₂) − (Re e₁)²,
/// Var(Y) = 1/4 + ½(n̄ − Re e₂) − (Im e₁)², valid for complex e₁, e₂.
pub fn quadrature_stats(s: &FockVector) -> Result<QuadratureStats> {
    let e1 = s.inner(&s.lowered(1))?;
    let e2 = s.inner(&s.lowered(2))?;
    let n1 = mean_nk(s, 1);
    Ok(QuadratureStats {
        mean_x: e1.re,
        mean_y: e1.im,
        var_x: 0.25 + 0.5 * (n1 + e2.re) - e1.re * e1.re,
        var_y: 0.25 + 0.5 * (n1 - e2.re) - e1.im * e1.im,
    })
}

/// One sweep row: the state's parameters together with its photon moments,
/// Mandel Q, quadrature variances, uncertainty product, and the
/// probability mass at or above a given index.
#[derive(Debug, Clone, Copy)]
pub struct StatsRecord {
    pub eta: f64,
    pub m: u32,
    pub sign: Sign,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub q: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub uncertainty_product: f64,
    pub tail: f64,
}

impl StatsRecord {
    pub fn measure(
        eta: f64,
        m: u32,
        sign: Sign,
        state: &FockVector,
        tail_from: usize,
    ) -> Result<Self> {
        let quad = quadrature_stats(state)?;
        Ok(StatsRecord {
            eta,
            m,
            sign,
            mean_n: mean_nk(state, 1),
            mean_n2: mean_nk(state, 2),
            q: mandel_q(state)?,
            var_x: quad.var_x,
            var_y: quad.var_y,
            uncertainty_product: quad.uncertainty_product(),
            tail: state.tail_mass(tail_from),
        })
    }
}
