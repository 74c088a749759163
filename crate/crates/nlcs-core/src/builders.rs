//! Constructors for nonlinear coherent states and their photon-added
//! variants, plus the sector operators A, G† and residual checks.
//!
//! A nonlinear coherent state is the eigenstate of f(N)a with eigenvalue α.
//! Adding m photons with a†ᵐ yields an eigenstate of the deformed lowering
//! operator f(N−m)[1 − m/(N+1)]a; the negative-m family consists of
//! eigenstates of f(N+m)[1 + m/(N+1)]a. Each added-photon state is built by
//! independent routes (operator application, deformed exponential, series
//! recurrence, inverse ladder operators) that must agree, which is the main
//! correctness check on all of them.
//!
//! All builders return unit-norm, phase-fixed vectors and fail with a
//! tail-mass error when the truncation dimension cannot hold the state.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fock::{FockVector, TruncationConfig};
use crate::nonlinear::NonlinearFn;
use crate::Complex64;

/// Raw series coefficients are kept below this magnitude by periodic
/// rescaling; the overall scale is absorbed by the final normalization.
const MAG_LIMIT: f64 = 1e120;
const MAG_SCALE: f64 = 1e-120;

/// Largest dimension probed when estimating an adequate truncation size
/// for a failed tail-mass check.
const PROBE_CAP: usize = 1 << 20;

/// Family selector for added-photon states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// a†ᵐ-added states; effective deformation f(N−m)[1 − m/(N+1)].
    Plus,
    /// Negative-m states; effective deformation f(N+m)[1 + m/(N+1)].
    Minus,
}

/// Added-photon count m tagged with its family sign. m = 0 is meaningful
/// only for `Sign::Plus`, where the family degenerates to the plain
/// nonlinear coherent state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AddedPhotonIndex {
    pub m: u32,
    pub sign: Sign,
}

impl AddedPhotonIndex {
    pub fn new(m: u32, sign: Sign) -> Result<Self> {
        if m == 0 && sign == Sign::Minus {
            return Err(Error::InvalidConfig("m = 0 requires the positive sign"));
        }
        Ok(AddedPhotonIndex { m, sign })
    }

    /// m photons added by a†ᵐ.
    pub fn added(m: u32) -> Self {
        AddedPhotonIndex {
            m,
            sign: Sign::Plus,
        }
    }

    /// Index into the negative-m family; requires m ≥ 1.
    pub fn negative(m: u32) -> Result<Self> {
        Self::new(m, Sign::Minus)
    }
}

/// Deformation f, eigenvalue α and truncation for a nonlinear coherent
/// state.
#[derive(Debug, Clone)]
pub struct NlcsSpec {
    pub f: NonlinearFn,
    pub alpha: Complex64,
    pub cfg: TruncationConfig,
}

impl NlcsSpec {
    pub fn new(f: NonlinearFn, alpha: Complex64, cfg: TruncationConfig) -> Self {
        NlcsSpec { f, alpha, cfg }
    }

    fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if !self.alpha.is_finite() {
            return Err(Error::InvalidConfig("eigenvalue must be finite"));
        }
        Ok(())
    }
}

/// A = g(N)·a with g the effective deformation of an added-photon family.
///
/// For `Sign::Plus` the diagonal factor vanishes at n = m−1, so A
/// annihilates both |0⟩ and |m⟩; for `Sign::Minus` it annihilates only
/// |0⟩ and the sector above the vacuum is infinite.
#[derive(Debug, Clone)]
pub struct DeformedLoweringOp {
    f: NonlinearFn,
    m: u32,
    sign: Sign,
    diag: NonlinearFn,
}

impl DeformedLoweringOp {
    pub fn new(f: NonlinearFn, m: u32, sign: Sign) -> Self {
        let diag = match sign {
            Sign::Plus => f.photon_added(m),
            Sign::Minus => f.photon_added_negative(m),
        };
        DeformedLoweringOp { f, m, sign, diag }
    }

    pub fn f(&self) -> &NonlinearFn {
        &self.f
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The diagonal factor g(N).
    pub fn diagonal(&self) -> &NonlinearFn {
        &self.diag
    }

    /// First index of the basis sector on which [A, G†] = 1 holds.
    pub fn sector_start(&self) -> usize {
        match self.sign {
            Sign::Plus => self.m as usize,
            Sign::Minus => 0,
        }
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        v.lowered(1).diagonal(&self.diag)
    }
}

/// G† = A†·(AA†)⁻¹·(a†a + 1 − j), the conjugate of A = g(N)a on the
/// sector starting at |j⟩: [A, G†] = 1 there, so exp(αG†) maps the
/// sector's annihilated state to the α-eigenstate of A.
///
/// On |n⟩ the composition reduces to (n+1−j)/(g(n)·√(n+1)) · |n+1⟩.
#[derive(Debug, Clone)]
pub struct ConjugateRaisingOp {
    j: usize,
    g: NonlinearFn,
}

impl ConjugateRaisingOp {
    /// Assembles the operator from a sector start and the diagonal factor
    /// of the paired lowering operator.
    pub fn from_parts(j: usize, g: NonlinearFn) -> Self {
        ConjugateRaisingOp { j, g }
    }

    pub fn sector_start(&self) -> usize {
        self.j
    }

    /// Raising coefficient γ(n), with G†|n⟩ = γ(n)|n+1⟩.
    pub fn coefficient(&self, n: usize) -> Result<Complex64> {
        let num = (n + 1) as f64 - self.j as f64;
        if num == 0.0 {
            return Ok(Complex::new(0.0, 0.0));
        }
        let gv = self.g.eval(n as i64);
        if !gv.is_finite() {
            return Err(Error::NonFinite {
                name: String::from(self.g.name()),
                arg: n as i64,
            });
        }
        if gv.re == 0.0 && gv.im == 0.0 {
            return Err(Error::SectorSingular { n });
        }
        Ok(Complex::new(num, 0.0) / (gv * ((n + 1) as f64).sqrt()))
    }

    /// Applies G†, dropping the top row into the truncation-loss account.
    /// Coefficients are evaluated only where the input has support, so a
    /// singular coefficient on an unpopulated index is never touched.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        let dim = v.dim();
        let mut out = vec![Complex::new(0.0, 0.0); dim];
        let mut dropped = 0.0;
        for n in 0..dim {
            let a = v.amp(n);
            if a.re == 0.0 && a.im == 0.0 {
                continue;
            }
            let w = a * self.coefficient(n)?;
            if n + 1 < dim {
                out[n + 1] = w;
            } else {
                dropped += w.norm_sqr();
            }
        }
        Ok(FockVector::from_amplitudes(out)?
            .with_truncation_loss(v.truncation_loss() + dropped))
    }
}

/// Conjugate raising operator for A on the sector starting at |j⟩, from
/// G† = (1/p)·A†·(AA†)⁻¹·(a†a + p − j). Only single-quantum lowering
/// (p = 1) is supported.
pub fn make_g_dagger(a: &DeformedLoweringOp, p: u32, j: usize) -> Result<ConjugateRaisingOp> {
    if p != 1 {
        return Err(Error::Unsupported(
            "conjugate raising operators are built only for single-quantum lowering (p = 1)",
        ));
    }
    Ok(ConjugateRaisingOp::from_parts(j, a.diagonal().clone()))
}

pub(crate) fn rescale_if_large(cur: &mut Complex64, filled: &mut [Complex64]) {
    if cur.re.abs() > MAG_LIMIT || cur.im.abs() > MAG_LIMIT {
        for a in filled.iter_mut() {
            *a *= MAG_SCALE;
        }
        *cur *= MAG_SCALE;
    }
}

/// Unnormalized eigenstate coefficients: c₀ = 1,
/// c_{n+1} = α·c_n / (√(n+1)·f(n)).
fn series_coefficients(f: &NonlinearFn, alpha: Complex64, dim: usize) -> Result<Vec<Complex64>> {
    let mut c = vec![Complex::new(0.0, 0.0); dim];
    c[0] = Complex::new(1.0, 0.0);
    if alpha.re == 0.0 && alpha.im == 0.0 {
        return Ok(c);
    }
    let mut cur = c[0];
    for n in 0..dim - 1 {
        let fv = f.eval(n as i64);
        if !fv.is_finite() {
            return Err(Error::NonFinite {
                name: String::from(f.name()),
                arg: n as i64,
            });
        }
        if fv.re == 0.0 && fv.im == 0.0 {
            return Err(Error::ZeroNonlinearity {
                name: String::from(f.name()),
                arg: n as i64,
            });
        }
        cur = cur * alpha / (fv * ((n + 1) as f64).sqrt());
        rescale_if_large(&mut cur, &mut c[..=n]);
        c[n + 1] = cur;
    }
    Ok(c)
}

/// Unnormalized negative-m coefficients: c₀ = 1,
/// c_{n+1} = α·c_n·√(n+1) / (f(n+m)·(n+m+1)). Only f(m), f(m+1), … are
/// touched, so zeros of f below m are harmless.
fn negative_series_coefficients(
    f: &NonlinearFn,
    alpha: Complex64,
    m: u32,
    dim: usize,
) -> Result<Vec<Complex64>> {
    let m = m as usize;
    let mut c = vec![Complex::new(0.0, 0.0); dim];
    c[0] = Complex::new(1.0, 0.0);
    if alpha.re == 0.0 && alpha.im == 0.0 {
        return Ok(c);
    }
    let mut cur = c[0];
    for n in 0..dim - 1 {
        let arg = (n + m) as i64;
        let fv = f.eval(arg);
        if !fv.is_finite() {
            return Err(Error::NonFinite {
                name: String::from(f.name()),
                arg,
            });
        }
        if fv.re == 0.0 && fv.im == 0.0 {
            return Err(Error::ZeroNonlinearity {
                name: String::from(f.name()),
                arg,
            });
        }
        cur = cur * alpha * ((n + 1) as f64).sqrt() / (fv * ((n + m + 1) as f64));
        rescale_if_large(&mut cur, &mut c[..=n]);
        c[n + 1] = cur;
    }
    Ok(c)
}

/// Coefficients of the a†ᵐ-added state: base coefficient c_{n−m} times the
/// ladder weight √(n!/(n−m)!).
fn added_coefficients(
    f: &NonlinearFn,
    alpha: Complex64,
    m: u32,
    dim: usize,
) -> Result<Vec<Complex64>> {
    let base = series_coefficients(f, alpha, dim)?;
    let m = m as usize;
    let mut out = vec![Complex::new(0.0, 0.0); dim];
    for n in m..dim {
        let mut w = 1.0f64;
        for j in (n - m + 1)..=n {
            w *= j as f64;
        }
        let mut cur = base[n - m] * w.sqrt();
        rescale_if_large(&mut cur, &mut out[..n]);
        out[n] = cur;
    }
    Ok(out)
}

/// Smallest dimension k ≥ min_dim whose leading k coefficients pass the
/// tail check that a builder at dimension k would run. Forward recurrences
/// make the leading coefficients independent of the dimension, so the scan
/// is exact for every builder here.
fn minimal_adequate_dim(
    coeffs: &[Complex64],
    margin: usize,
    tol: f64,
    min_dim: usize,
) -> Option<usize> {
    let mut prefix = vec![0.0f64; coeffs.len() + 1];
    for (i, c) in coeffs.iter().enumerate() {
        prefix[i + 1] = prefix[i] + c.norm_sqr();
    }
    for k in min_dim.max(margin + 1)..=coeffs.len() {
        let total = prefix[k];
        if total <= 0.0 {
            continue;
        }
        if prefix[k] - prefix[k - margin] <= tol * total {
            return Some(k);
        }
    }
    None
}

fn probe_adequate_dim<F>(cfg: &TruncationConfig, rebuild: F) -> Option<usize>
where
    F: Fn(usize) -> Result<Vec<Complex64>>,
{
    let mut dim = cfg.dim.saturating_mul(2).clamp(64, PROBE_CAP);
    loop {
        let coeffs = rebuild(dim).ok()?;
        if let Some(k) =
            minimal_adequate_dim(&coeffs, cfg.boundary_margin, cfg.tail_tol, cfg.dim + 1)
        {
            return Some(k);
        }
        if dim >= PROBE_CAP {
            return None;
        }
        dim = dim.saturating_mul(2).min(PROBE_CAP);
    }
}

/// Tail-checks, then normalizes. `rebuild` regenerates the raw coefficient
/// sequence at a larger dimension to estimate an adequate size on failure.
pub(crate) fn finish_state<F>(v: FockVector, cfg: &TruncationConfig, rebuild: F) -> Result<FockVector>
where
    F: Fn(usize) -> Result<Vec<Complex64>>,
{
    let tail = v.tail_mass(cfg.band_end());
    if tail > cfg.tail_tol {
        return Err(Error::TailMass {
            tail,
            tol: cfg.tail_tol,
            dim: cfg.dim,
            adequate_dim: probe_adequate_dim(cfg, rebuild),
        });
    }
    v.normalized()
}

/// Eigenstate of f(N)a with eigenvalue α.
pub fn build_nlcs(spec: &NlcsSpec) -> Result<FockVector> {
    spec.validate()?;
    let amps = series_coefficients(&spec.f, spec.alpha, spec.cfg.dim)?;
    finish_state(FockVector::from_amplitudes(amps)?, &spec.cfg, |d| {
        series_coefficients(&spec.f, spec.alpha, d)
    })
}

/// Normalized a†ᵐ applied to the nonlinear coherent state. m = 0 returns
/// the base state unchanged. The result has exactly zero amplitude below
/// index m; amplitude pushed past the top row by the raise is recorded in
/// the result's truncation loss.
pub fn build_panlcs_apply(spec: &NlcsSpec, m: u32) -> Result<FockVector> {
    if m == 0 {
        return build_nlcs(spec);
    }
    let raised = build_nlcs(spec)?.raised(m);
    finish_state(raised, &spec.cfg, |d| {
        added_coefficients(&spec.f, spec.alpha, m, d)
    })
}

/// The same positive-m state built as the deformed exponential
/// exp(αG†)|m⟩, where G†|n⟩ = √(n+1)/f(n−m) · |n+1⟩ on the sector above m.
pub fn build_panlcs_deformed(spec: &NlcsSpec, m: u32) -> Result<FockVector> {
    spec.validate()?;
    let a = DeformedLoweringOp::new(spec.f.clone(), m, Sign::Plus);
    let g = make_g_dagger(&a, 1, m as usize)?;
    let seed = FockVector::basis(m as usize, &spec.cfg)?;
    let raw = apply_deformed_exponential(&g, spec.alpha, &seed)?;
    finish_state(raw, &spec.cfg, |d| {
        added_coefficients(&spec.f, spec.alpha, m, d)
    })
}

fn require_negative_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidConfig("negative-m builders require m >= 1"));
    }
    Ok(())
}

/// Eigenstate of f(N+m)[1 + m/(N+1)]a by its series recurrence.
pub fn build_negative_panlcs_series(spec: &NlcsSpec, m: u32) -> Result<FockVector> {
    spec.validate()?;
    require_negative_m(m)?;
    let amps = negative_series_coefficients(&spec.f, spec.alpha, m, spec.cfg.dim)?;
    finish_state(FockVector::from_amplitudes(amps)?, &spec.cfg, |d| {
        negative_series_coefficients(&spec.f, spec.alpha, m, d)
    })
}

/// The same negative-m state as the deformed exponential exp(αG†)|0⟩,
/// where G†|n⟩ = √(n+1)·(n+1)/(f(n+m)·(n+m+1)) · |n+1⟩.
pub fn build_negative_panlcs_deformed(spec: &NlcsSpec, m: u32) -> Result<FockVector> {
    spec.validate()?;
    require_negative_m(m)?;
    let a = DeformedLoweringOp::new(spec.f.clone(), m, Sign::Minus);
    let g = make_g_dagger(&a, 1, 0)?;
    let seed = FockVector::basis(0, &spec.cfg)?;
    let raw = apply_deformed_exponential(&g, spec.alpha, &seed)?;
    finish_state(raw, &spec.cfg, |d| {
        negative_series_coefficients(&spec.f, spec.alpha, m, d)
    })
}

/// The same negative-m state via inverse ladder operators: a†⁻ᵐ a⁻ᵐ
/// applied to the auxiliary eigenstate built with the shifted deformation
/// f(N+m). The net effect is the diagonal weight n!/(n+m)! on that state.
pub fn build_negative_panlcs_inverse(spec: &NlcsSpec, m: u32) -> Result<FockVector> {
    spec.validate()?;
    require_negative_m(m)?;
    let shifted = NlcsSpec {
        f: spec.f.shifted(i64::from(m)),
        alpha: spec.alpha,
        cfg: spec.cfg,
    };
    let mut v = build_nlcs(&shifted)?;
    for _ in 0..m {
        v = v.inv_lowered();
    }
    for _ in 0..m {
        v = v.inv_raised();
    }
    finish_state(v, &spec.cfg, |d| {
        negative_series_coefficients(&spec.f, spec.alpha, m, d)
    })
}

/// Canonical route per family sign: operator application for `Sign::Plus`,
/// the series recurrence for `Sign::Minus`.
pub fn build_added_state(spec: &NlcsSpec, idx: AddedPhotonIndex) -> Result<FockVector> {
    match idx.sign {
        Sign::Plus => build_panlcs_apply(spec, idx.m),
        Sign::Minus => build_negative_panlcs_series(spec, idx.m),
    }
}

/// Sums exp(αG†)·seed term by term: t_{k+1} = α/(k+1) · G†·t_k. G† raises
/// strictly, so the series terminates once a term is pushed entirely past
/// the truncation boundary. Costs O(D) per term, O(D²) overall.
pub fn apply_deformed_exponential(
    g: &ConjugateRaisingOp,
    alpha: Complex64,
    seed: &FockVector,
) -> Result<FockVector> {
    let mut sum = seed.clone();
    let mut term = seed.clone();
    let mut k = 0usize;
    while k <= seed.dim() {
        term = g.apply(&term)?.scaled(alpha / (k + 1) as f64);
        if term.is_zero() {
            break;
        }
        sum.add_scaled(Complex::new(1.0, 0.0), &term)?;
        if term.norm_sqr() > MAG_LIMIT {
            // overall scale is irrelevant; keep the running sums bounded
            sum = sum.scaled(Complex::new(MAG_SCALE, 0.0));
            term = term.scaled(Complex::new(MAG_SCALE, 0.0));
        }
        k += 1;
    }
    Ok(sum)
}

/// Relative norm of g(N)·aᵖ|ψ⟩ − α|ψ⟩ restricted to indices
/// 0..=D−1−margin. The margin must cover the lowering power, since the top
/// p rows of aᵖ|ψ⟩ are polluted by truncation.
pub fn eigen_residual(
    state: &FockVector,
    lower_power: u32,
    g: &NonlinearFn,
    alpha: Complex64,
    margin: usize,
) -> Result<f64> {
    if margin < lower_power as usize {
        return Err(Error::InvalidConfig("margin must cover the lowering power"));
    }
    if margin >= state.dim() {
        return Err(Error::InvalidConfig("margin must be below the dimension"));
    }
    let lhs = state.lowered(lower_power).diagonal(g)?;
    let resid = lhs.minus(&state.scaled(alpha))?;
    let upto = state.dim() - 1 - margin;
    let denom = state.band_norm(upto);
    let num = resid.band_norm(upto);
    Ok(if denom == 0.0 { num } else { num / denom })
}

/// Worst-case norm of ([A, G†] − 1)|n⟩ over basis states n in
/// [sector_start, n_max].
pub fn commutator_residual(
    a: &DeformedLoweringOp,
    g: &ConjugateRaisingOp,
    sector_start: usize,
    n_max: usize,
) -> Result<f64> {
    if sector_start > n_max {
        return Err(Error::InvalidConfig(
            "sector start must not exceed the range end",
        ));
    }
    let cfg = TruncationConfig::with_dim(n_max + 2)?;
    let mut worst = 0.0f64;
    for n in sector_start..=n_max {
        let e = FockVector::basis(n, &cfg)?;
        let lhs = a.apply(&g.apply(&e)?)?;
        let rhs = g.apply(&a.apply(&e)?)?;
        let r = lhs.minus(&rhs)?.minus(&e)?;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}
