//! Sweep runners, residual suite, and CSV formatting for the `nlcs`
//! binary.
//!
//! Everything here is deterministic: a fixed configuration yields
//! byte-identical CSV output (fixed column order, 12 significant digits,
//! `\n` line endings), so downstream comparisons can be bitwise.

use std::fmt::Write as _;

use nlcs_core::{
    build_geometric, build_negative_m_geometric, build_negative_panlcs_deformed,
    build_negative_panlcs_inverse, build_negative_panlcs_series, build_nlcs,
    build_photon_added_geometric, build_panlcs_apply, build_panlcs_deformed,
    build_two_photon_nlcs, commutator_residual, eigen_residual,
    lowering_moment_series, make_g_dagger, mandel_q, mean_nk, moment_nk_series,
    negative_m_geometric_closed_form, operator_identity_residual, quadrature_stats,
    two_photon_added_residual, Complex64, DeformedLoweringOp, FockVector, GeometricSpec,
    NlcsSpec, NonlinearFn, Sign, StatsRecord, TruncationConfig, TwoPhotonSeed, TwoPhotonSpec,
};

/// η grid, m list and truncation for a figure sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub eta_min: f64,
    pub eta_max: f64,
    pub eta_steps: usize,
    pub m_list: Vec<u32>,
    pub dim: usize,
    pub tail_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            eta_min: 0.05,
            eta_max: 0.99,
            eta_steps: 48,
            m_list: vec![1, 2, 3, 5],
            dim: 512,
            tail_tol: 1e-12,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.eta_min > 0.0 && self.eta_min < 1.0 && self.eta_max > 0.0 && self.eta_max < 1.0)
        {
            return Err("eta bounds must lie in the open interval (0,1)".into());
        }
        if self.eta_min >= self.eta_max {
            return Err("eta-min must be below eta-max".into());
        }
        if self.eta_steps < 2 {
            return Err("eta-steps must be at least 2".into());
        }
        if self.m_list.is_empty() {
            return Err("the m list must not be empty".into());
        }
        if self.m_list.iter().any(|&m| m == 0) {
            return Err("every m must be at least 1".into());
        }
        self.truncation().map(|_| ()).map_err(|e| e.to_string())
    }

    pub fn truncation(&self) -> nlcs_core::Result<TruncationConfig> {
        TruncationConfig::new(
            self.dim,
            self.tail_tol,
            TruncationConfig::DEFAULT_BOUNDARY_MARGIN.min(self.dim.saturating_sub(1)),
        )
    }

    /// Evenly spaced η values from eta_min to eta_max inclusive.
    pub fn eta_grid(&self) -> Vec<f64> {
        let step = (self.eta_max - self.eta_min) / (self.eta_steps - 1) as f64;
        (0..self.eta_steps)
            .map(|i| self.eta_min + step * i as f64)
            .collect()
    }
}

/// Rows in grid order (m blocks, η ascending within each) plus
/// descriptions of any grid points that failed to build.
pub struct SweepOutcome {
    pub rows: Vec<StatsRecord>,
    pub failures: Vec<String>,
}

/// Builds the negative-m geometric state at every grid point and measures
/// it. Build failures (typically tail mass at too small a dimension) are
/// collected per row rather than aborting the sweep.
pub fn sweep_negative_m(cfg: &SweepConfig) -> Result<SweepOutcome, String> {
    cfg.validate()?;
    let trunc = cfg.truncation().map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &m in &cfg.m_list {
        for eta in cfg.eta_grid() {
            let outcome = GeometricSpec::negative(eta, m, trunc)
                .and_then(|spec| build_negative_m_geometric(&spec))
                .and_then(|state| {
                    StatsRecord::measure(eta, m, Sign::Minus, &state, trunc.band_end())
                });
            match outcome {
                Ok(rec) => rows.push(rec),
                Err(e) => failures.push(format!("row eta={eta:.4} m={m}: {e}")),
            }
        }
    }
    Ok(SweepOutcome { rows, failures })
}

/// 12 significant digits, scientific, deterministic.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn figure1_csv(rows: &[StatsRecord]) -> String {
    let mut out = String::from("eta,m,mean_n,q,tail\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(r.eta),
            r.m,
            fmt_real(r.mean_n),
            fmt_real(r.q),
            fmt_real(r.tail)
        );
    }
    out
}

pub fn figure2_csv(rows: &[StatsRecord]) -> String {
    let mut out = String::from("eta,m,var_x,var_y,uncertainty_product,tail\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_real(r.eta),
            r.m,
            fmt_real(r.var_x),
            fmt_real(r.var_y),
            fmt_real(r.uncertainty_product),
            fmt_real(r.tail)
        );
    }
    out
}

/// Super-Poissonian and tail requirements for the photon-statistics sweep.
pub fn figure1_violations(rows: &[StatsRecord], tail_tol: f64) -> Vec<String> {
    let mut v = Vec::new();
    for r in rows {
        if !(r.q > 0.0) {
            v.push(format!("row eta={:.4} m={}: q={} is not positive", r.eta, r.m, r.q));
        }
        if !(r.tail < tail_tol) {
            v.push(format!(
                "row eta={:.4} m={}: tail {} reached tolerance {tail_tol}",
                r.eta, r.m, r.tail
            ));
        }
    }
    v
}

/// Uncertainty-bound and squeezing requirements for the quadrature sweep.
/// The 0.25 squeezing threshold marks a variance below the vacuum value;
/// requiring it for some η per m is this tool's chosen pass criterion.
pub fn figure2_violations(rows: &[StatsRecord]) -> Vec<String> {
    let mut v = Vec::new();
    for r in rows {
        if !(r.uncertainty_product >= 1.0 / 16.0 - 1e-12) {
            v.push(format!(
                "row eta={:.4} m={}: uncertainty product {} below the Heisenberg floor",
                r.eta, r.m, r.uncertainty_product
            ));
        }
    }
    let mut ms: Vec<u32> = rows.iter().map(|r| r.m).collect();
    ms.dedup();
    for m in ms {
        let min_vy = rows
            .iter()
            .filter(|r| r.m == m)
            .map(|r| r.var_y)
            .fold(f64::INFINITY, f64::min);
        if !(min_vy < 0.25) {
            v.push(format!(
                "m={m}: min var_y {min_vy} never drops below 0.25 [chosen squeezing threshold]"
            ));
        }
    }
    v
}

/// One labeled check of the residual suite: the worst value over its grid,
/// or the first build failure.
pub struct ResidualLine {
    pub label: &'static str,
    pub checks: usize,
    pub outcome: Result<f64, String>,
}

struct Agg {
    label: &'static str,
    checks: usize,
    max: f64,
    err: Option<String>,
}

impl Agg {
    fn new(label: &'static str) -> Self {
        Agg {
            label,
            checks: 0,
            max: 0.0,
            err: None,
        }
    }

    fn push(&mut self, point: &str, r: nlcs_core::Result<f64>) {
        self.checks += 1;
        match r {
            Ok(v) => self.max = self.max.max(v),
            Err(e) => {
                if self.err.is_none() {
                    self.err = Some(format!("{point}: {e}"));
                }
            }
        }
    }

    fn finish(self) -> ResidualLine {
        ResidualLine {
            label: self.label,
            checks: self.checks,
            outcome: match self.err {
                Some(e) => Err(e),
                None => Ok(self.max),
            },
        }
    }
}

const ETA_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const M_GRID: [u32; 4] = [1, 2, 3, 5];
const ALPHA_GRID: [f64; 2] = [0.3, 0.8];

fn synthetic_families() -> Vec<(NonlinearFn, Vec<Complex64>)> {
    let alphas: Vec<Complex64> = ALPHA_GRID.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    vec![
        (NonlinearFn::unit(), alphas.clone()),
        (NonlinearFn::n_plus_one(), alphas),
    ]
}

fn one_photon_specs(trunc: TruncationConfig) -> Vec<NlcsSpec> {
    let mut specs = Vec::new();
    for (f, alphas) in synthetic_families() {
        for alpha in alphas {
            specs.push(NlcsSpec::new(f.clone(), alpha, trunc));
        }
    }
    for eta in ETA_GRID {
        specs.push(NlcsSpec::new(
            NonlinearFn::inv_sqrt_n_plus_one(),
            Complex64::new((1.0 - eta).sqrt(), 0.0),
            trunc,
        ));
    }
    specs
}

fn sqrt_shift_over_n_plus_one(shift: i64) -> NonlinearFn {
    NonlinearFn::new("sqrt(n+shift+1)/(n+1)", move |n| {
        Complex64::new((n + shift + 1) as f64, 0.0).sqrt() / ((n + 1) as f64)
    })
}

fn two_photon_specs(trunc: TruncationConfig) -> Vec<TwoPhotonSpec> {
    let mut specs = Vec::new();
    for f in [NonlinearFn::unit(), NonlinearFn::inv_n_plus_one()] {
        for &alpha in &ALPHA_GRID {
            for seed in [TwoPhotonSeed::Even, TwoPhotonSeed::Odd] {
                specs.push(TwoPhotonSpec::new(
                    f.clone(),
                    Complex64::new(alpha, 0.0),
                    seed,
                    trunc,
                ));
            }
        }
    }
    specs
}

/// Runs every operator-identity, eigen-relation, and cross-route check at
/// the given dimension and reports the worst value per check.
pub fn run_residual_suite(dim: usize) -> Result<Vec<ResidualLine>, String> {
    let trunc = TruncationConfig::with_dim(dim).map_err(|e| e.to_string())?;
    let margin_base = trunc.boundary_margin.max(1);
    let mut lines = Vec::new();

    let mut base = Agg::new("one-photon eigen relation");
    for spec in one_photon_specs(trunc) {
        let point = format!("f={} alpha={}", spec.f.name(), spec.alpha);
        let r = build_nlcs(&spec)
            .and_then(|s| eigen_residual(&s, 1, &spec.f, spec.alpha, margin_base));
        base.push(&point, r);
    }
    lines.push(base.finish());

    let mut added = Agg::new("added-state eigen relation");
    let mut negative = Agg::new("negative-m eigen relation");
    for spec in one_photon_specs(trunc) {
        for m in M_GRID {
            let margin = trunc.boundary_margin + m as usize + 1;
            let point = format!("f={} alpha={} m={m}", spec.f.name(), spec.alpha);
            let r = build_panlcs_apply(&spec, m)
                .and_then(|s| eigen_residual(&s, 1, &spec.f.photon_added(m), spec.alpha, margin));
            added.push(&point, r);
            let r = build_negative_panlcs_series(&spec, m).and_then(|s| {
                eigen_residual(&s, 1, &spec.f.photon_added_negative(m), spec.alpha, margin)
            });
            negative.push(&point, r);
        }
    }
    lines.push(added.finish());
    lines.push(negative.finish());

    let mut geo = Agg::new("geometric eigen relation");
    for eta in ETA_GRID {
        let alpha = Complex64::new((1.0 - eta).sqrt(), 0.0);
        let point = format!("eta={eta}");
        let r = GeometricSpec::plain(eta, trunc)
            .and_then(|spec| build_geometric(&spec))
            .and_then(|s| {
                eigen_residual(&s, 1, &NonlinearFn::inv_sqrt_n_plus_one(), alpha, margin_base)
            });
        geo.push(&point, r);
    }
    lines.push(geo.finish());

    let mut geo_added = Agg::new("added-geometric eigen relation");
    let mut geo_negative = Agg::new("negative-m geometric eigen relation");
    for eta in ETA_GRID {
        for m in M_GRID {
            let alpha = Complex64::new((1.0 - eta).sqrt(), 0.0);
            let margin = trunc.boundary_margin + m as usize + 1;
            let point = format!("eta={eta} m={m}");
            let r = GeometricSpec::added(eta, m, trunc)
                .and_then(|spec| build_photon_added_geometric(&spec))
                .and_then(|s| {
                    eigen_residual(&s, 1, &sqrt_shift_over_n_plus_one(-i64::from(m)), alpha, margin)
                });
            geo_added.push(&point, r);
            let r = GeometricSpec::negative(eta, m, trunc)
                .and_then(|spec| build_negative_m_geometric(&spec))
                .and_then(|s| {
                    eigen_residual(&s, 1, &sqrt_shift_over_n_plus_one(i64::from(m)), alpha, margin)
                });
            geo_negative.push(&point, r);
        }
    }
    lines.push(geo_added.finish());
    lines.push(geo_negative.finish());

    let mut comm_plus = Agg::new("ladder commutator, added sector");
    let mut comm_minus = Agg::new("ladder commutator, negative sector");
    let comm_fs = [
        NonlinearFn::unit(),
        NonlinearFn::n_plus_one(),
        NonlinearFn::inv_sqrt_n_plus_one(),
    ];
    for f in &comm_fs {
        for m in M_GRID {
            let point = format!("f={} m={m}", f.name());
            let a = DeformedLoweringOp::new(f.clone(), m, Sign::Plus);
            let r = make_g_dagger(&a, 1, m as usize)
                .and_then(|g| commutator_residual(&a, &g, m as usize, 100));
            comm_plus.push(&point, r);
            let a = DeformedLoweringOp::new(f.clone(), m, Sign::Minus);
            let r = make_g_dagger(&a, 1, 0).and_then(|g| commutator_residual(&a, &g, 0, 100));
            comm_minus.push(&point, r);
        }
    }
    lines.push(comm_plus.finish());
    lines.push(comm_minus.finish());

    let mut two_base = Agg::new("two-photon eigen relation");
    for spec in two_photon_specs(trunc) {
        let point = format!("f={} alpha={} seed={:?}", spec.f.name(), spec.alpha, spec.seed);
        let r = build_two_photon_nlcs(&spec).and_then(|s| {
            eigen_residual(&s, 2, &spec.f, spec.alpha, trunc.boundary_margin + 2)
        });
        two_base.push(&point, r);
    }
    lines.push(two_base.finish());

    let mut two_identity = Agg::new("two-photon ladder identity");
    for m in 2..=8u32 {
        two_identity.push(&format!("m={m}"), operator_identity_residual(m, 50));
    }
    lines.push(two_identity.finish());

    let mut two_added = Agg::new("added two-photon eigen relation");
    for spec in two_photon_specs(trunc) {
        for m in [1u32, 2, 3] {
            let point = format!(
                "f={} alpha={} seed={:?} m={m}",
                spec.f.name(),
                spec.alpha,
                spec.seed
            );
            two_added.push(&point, two_photon_added_residual(&spec, m));
        }
    }
    lines.push(two_added.finish());

    let mut routes_plus = Agg::new("route agreement, added states");
    let mut routes_minus = Agg::new("route agreement, negative-m states");
    for spec in one_photon_specs(trunc) {
        for m in M_GRID {
            let point = format!("f={} alpha={} m={m}", spec.f.name(), spec.alpha);
            let two = build_panlcs_apply(&spec, m).and_then(|a| {
                let d = build_panlcs_deformed(&spec, m)?;
                Ok(1.0 - a.inner(&d)?.norm())
            });
            routes_plus.push(&point, two);
            let three = build_negative_panlcs_series(&spec, m).and_then(|s| {
                let d = build_negative_panlcs_deformed(&spec, m)?;
                let i = build_negative_panlcs_inverse(&spec, m)?;
                let worst = (1.0 - s.inner(&d)?.norm())
                    .max(1.0 - s.inner(&i)?.norm())
                    .max(1.0 - d.inner(&i)?.norm());
                Ok(worst)
            });
            routes_minus.push(&point, three);
        }
    }
    lines.push(routes_plus.finish());
    lines.push(routes_minus.finish());

    let mut norm_defect = Agg::new("hypergeometric normalization defect");
    for eta in ETA_GRID {
        for m in M_GRID {
            let point = format!("eta={eta} m={m}");
            let r = GeometricSpec::negative(eta, m, trunc)
                .and_then(|spec| negative_m_geometric_closed_form(&spec))
                .map(|raw| (raw.norm() - 1.0).abs());
            norm_defect.push(&point, r);
        }
    }
    lines.push(norm_defect.finish());

    let mut moments = Agg::new("moment series vs state vector");
    for eta in ETA_GRID {
        for m in M_GRID {
            let point = format!("eta={eta} m={m}");
            let r = GeometricSpec::negative(eta, m, trunc).and_then(|spec| {
                let s = build_negative_m_geometric(&spec)?;
                let mut worst = 0.0f64;
                for k in [1u32, 2] {
                    let series = moment_nk_series(&spec, k)?;
                    let direct = mean_nk(&s, k);
                    worst = worst.max((series - direct).abs() / direct.abs().max(1e-12));
                    let series = lowering_moment_series(&spec, k)?;
                    let direct = s.inner(&s.lowered(k))?.re;
                    worst = worst.max((series - direct).abs() / direct.abs().max(1e-12));
                }
                Ok(worst)
            });
            moments.push(&point, r);
        }
    }
    lines.push(moments.finish());

    Ok(lines)
}

/// Renders the suite as one line per check plus a summary; the flag is
/// true when every check produced a value below tol.
pub fn residual_report(lines: &[ResidualLine], tol: f64) -> (String, bool) {
    let mut out = String::new();
    let mut pass = true;
    for line in lines {
        match &line.outcome {
            Ok(v) => {
                let ok = *v < tol;
                pass &= ok;
                let _ = writeln!(
                    out,
                    "{}: max {} over {} checks [{}]",
                    line.label,
                    fmt_real(*v),
                    line.checks,
                    if ok { "pass" } else { "FAIL" }
                );
            }
            Err(e) => {
                pass = false;
                let _ = writeln!(out, "{}: FAIL — {e}", line.label);
            }
        }
    }
    let _ = writeln!(
        out,
        "suite: {} ({} checks, tolerance {})",
        if pass { "pass" } else { "FAIL" },
        lines.iter().map(|l| l.checks).sum::<usize>(),
        fmt_real(tol)
    );
    (out, pass)
}

/// Amplitude dump: index, real part, imaginary part, probability.
pub fn state_csv(s: &FockVector) -> String {
    let mut out = String::from("n,re,im,p\n");
    for (n, a) in s.amplitudes().iter().enumerate() {
        let _ = writeln!(
            out,
            "{n},{},{},{}",
            fmt_real(a.re),
            fmt_real(a.im),
            fmt_real(a.norm_sqr())
        );
    }
    out
}

/// Convenience used by the state dumps and tests.
pub fn coherent_q_defect(alpha: f64, dim: usize) -> nlcs_core::Result<f64> {
    let spec = NlcsSpec::new(
        NonlinearFn::unit(),
        Complex64::new(alpha, 0.0),
        TruncationConfig::with_dim(dim)?,
    );
    let s = build_nlcs(&spec)?;
    let q = mandel_q(&s)?;
    let _ = quadrature_stats(&s)?;
    Ok(q.abs())
}
