//! End-to-end checks of the library's headline guarantees, one printed
//! pass/fail line per check (visible with `--nocapture`).

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nlcs_cli::{figure1_csv, run_residual_suite, sweep_negative_m, ResidualLine, SweepConfig};
use nlcs_core::{
    build_geometric, build_nlcs, build_photon_added_geometric, hyp2f1_11, mandel_q, Complex64,
    GeometricSpec, NlcsSpec, NonlinearFn, StatsRecord, TruncationConfig,
};

struct Shared {
    lines: Vec<ResidualLine>,
    suite_elapsed: Duration,
    rows: Vec<StatsRecord>,
    sweep_elapsed: Duration,
}

fn shared() -> &'static Shared {
    static CELL: OnceLock<Shared> = OnceLock::new();
    CELL.get_or_init(|| {
        let t0 = Instant::now();
        let lines = run_residual_suite(512).expect("residual suite must run at dim 512");
        let suite_elapsed = t0.elapsed();

        let t1 = Instant::now();
        let sweep = sweep_negative_m(&SweepConfig::default()).expect("default sweep config");
        let sweep_elapsed = t1.elapsed();
        assert!(
            sweep.failures.is_empty(),
            "default sweep rows failed to build: {:?}",
            sweep.failures
        );
        Shared {
            lines,
            suite_elapsed,
            rows: sweep.rows,
            sweep_elapsed,
        }
    })
}

fn line_value(label: &str) -> f64 {
    let line = shared()
        .lines
        .iter()
        .find(|l| l.label == label)
        .unwrap_or_else(|| panic!("missing residual line {label:?}"));
    match &line.outcome {
        Ok(v) => *v,
        Err(e) => panic!("{label}: {e}"),
    }
}

fn check(ok: bool, what: &str) {
    println!("{}: {what}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{what}");
}

#[test]
fn eigen_relation_residuals_are_tight_and_fast() {
    let eigen_labels = [
        "one-photon eigen relation",
        "added-state eigen relation",
        "negative-m eigen relation",
        "geometric eigen relation",
        "added-geometric eigen relation",
        "negative-m geometric eigen relation",
        "two-photon eigen relation",
        "added two-photon eigen relation",
    ];
    let worst = eigen_labels.iter().map(|l| line_value(l)).fold(0.0, f64::max);
    let secs = shared().suite_elapsed.as_secs_f64();
    check(
        worst < 1e-10 && secs < 10.0,
        &format!("eigen-relation residuals: worst {worst:.3e} < 1e-10, suite ran in {secs:.2}s < 10s"),
    );
}

#[test]
fn ladder_commutators_hold_on_both_sectors() {
    let plus = line_value("ladder commutator, added sector");
    let minus = line_value("ladder commutator, negative sector");
    check(
        plus < 1e-12 && minus < 1e-12,
        &format!("[A, G\u{2020}] = 1 on both sectors: residuals {plus:.3e}, {minus:.3e} < 1e-12"),
    );
}

#[test]
fn construction_routes_agree() {
    let plus = line_value("route agreement, added states");
    let minus = line_value("route agreement, negative-m states");
    check(
        plus < 1e-10 && minus < 1e-10,
        &format!(
            "route overlaps exceed 1 - 1e-10: defects {plus:.3e} (two added routes), {minus:.3e} (three negative-m routes)"
        ),
    );
}

#[test]
fn hypergeometric_normalization_and_oracle() {
    let defect = line_value("hypergeometric normalization defect");
    let value = hyp2f1_11(1, 0.5).unwrap();
    let oracle = 2.0 * std::f64::consts::LN_2; // -ln(1-z)/z at z = 1/2
    let dev = (value - oracle).abs();
    check(
        defect < 1e-10 && dev < 1e-12,
        &format!(
            "closed-form norms off by at most {defect:.3e}; series at (m=1, z=0.5) within {dev:.3e} of 2 ln 2"
        ),
    );
}

#[test]
fn moment_series_match_state_vectors() {
    let dev = line_value("moment series vs state vector");
    check(
        dev < 1e-9,
        &format!("series moments vs direct expectations: worst relative deviation {dev:.3e} < 1e-9"),
    );
}

#[test]
fn photon_statistics_sweep_is_super_poissonian() {
    let rows = &shared().rows;
    let min_q = rows.iter().map(|r| r.q).fold(f64::INFINITY, f64::min);
    let edge_max_q = rows
        .iter()
        .filter(|r| r.eta > 0.985)
        .map(|r| r.q)
        .fold(0.0, f64::max);
    let secs = shared().sweep_elapsed.as_secs_f64();
    check(
        min_q > 0.0 && edge_max_q < 0.05 && secs < 30.0,
        &format!(
            "all {} rows have q > 0 (min {min_q:.3e}); q at eta=0.99 at most {edge_max_q:.3e} < 0.05; sweep ran in {secs:.2}s < 30s",
            rows.len()
        ),
    );
}

#[test]
fn quadrature_sweep_shows_squeezing_structure() {
    let rows = &shared().rows;
    let floor_ok = rows
        .iter()
        .all(|r| r.uncertainty_product >= 1.0 / 16.0 - 1e-12);
    let edge_ok = rows
        .iter()
        .filter(|r| r.eta > 0.985)
        .all(|r| (r.var_x - 0.25).abs() < 0.01 && (r.var_y - 0.25).abs() < 0.01);

    // Squeezing is deepest at m = 1 and shallows as m grows: the per-m
    // minima of var_y over η are non-decreasing in m (cross-checked
    // against the moment series in exact arithmetic).
    let mut minima = Vec::new();
    for m in [1u32, 2, 3, 5] {
        let min_vy = rows
            .iter()
            .filter(|r| r.m == m)
            .map(|r| r.var_y)
            .fold(f64::INFINITY, f64::min);
        minima.push(min_vy);
    }
    let squeezed = minima.iter().all(|&v| v < 0.25);
    let ordered = minima.windows(2).all(|w| w[0] <= w[1]);
    check(
        floor_ok && edge_ok && squeezed && ordered,
        &format!(
            "var_y dips below 0.25 for every m (minima {minima:?}, shallowing as m grows); vacuum limit reached at eta=0.99; uncertainty product never below 1/16 - 1e-12"
        ),
    );
}

#[test]
fn two_photon_ladder_identity_holds() {
    let worst = line_value("two-photon ladder identity");
    check(
        worst < 1e-10,
        &format!("a\u{b2}a\u{2020}\u{1d50}a\u{b2} matrix elements match the diagonal form: worst relative defect {worst:.3e} < 1e-10 for m = 2..8, n <= 50"),
    );
}

#[test]
fn distribution_oracles_match() {
    let trunc = TruncationConfig::with_dim(512).unwrap();

    // Photon-added geometric states carry negative-binomial statistics:
    // P(m+j) = C(m+j, j) η^{m+1} (1-η)^j.
    let mut worst_nb = 0.0f64;
    for m in [1u32, 2, 3, 5] {
        for eta in [0.3, 0.6] {
            let spec = GeometricSpec::added(eta, m, trunc).unwrap();
            let state = build_photon_added_geometric(&spec).unwrap();
            let z = 1.0 - eta;
            let mut nb = eta.powi(m as i32 + 1);
            for n in 0..state.dim() {
                let p = state.amp(n).norm_sqr();
                if (n as u32) < m {
                    assert_eq!(p, 0.0, "support must start at m");
                    continue;
                }
                let j = n as u32 - m;
                if j > 0 {
                    nb *= z * f64::from(m + j) / f64::from(j);
                }
                worst_nb = worst_nb.max((p - nb).abs());
            }
        }
    }

    let mut worst_geo = 0.0f64;
    for eta in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let spec = GeometricSpec::plain(eta, trunc).unwrap();
        let q = mandel_q(&build_geometric(&spec).unwrap()).unwrap();
        worst_geo = worst_geo.max((q - (1.0 - eta) / eta).abs());
    }

    let mut worst_coh = 0.0f64;
    for alpha in [0.3, 0.8, 2.0] {
        let spec = NlcsSpec::new(NonlinearFn::unit(), Complex64::new(alpha, 0.0), trunc);
        let q = mandel_q(&build_nlcs(&spec).unwrap()).unwrap();
        worst_coh = worst_coh.max(q.abs());
    }

    check(
        worst_nb < 1e-12 && worst_geo < 1e-10 && worst_coh < 1e-10,
        &format!(
            "negative-binomial masses match termwise to {worst_nb:.3e}; geometric q off (1-eta)/eta by {worst_geo:.3e}; coherent q within {worst_coh:.3e} of zero"
        ),
    );
}

#[test]
fn sweep_csv_is_byte_identical_across_runs() {
    let bin = env!("CARGO_BIN_EXE_nlcs");
    let dir = std::env::temp_dir();
    let a = dir.join(format!("nlcs-fig1-a-{}.csv", std::process::id()));
    let b = dir.join(format!("nlcs-fig1-b-{}.csv", std::process::id()));
    for path in [&a, &b] {
        let status = Command::new(bin)
            .args(["figure1", "--out"])
            .arg(path)
            .status()
            .expect("run the sweep binary");
        assert!(status.success(), "sweep run failed");
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    let in_process = figure1_csv(&shared().rows).into_bytes();
    let _ = std::fs::remove_file(&a);
    let _ = std::fs::remove_file(&b);
    check(
        bytes_a == bytes_b && bytes_a == in_process,
        &format!(
            "two sweep runs wrote byte-identical CSV ({} bytes), matching the in-process rows",
            bytes_a.len()
        ),
    );
}
