use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nlcs_cli::{
    figure1_csv, figure1_violations, figure2_csv, figure2_violations, residual_report,
    run_residual_suite, state_csv, sweep_negative_m, SweepConfig,
};
use nlcs_core::{
    build_negative_panlcs_series, build_nlcs, build_photon_added_two_photon, build_panlcs_apply,
    build_two_photon_nlcs, build_geometric, build_negative_m_geometric,
    build_photon_added_geometric, Complex64, FockVector, GeometricSpec, NlcsSpec, NonlinearFn,
    TruncationConfig, TwoPhotonSeed, TwoPhotonSpec,
};

/// Sweeps, residual checks and state dumps for nonlinear coherent states.
#[derive(Parser)]
#[command(name = "nlcs", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Photon-statistics sweep of the negative-m geometric family
    /// (CSV columns: eta,m,mean_n,q,tail)
    Figure1(SweepArgs),
    /// Quadrature-variance sweep of the same family
    /// (CSV columns: eta,m,var_x,var_y,uncertainty_product,tail)
    Figure2(SweepArgs),
    /// Run the operator-identity and eigen-relation residual suite
    Residuals(ResidualArgs),
    /// Print one state's amplitudes (CSV columns: n,re,im,p)
    State(StateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest η of the sweep, in the open interval (0,1)
    #[arg(long, default_value_t = 0.05)]
    eta_min: f64,
    /// Largest η of the sweep, in the open interval (0,1)
    #[arg(long, default_value_t = 0.99)]
    eta_max: f64,
    /// Number of evenly spaced η values, both endpoints included
    #[arg(long, default_value_t = 48)]
    eta_steps: usize,
    /// Added-photon numbers, comma separated, each at least 1
    #[arg(long = "m", value_delimiter = ',', default_values_t = vec![1u32, 2, 3, 5])]
    m_list: Vec<u32>,
    /// Fock-space dimension
    #[arg(long, env = "NLCS_DEFAULT_DIM", default_value_t = 512)]
    dim: usize,
    /// Largest probability mass tolerated near the truncation boundary
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Write the CSV to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ResidualArgs {
    /// Fock-space dimension for the state-based checks
    #[arg(long, env = "NLCS_DEFAULT_DIM", default_value_t = 512)]
    dim: usize,
    /// Pass threshold applied to every line of the report
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Eigenstate of f(N)a
    Nlcs,
    /// Photon-added state a†ᵐ|α,f⟩, normalized
    Panlcs,
    /// The negative-m member of the added family
    NegPanlcs,
    /// f(n) = 1/√(n+1): geometric photon statistics
    Geometric,
    /// Photon-added geometric state
    Pags,
    /// Negative-m geometric state
    NegPags,
    /// Eigenstate of F(N)a²
    TwoPhoton,
    /// Photon-added two-photon state
    PaTwoPhoton,
}

#[derive(Clone, Copy, ValueEnum)]
enum FName {
    Unit,
    NPlusOne,
    InvNPlusOne,
    InvSqrtNPlusOne,
}

impl FName {
    fn build(self) -> NonlinearFn {
        match self {
            FName::Unit => NonlinearFn::unit(),
            FName::NPlusOne => NonlinearFn::n_plus_one(),
            FName::InvNPlusOne => NonlinearFn::inv_n_plus_one(),
            FName::InvSqrtNPlusOne => NonlinearFn::inv_sqrt_n_plus_one(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Seed {
    Even,
    Odd,
    Mixed,
}

#[derive(Args)]
struct StateArgs {
    /// Which family to build
    #[arg(value_enum)]
    family: Family,
    /// Deformation used by the non-geometric families
    #[arg(long, value_enum, default_value_t = FName::Unit)]
    f: FName,
    /// Eigenvalue, written "re" or "re,im"
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    alpha: Complex64,
    /// Geometric-family parameter, in the open interval (0,1)
    #[arg(long)]
    eta: Option<f64>,
    /// Added-photon number
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Seed parity of the two-photon families
    #[arg(long, value_enum, default_value_t = Seed::Even)]
    seed: Seed,
    /// c₁/c₀ for the mixed seed, written "re" or "re,im"
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    seed_ratio: Complex64,
    /// Fock-space dimension
    #[arg(long, env = "NLCS_DEFAULT_DIM", default_value_t = 512)]
    dim: usize,
    /// Largest probability mass tolerated near the truncation boundary
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    /// Write the CSV to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = match s.split_once(',') {
        Some((r, i)) => (r.trim(), i.trim()),
        None => (s.trim(), "0"),
    };
    let re: f64 = re.parse().map_err(|_| format!("invalid real part {re:?}"))?;
    let im: f64 = im.parse().map_err(|_| format!("invalid imaginary part {im:?}"))?;
    Ok(Complex64::new(re, im))
}

/// Usage problems exit 2; checks that ran and failed exit 1.
enum Failure {
    Usage(String),
    Run(String),
}

fn classify(e: nlcs_core::Error) -> Failure {
    match e {
        nlcs_core::Error::InvalidConfig(_) | nlcs_core::Error::Unsupported(_) => {
            Failure::Usage(e.to_string())
        }
        _ => Failure::Run(e.to_string()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Figure1(a) => run_sweep(a, true),
        Cmd::Figure2(a) => run_sweep(a, false),
        Cmd::Residuals(a) => {
            let lines = run_residual_suite(a.dim).map_err(Failure::Usage)?;
            let (report, pass) = residual_report(&lines, a.tol);
            print!("{report}");
            Ok(pass)
        }
        Cmd::State(a) => {
            let state = build_state(&a)?;
            emit(&a.out, state_csv(&state))?;
            Ok(true)
        }
    }
}

fn run_sweep(a: SweepArgs, photon_stats: bool) -> Result<bool, Failure> {
    let name = if photon_stats { "figure1" } else { "figure2" };
    let cfg = SweepConfig {
        eta_min: a.eta_min,
        eta_max: a.eta_max,
        eta_steps: a.eta_steps,
        m_list: a.m_list,
        dim: a.dim,
        tail_tol: a.tail_tol,
    };
    let out = sweep_negative_m(&cfg).map_err(Failure::Usage)?;
    let csv = if photon_stats {
        figure1_csv(&out.rows)
    } else {
        figure2_csv(&out.rows)
    };
    emit(&a.out, csv)?;

    let mut problems = out.failures;
    if photon_stats {
        problems.extend(figure1_violations(&out.rows, cfg.tail_tol));
    } else {
        problems.extend(figure2_violations(&out.rows));
    }
    if problems.is_empty() {
        let checks = if photon_stats {
            format!("q > 0 and tail < {:e} on every row", cfg.tail_tol)
        } else {
            "uncertainty floor held and var_y < 0.25 reached for every m".into()
        };
        eprintln!(
            "{name}: {} rows, {checks} [chosen pass thresholds]",
            out.rows.len()
        );
        Ok(true)
    } else {
        for p in &problems {
            eprintln!("{name}: {p}");
        }
        eprintln!("{name}: {} problem(s)", problems.len());
        Ok(false)
    }
}

fn build_state(a: &StateArgs) -> Result<FockVector, Failure> {
    let margin = TruncationConfig::DEFAULT_BOUNDARY_MARGIN.min(a.dim.saturating_sub(1));
    let trunc = TruncationConfig::new(a.dim, a.tail_tol, margin).map_err(classify)?;
    let eta = |what: &str| {
        a.eta
            .ok_or_else(|| Failure::Usage(format!("{what} needs --eta")))
    };
    let seed = match a.seed {
        Seed::Even => TwoPhotonSeed::Even,
        Seed::Odd => TwoPhotonSeed::Odd,
        Seed::Mixed => TwoPhotonSeed::Mixed(a.seed_ratio),
    };
    match a.family {
        Family::Nlcs => {
            build_nlcs(&NlcsSpec::new(a.f.build(), a.alpha, trunc)).map_err(classify)
        }
        Family::Panlcs => build_panlcs_apply(&NlcsSpec::new(a.f.build(), a.alpha, trunc), a.m)
            .map_err(classify),
        Family::NegPanlcs => {
            build_negative_panlcs_series(&NlcsSpec::new(a.f.build(), a.alpha, trunc), a.m)
                .map_err(classify)
        }
        Family::Geometric => GeometricSpec::plain(eta("the geometric family")?, trunc)
            .and_then(|s| build_geometric(&s))
            .map_err(classify),
        Family::Pags => GeometricSpec::added(eta("the added geometric family")?, a.m, trunc)
            .and_then(|s| build_photon_added_geometric(&s))
            .map_err(classify),
        Family::NegPags => {
            GeometricSpec::negative(eta("the negative-m geometric family")?, a.m, trunc)
                .and_then(|s| build_negative_m_geometric(&s))
                .map_err(classify)
        }
        Family::TwoPhoton => {
            build_two_photon_nlcs(&TwoPhotonSpec::new(a.f.build(), a.alpha, seed, trunc))
                .map_err(classify)
        }
        Family::PaTwoPhoton => build_photon_added_two_photon(
            &TwoPhotonSpec::new(a.f.build(), a.alpha, seed, trunc),
            a.m,
        )
        .map_err(classify),
    }
}

fn emit(path: &Option<PathBuf>, text: String) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Run(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
