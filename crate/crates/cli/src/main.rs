//! `skewlib` command-line front end.
//!
//! Exit codes: 0 success, 1 a relation / certification / state validation
//! failed, 2 bad configuration (flags, malformed JSON, unsupported dimension).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skewlib::bases::{default_partition, observable_basis, verify_basis};
use skewlib::interchange::{load_density, load_observable, IndexedMatrixJson, MatrixJson};
use skewlib::measurements::{
    build_general_sic, build_mubs_prime, build_mums, max_feasible_t_gsic, max_feasible_t_mum,
    mub_to_projector_mum, sic_qubit, verify_general_sic, verify_mum, GeneralSicPovm, MumSet,
};
use skewlib::relations::{coherence_gsic, coherence_mum, Verifier};
use skewlib::report::ValidationReport;
use skewlib::skew::{
    complementarity_bound, gwyd_skew_forms, q_alpha_uncertainty, q_gwyd_uncertainty,
    q_uncertainty, remark_quantity, UncertaintyValue,
};
use skewlib::states::NamedState;
use skewlib::suite::{
    default_p_grid, sweep_csv, verify_all, werner_sweep, SuiteConfig, SweepFamily, WERNER_PAIRS,
};
use skewlib::{DensityMatrix, Error, ExponentPair, Observable};

#[derive(Parser, Debug)]
#[command(name = "skewlib", version, about = "Generalized skew information, MUMs, general SIC-POVMs and their uncertainty relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the randomized suite over all twelve relation families.
    VerifyAll(VerifyArgs),
    /// Werner-state complementarity curves as CSV (or JSON).
    SweepWerner(SweepArgs),
    /// Build, certify and dump a measurement family.
    Build(BuildArgs),
    /// Evaluate one quantity on a state.
    Eval(EvalArgs),
    /// Dump the orthonormal observable basis of dimension d.
    DumpBasis(DumpBasisArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Restrict every family to this dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples per dimension for the inequality families.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Random states per dimension for the equality families.
    #[arg(long, default_value_t = 20)]
    states: usize,
    /// Override both the equality and the inequality tolerance.
    #[arg(long, visible_alias = "tolerance")]
    tol: Option<f64>,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Mub,
    Sic,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "mub")]
    family: FamilyArg,
    /// Single exponent pair instead of the two default curves (needs --beta).
    #[arg(long, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuildKind {
    Mum,
    Mub,
    Sic,
    Gsic,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(value_enum)]
    kind: BuildKind,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Construction strength; defaults to the largest feasible value.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Quantity {
    Q,
    QAlpha,
    QGwyd,
    GwydSkew,
    Remark,
    Bound,
    CoherenceMum,
    CoherenceGsic,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(value_enum)]
    quantity: Quantity,
    /// Named state: maximally-mixed:D, pure-computational:D, two-level:λ, werner:p.
    #[arg(long, conflicts_with = "state_file")]
    state: Option<String>,
    /// State in the matrix interchange format.
    #[arg(long)]
    state_file: Option<PathBuf>,
    /// Observable for gwyd-skew: pauli-x, pauli-y, pauli-z or a JSON file path.
    #[arg(long, default_value = "pauli-x")]
    observable: String,
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Construction strength for coherence quantities (default: half the maximum).
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args, Debug)]
struct DumpBasisArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Relation(String),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHermitian { .. }
            | Error::InvalidTrace { .. }
            | Error::NotPositive { .. }
            | Error::Consistency { .. }
            | Error::Certification(_) => Failure::Relation(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<bool, Failure>;

fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

fn write_output(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| config_error(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| config_error(format!("cannot write output: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn cmd_verify_all(args: &VerifyArgs) -> CmdResult {
    let mut config = SuiteConfig {
        seed: args.seed,
        samples: args.samples,
        states: args.states,
        dims: args.dim.map(|d| vec![d]),
        ..Default::default()
    };
    config.remark_samples = config.remark_samples.min(args.samples.max(1));
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(config_error(format!("--tol {tol} must be finite and nonnegative")));
        }
        config.verifier = Verifier::uniform(tol);
    }
    let report = verify_all(&config)?;
    println!("seed {}", report.seed);
    for f in &report.families {
        let extreme = match (f.min_slack, f.max_residual) {
            (Some(s), _) => format!("min slack {s:.3e}"),
            (_, Some(r)) => format!("max residual {r:.3e}"),
            _ => "no cases".to_string(),
        };
        println!(
            "{:<16} {:<4} {:>5}/{:<5} dims {:?}  {}",
            f.relation_id.name(),
            if f.holds() { "PASS" } else { "FAIL" },
            f.passed,
            f.cases,
            f.dims,
            extreme
        );
        for n in &f.notes {
            println!("    note: {n}");
        }
    }
    for c in report.certifications.iter().filter(|c| !c.holds) {
        println!("certification FAIL {} d={}: {}", c.family, c.dim, c.detail);
    }
    for r in report.failures().take(10) {
        println!(
            "  failed {} d={} (α, β) = ({}, {}) state {}: lhs {} rhs {} residual {:.3e} tol {:.1e}{}",
            r.relation_id.name(),
            r.dim,
            r.params.alpha,
            r.params.beta,
            r.params.state,
            r.lhs,
            r.rhs,
            r.residual_or_slack,
            r.tolerance,
            r.error.as_deref().map(|e| format!(" error: {e}")).unwrap_or_default()
        );
    }
    let failed = report.failures().count();
    if failed > 10 {
        println!("  ... {} more failures", failed - 10);
    }
    if let Some(path) = &args.out {
        write_output(Some(path), &to_json(&report))?;
    }
    Ok(report.holds())
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let family = match args.family {
        FamilyArg::Mub => SweepFamily::Mub,
        FamilyArg::Sic => SweepFamily::Sic,
    };
    let pairs = match (args.alpha, args.beta) {
        (Some(alpha), Some(beta)) => vec![ExponentPair::new(alpha, beta)],
        _ => WERNER_PAIRS.to_vec(),
    };
    let rows = werner_sweep(&default_p_grid(), &pairs, family)?;
    let text = match args.format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => to_json(&rows),
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(rows.iter().all(|r| r.slack >= -Verifier::default().inequality_tol))
}

#[derive(Serialize)]
struct MumDump {
    family: &'static str,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    kappa: f64,
    povms: Vec<Vec<MatrixJson>>,
    certification: ValidationReport,
}

#[derive(Serialize)]
struct SicDump {
    family: &'static str,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    a: f64,
    elements: Vec<IndexedMatrixJson>,
    certification: ValidationReport,
}

fn mum_dump(family: &'static str, m: &MumSet) -> (String, bool) {
    let certification = verify_mum(m);
    let holds = certification.holds;
    let dump = MumDump {
        family,
        dim: m.dim(),
        t: m.t(),
        kappa: m.kappa(),
        povms: m
            .povms()
            .iter()
            .map(|p| p.iter().map(|e| MatrixJson::from_matrix(e.matrix())).collect())
            .collect(),
        certification,
    };
    (to_json(&dump), holds)
}

fn sic_dump(family: &'static str, g: &GeneralSicPovm) -> (String, bool) {
    let certification = verify_general_sic(g);
    let holds = certification.holds;
    let dump = SicDump {
        family,
        dim: g.dim(),
        t: g.t(),
        a: g.a(),
        elements: g
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| IndexedMatrixJson {
                index: i + 1,
                matrix: MatrixJson::from_matrix(e.matrix()),
            })
            .collect(),
        certification,
    };
    (to_json(&dump), holds)
}

fn cmd_build(args: &BuildArgs) -> CmdResult {
    let d = args.dim;
    let (text, holds) = match args.kind {
        BuildKind::Mum => {
            let partition = default_partition(d)?;
            let t = match args.t {
                Some(t) => t,
                None => max_feasible_t_mum(d, &partition)?,
            };
            mum_dump("mum", &build_mums(d, t, &partition)?)
        }
        BuildKind::Mub => mum_dump("mub", &mub_to_projector_mum(&build_mubs_prime(d)?)),
        BuildKind::Sic => {
            if d != 2 {
                return Err(Error::UnsupportedDimension {
                    dim: d,
                    reason: "the rank-one SIC-POVM is built for d = 2 only; use gsic",
                }
                .into());
            }
            sic_dump("sic", &sic_qubit())
        }
        BuildKind::Gsic => {
            let t = match args.t {
                Some(t) => t,
                None => max_feasible_t_gsic(d)?,
            };
            sic_dump("gsic", &build_general_sic(d, t)?)
        }
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(holds)
}

fn parse_named_state(spec: &str) -> std::result::Result<NamedState, Failure> {
    let (kind, value) = spec
        .split_once(':')
        .ok_or_else(|| config_error(format!("state {spec:?} must look like kind:value")))?;
    let bad = |e: String| config_error(format!("state {spec:?}: {e}"));
    let dim = || value.parse::<usize>().map_err(|e| bad(e.to_string()));
    let real = || value.parse::<f64>().map_err(|e| bad(e.to_string()));
    Ok(match kind {
        "maximally-mixed" => NamedState::MaximallyMixed { dim: dim()? },
        "pure-computational" => NamedState::PureComputational { dim: dim()? },
        "two-level" => NamedState::TwoLevel { lambda: real()? },
        "werner" => NamedState::Werner { p: real()? },
        other => return Err(bad(format!("unknown state kind {other:?}"))),
    })
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))
}

fn load_state(args: &EvalArgs) -> std::result::Result<DensityMatrix, Failure> {
    match (&args.state, &args.state_file) {
        (Some(spec), None) => Ok(parse_named_state(spec)?.build()?),
        (None, Some(path)) => Ok(load_density(&read_file(path)?)?),
        _ => Err(config_error("give exactly one of --state or --state-file")),
    }
}

fn load_observable_arg(spec: &str) -> std::result::Result<Observable, Failure> {
    Ok(match spec {
        "pauli-x" => Observable::pauli_x(),
        "pauli-y" => Observable::pauli_y(),
        "pauli-z" => Observable::pauli_z(),
        path => load_observable(&read_file(Path::new(path))?)?,
    })
}

fn print_uncertainty(name: &str, v: &UncertaintyValue) {
    println!("{name} = {}", v.value);
    println!("  spectral     {}", v.value);
    println!("  operator-sum {}", v.operator_sum);
    println!("  residual     {:.3e}", v.residual);
}

fn cmd_eval(args: &EvalArgs) -> CmdResult {
    let rho = load_state(args)?;
    let d = rho.dim();
    let ab = ExponentPair::new(args.alpha, args.beta);
    match args.quantity {
        Quantity::Q => print_uncertainty("Q", &q_uncertainty(&rho)?),
        Quantity::QAlpha => print_uncertainty("Q_alpha", &q_alpha_uncertainty(&rho, args.alpha)?),
        Quantity::QGwyd => print_uncertainty("Q^{alpha,beta}", &q_gwyd_uncertainty(&rho, ab)?),
        Quantity::GwydSkew => {
            let a = load_observable_arg(&args.observable)?;
            let forms = gwyd_skew_forms(&rho, &a, ab)?;
            println!("I^{{alpha,beta}} = {}", forms.trace_form);
            println!("  trace-form      {}", forms.trace_form);
            println!("  commutator-form {}", forms.commutator_form);
            println!("  residual        {:.3e}", forms.residual());
        }
        Quantity::Remark => println!("Q_{{alpha,beta}} = {}", remark_quantity(&rho, ab)?),
        Quantity::Bound => println!("bound = {}", complementarity_bound(&rho, args.alpha)?),
        Quantity::CoherenceMum => {
            let partition = default_partition(d)?;
            let t = match args.t {
                Some(t) => t,
                None => 0.5 * max_feasible_t_mum(d, &partition)?,
            };
            let m = build_mums(d, t, &partition)?;
            println!("kappa = {}", m.kappa());
            println!("C^{{alpha,beta}} = {}", coherence_mum(&rho, &m, ab)?);
        }
        Quantity::CoherenceGsic => {
            let t = match args.t {
                Some(t) => t,
                None => 0.5 * max_feasible_t_gsic(d)?,
            };
            let g = build_general_sic(d, t)?;
            println!("a = {}", g.a());
            println!("C^{{alpha,beta}} = {}", coherence_gsic(&rho, &g, ab)?);
        }
    }
    Ok(true)
}

fn cmd_dump_basis(args: &DumpBasisArgs) -> CmdResult {
    let basis = observable_basis(args.dim)?;
    let report = verify_basis(&basis);
    let entries: Vec<IndexedMatrixJson> = basis
        .operators()
        .iter()
        .enumerate()
        .map(|(i, o)| IndexedMatrixJson {
            index: i + 1,
            matrix: MatrixJson::from_matrix(o.matrix()),
        })
        .collect();
    write_output(args.out.as_deref(), &to_json(&entries))?;
    Ok(report.holds)
}

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(value) = std::env::var("SKEWLIB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| config_error(format!("SKEWLIB_THREADS={value:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| config_error(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::VerifyAll(a) => cmd_verify_all(a),
        Command::SweepWerner(a) => cmd_sweep(a),
        Command::Build(a) => cmd_build(a),
        Command::Eval(a) => cmd_eval(a),
        Command::DumpBasis(a) => cmd_dump_basis(a),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Relation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
