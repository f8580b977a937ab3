//! Command-line front end. The `ptcoh` binary is a thin wrapper around
//! [`run`].
//!
//! Qubits are numbered from 1 on the command line (qubit 1 is the one the
//! `U ⊗ I ⊗ …` convention acts on); the library numbers them from 0.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coherence::coherence_triple;
use crate::dilation::run_dilation;
use crate::error::Error;
use crate::linalg::trace_distance;
use crate::pt::{evolve_local, PTParams, Regime};
use crate::state::{fidelity, make_state, FamilyKind, QState, StateFamily};
use crate::sweep::{self, Method, SweepSpec};
use crate::tomography::{add_noise, all_pauli_labels, measure_paulis, reconstruct};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const THREADS_ENV: &str = "PTCOH_THREADS";
const DILATION_TOL: f64 = 1e-9;

const TIME_UNITS: &str = "Time is dimensionless, in units where the σx coefficient of \
H = σx + i r σz is 1. Angles are in radians.";

#[derive(Parser, Debug)]
#[command(name = "ptcoh", version, about = "Coherence dynamics under a local PT-symmetric Hamiltonian", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Time series of (C_T, C_G, C_L) for a Bell or GHZ state.
    #[command(after_help = TIME_UNITS)]
    Evolve(EvolveArgs),
    /// Coherence over an (angle, time) grid as JSON.
    #[command(after_help = TIME_UNITS)]
    Contour(ContourArgs),
    /// Dilation-circuit angles for one (r, t), optionally checked against direct evolution.
    #[command(after_help = TIME_UNITS)]
    Dilate(DilateArgs),
    /// Simulated Pauli tomography and reconstruction fidelity.
    #[command(after_help = TIME_UNITS)]
    Tomo(TomoArgs),
    /// Export a state to JSON or validate and re-emit an imported one.
    #[command(after_help = TIME_UNITS)]
    State(StateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateKind {
    Bell,
    Ghz,
}

impl StateKind {
    fn family_kind(self) -> FamilyKind {
        match self {
            StateKind::Bell => FamilyKind::BellAlpha,
            StateKind::Ghz => FamilyKind::GhzBeta,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StateKind::Bell => "bell",
            StateKind::Ghz => "ghz",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Direct,
    Dilation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pair {
    #[value(name = "12")]
    P12,
    #[value(name = "13")]
    P13,
    #[value(name = "23")]
    P23,
}

impl Pair {
    fn qubits(self) -> [usize; 2] {
        match self {
            Pair::P12 => [0, 1],
            Pair::P13 => [0, 2],
            Pair::P23 => [1, 2],
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write data here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads for grid evaluation (default: all cores). PTCOH_THREADS overrides.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    /// Family angle in radians, cos·|0…0⟩ + sin·|1…1⟩.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    pub angle: f64,
    /// Non-hermiticity r ≥ 0.
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    /// Qubit (1-based) the PT operation acts on.
    #[arg(long, default_value_t = 1)]
    pub qubit: usize,
    /// Final time (dimensionless).
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: f64,
    /// Time step (dimensionless).
    #[arg(long, default_value_t = sweep::DEFAULT_DT, allow_negative_numbers = true)]
    pub dt: f64,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: MethodArg,
    /// Report the two-qubit marginal on this pair (GHZ only).
    #[arg(long, value_enum)]
    pub pair: Option<Pair>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ContourArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = sweep::DEFAULT_ANGLE_STEPS)]
    pub angle_steps: usize,
    #[arg(long, default_value_t = sweep::DEFAULT_T_MAX_BROKEN, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long, default_value_t = sweep::DEFAULT_DT, allow_negative_numbers = true)]
    pub dt: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct DilateArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    /// Evolution time (dimensionless).
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
    /// Compare the postselected state with direct evolution; exit 3 if they
    /// differ by more than 1e-9 in trace distance.
    #[arg(long)]
    pub check: bool,
    #[arg(long, value_enum, default_value = "bell")]
    pub state: StateKind,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    pub angle: f64,
    #[arg(long, default_value_t = 1)]
    pub qubit: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TomoArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    pub angle: f64,
    /// Standard deviation of Gaussian readout noise.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("direction").required(true).args(["export", "import"])))]
pub struct StateArgs {
    /// Write the selected state to this JSON file.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Read, validate and re-emit a state JSON file.
    #[arg(long)]
    pub import: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "bell")]
    pub state: StateKind,
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4, allow_negative_numbers = true)]
    pub angle: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::QubitOutOfRange { .. }
            | Error::MalformedLabel(_)
            | Error::Json(_)
            | Error::Underdetermined(_)
            | Error::DimensionMismatch(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn family(kind: StateKind, angle: f64) -> CliResult<StateFamily> {
    Ok(StateFamily::new(kind.family_kind(), angle)?)
}

fn qubit_index(one_based: usize, n: usize) -> CliResult<usize> {
    if one_based == 0 || one_based > n {
        return Err(Failure::Usage(format!(
            "--qubit {one_based} is outside 1..={n}"
        )));
    }
    Ok(one_based - 1)
}

fn threads(flag: Option<usize>) -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v} is not a thread count"))),
        _ => Ok(flag),
    }
}

fn emit(output: &Option<PathBuf>, data: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, data)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(data.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write output: {e}"))),
    }
}

fn json_line<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| Failure::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn cmd_evolve(args: &EvolveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let fam = family(args.state, args.angle)?;
    let spec = SweepSpec {
        family: fam,
        target_qubit: qubit_index(args.qubit, fam.n_qubits())?,
        r: args.r,
        t_max: args.t_max,
        dt: args.dt,
        reduced_pair: args.pair.map(Pair::qubits),
        method: match args.method {
            MethodArg::Direct => Method::Direct,
            MethodArg::Dilation => Method::Dilation,
        },
    };
    spec.validate()?;
    let n_threads = threads(args.common.threads)?;
    let series = sweep::with_threads(n_threads, || sweep::run_time_sweep(&spec))??;
    let data = match args.format {
        Format::Csv => series.to_csv(),
        Format::Json => {
            let mut s = series.to_json()?;
            s.push('\n');
            s
        }
    };
    emit(&args.common.output, &data, stdout)
}

fn cmd_contour(args: &ContourArgs, stdout: &mut dyn Write) -> CliResult<()> {
    PTParams::new(args.r)?;
    if args.angle_steps < 2 {
        return Err(Failure::Usage("--angle-steps must be at least 2".into()));
    }
    if !(args.t_max > 0.0) || !(args.dt > 0.0) || args.dt > args.t_max {
        return Err(Failure::Usage(
            "--t-max and --dt must be positive with dt ≤ t-max".into(),
        ));
    }
    let n_threads = threads(args.common.threads)?;
    let grid = sweep::with_threads(n_threads, || {
        sweep::run_contour(
            args.state.family_kind(),
            args.r,
            args.angle_steps,
            args.t_max,
            args.dt,
        )
    })??;
    let mut data = grid.to_json()?;
    data.push('\n');
    emit(&args.common.output, &data, stdout)
}

#[derive(Serialize)]
struct DilateReport {
    r: f64,
    t: f64,
    regime: &'static str,
    theta: f64,
    phi: f64,
    success_scale: f64,
    success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
}

fn cmd_dilate(args: &DilateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let params = PTParams::new(args.r)?;
    let fam = family(args.state, args.angle)?;
    let target = qubit_index(args.qubit, fam.n_qubits())?;
    let work = make_state(fam);
    let outcome = run_dilation(&work, target, args.r, args.t)?;
    let deviation = if args.check {
        let direct = evolve_local(&work, target, args.r, args.t)?;
        Some(trace_distance(
            outcome.postselected_state.rho(),
            direct.rho(),
        )?)
    } else {
        None
    };
    let report = DilateReport {
        r: args.r,
        t: args.t,
        regime: match params.regime() {
            Regime::Unbroken => "unbroken",
            Regime::Exceptional => "exceptional",
            Regime::Broken => "broken",
        },
        theta: outcome.angles.theta,
        phi: outcome.angles.phi,
        success_scale: outcome.angles.success_scale,
        success_probability: outcome.success_probability,
        max_deviation: deviation,
    };
    emit(&args.output, &json_line(&report)?, stdout)?;
    if let Some(d) = deviation {
        if d > DILATION_TOL {
            return Err(Failure::Numerical(format!(
                "dilation deviates from direct evolution by {d:e} (> {DILATION_TOL:e})"
            )));
        }
        let _ = writeln!(
            stderr,
            "dilation matches direct evolution (trace distance {d:e})"
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct TomoReport {
    state: &'static str,
    angle: f64,
    noise: f64,
    seed: u64,
    measurements: usize,
    fidelity: f64,
    residual: f64,
    projection_steps: usize,
}

fn cmd_tomo(args: &TomoArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if !(args.noise >= 0.0) || !args.noise.is_finite() {
        return Err(Failure::Usage(
            "--noise must be a non-negative number".into(),
        ));
    }
    let truth = make_state(family(args.state, args.angle)?);
    let labels = all_pauli_labels(truth.n_qubits(), false);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let clean = measure_paulis(&truth, &refs)?;
    let noisy = add_noise(&clean, args.noise, args.seed)?;
    let result = reconstruct(&noisy)?;
    let report = TomoReport {
        state: args.state.name(),
        angle: args.angle,
        noise: args.noise,
        seed: args.seed,
        measurements: labels.len(),
        fidelity: fidelity(&result.state, &truth)?,
        residual: result.residual,
        projection_steps: result.iterations,
    };
    emit(&args.output, &json_line(&report)?, stdout)
}

fn cmd_state(args: &StateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    if let Some(path) = &args.export {
        let s = make_state(family(args.state, args.angle)?);
        let mut json = s.to_json()?;
        json.push('\n');
        return emit(&Some(path.clone()), &json, stdout);
    }
    let path = args
        .import
        .as_ref()
        .expect("clap enforces --export or --import");
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let s = QState::from_json(&text)?;
    let triple = coherence_triple(&s)?;
    let _ = writeln!(
        stderr,
        "{}-qubit state: purity {:.12}, C_T {:.12}, C_G {:.12}, C_L {:.12}",
        s.n_qubits(),
        s.purity(),
        triple.c_total,
        triple.c_global,
        triple.c_local
    );
    let mut json = s.to_json()?;
    json.push('\n');
    emit(&args.output, &json, stdout)
}

/// Parses `argv` and runs the selected subcommand. Returns the process exit
/// code: 0 on success, 2 for invalid arguments, 3 when a numerical invariant
/// is violated.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Evolve(a) => cmd_evolve(a, stdout),
        Command::Contour(a) => cmd_contour(a, stdout),
        Command::Dilate(a) => cmd_dilate(a, stdout, stderr),
        Command::Tomo(a) => cmd_tomo(a, stdout),
        Command::State(a) => cmd_state(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numerical(msg)) => {
            let _ = writeln!(stderr, "numerical error: {msg}");
            EXIT_NUMERICAL
        }
    }
}
