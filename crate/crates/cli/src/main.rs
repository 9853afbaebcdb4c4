//! `squeezelab` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure or numerical error,
//! 2 input error, 3 cutoff or resource limit.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use squeezelab::bogoliubov::SYMPLECTIC_TOL;
use squeezelab::decompose::{classify_special_case, mixed_boson_frame, BlochMessiahFactors};
use squeezelab::linalg::{max_abs, unitarity_residual};
use squeezelab::model::HamiltonianSpec;
use squeezelab::oracle::DENSE_DIM_LIMIT;
use squeezelab::reference::{reference_checks, reference_hamiltonian, REFERENCE_SPEC};
use squeezelab::states::{
    covariance, fock_amplitudes, mean_photon, photon_variance, wavefn_coherent, wavefn_coordinate,
};
use squeezelab::verify::{all_passed, default_cutoff, verify_hamiltonian, Check, DEFAULT_TOL};
use squeezelab::{
    bloch_messiah, diagonalize, disentangle, exponent_form, validate, BilinearHamiltonian, BtMatrix, CVec, Cx, Error,
    StateDescriptor, StateKind,
};

use report::{matrix, pair, vector, Report};

/// Tolerance of the structural identities reported by every command.
const STRUCTURE_TOL: f64 = 1e-9;
/// Slack on the uncertainty bound `⟨ΔX²⟩⟨ΔY²⟩ ≥ 1/16`.
const HEISENBERG_TOL: f64 = 1e-12;
/// Tolerance of the minimum-uncertainty product in the rotated frame.
const MUS_TOL: f64 = 1e-10;
const TOL_VAR: &str = "SQUEEZELAB_TOL";

#[derive(Parser)]
#[command(name = "squeezelab", version, about = "Bogoliubov diagonalization, squeeze operators and squeezed states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(clap::Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Frequencies and transformation blocks of a Hamiltonian.
    Diagonalize {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Normal-ordered and exponent forms of the squeeze operator.
    SqueezeOp {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Rotation, squeeze, rotation factors of the transformation.
    Decompose {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Moments and amplitudes of a state built on the Hamiltonian's modes.
    State {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        /// svs, scs, sfs, scfs, fock, coherent or coherent-fock.
        #[arg(long, value_name = "K")]
        kind: String,
        /// Excitation numbers, comma separated.
        #[arg(long, value_name = "LIST")]
        n: Option<String>,
        /// Displacements such as `0.5+0.1i,-0.2`, comma separated.
        #[arg(long, value_name = "LIST")]
        alpha: Option<String>,
        /// List all Fock amplitudes with every occupation at most K.
        #[arg(long, value_name = "K")]
        fock_upto: Option<usize>,
        /// Coherent-state amplitude at this point; repeatable.
        #[arg(long, value_name = "LIST")]
        coherent_at: Vec<String>,
        /// Coordinate wavefunction at this point; repeatable.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        coord_at: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Closed form against a truncated Fock-space computation.
    Verify {
        #[arg(long, value_name = "PATH")]
        spec: PathBuf,
        /// Levels per mode; defaults to 40 for up to two modes.
        #[arg(long, value_name = "D")]
        cutoff: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Runs the built-in two-mode reference through every stage.
    #[command(name = "paper-example")]
    ReferenceExample {
        #[command(flatten)]
        output: Output,
    },
}

/// A failure with its exit code already decided.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Syntax(_)
            | Error::Shape(_)
            | Error::Hermiticity { .. }
            | Error::Symmetry { .. }
            | Error::NotPositiveDefinite { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotOneMode(_)
            | Error::NotTwoMode(_)
            | Error::InconsistentState(_) => 2,
            Error::TailMassTooLarge { .. } | Error::SpaceTooLarge { .. } | Error::DegreeTooLarge { .. } => 3,
            Error::BranchCut { .. }
            | Error::SingularQuadratureFrame { .. }
            | Error::NotAntiHermitian { .. }
            | Error::Numerical(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Diagonalize { spec, output } => cmd_diagonalize(&spec, &output),
        Command::SqueezeOp { spec, output } => cmd_squeeze_op(&spec, &output),
        Command::Decompose { spec, output } => cmd_decompose(&spec, &output),
        Command::State { spec, kind, n, alpha, fock_upto, coherent_at, coord_at, output } => {
            let request = StateRequest { kind, n, alpha, fock_upto, coherent_at, coord_at };
            cmd_state(&spec, &request, &output)
        }
        Command::Verify { spec, cutoff, output } => cmd_verify(&spec, cutoff, &output),
        Command::ReferenceExample { output } => cmd_reference_example(&output),
    }
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOL_VAR) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::input(format!("{TOL_VAR} must be a positive number, got '{s}'"))),
        },
    }
}

/// Reads and validates a spec file. A failed validation prints the full
/// report to standard error.
fn load(path: &Path) -> Result<(HamiltonianSpec, BilinearHamiltonian<f64>), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let spec = HamiltonianSpec::parse(&text)?;
    let h = spec.to_unchecked()?;
    let validation = validate(&h);
    if !validation.passed {
        eprintln!("{}", serde_json::to_string_pretty(&validation).expect("report serializes"));
        return Err(validation.into_result().unwrap_err().into());
    }
    Ok((spec, h))
}

fn emit<B: Serialize>(report: &Report<B>, output: &Output) -> Outcome {
    let Format::Json = output.format;
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(report.passed)
}

fn cmd_diagonalize(path: &Path, output: &Output) -> Outcome {
    let (spec, h) = load(path)?;
    let d = diagonalize(&h)?;
    let scale = max_abs(&h.block_matrix()).max(1.0);
    let checks = vec![
        Check::new("symplectic", d.bt.check_symplectic().max(), SYMPLECTIC_TOL),
        Check::new("reconstruction", d.reconstruction_residual(&h) / scale, STRUCTURE_TOL),
    ];
    let passed = all_passed(&checks);
    let body = report::Diagonalization {
        omega: d.omega.clone(),
        ground_energy: d.ground_energy(),
        energy_shift: d.energy_shift,
        alpha: vector(&d.alpha),
        u: matrix(&d.bt.u),
        v: matrix(&d.bt.v),
        checks,
    };
    emit(&Report::new("diagonalize", Some(spec), body, passed), output)
}

fn cmd_squeeze_op(path: &Path, output: &Output) -> Outcome {
    let (spec, h) = load(path)?;
    let bt = diagonalize(&h)?.bt;
    let so = disentangle(&bt)?;
    let scale = max_abs(&bt.full()).max(1.0);
    let mut checks = vec![
        Check::new("symplectic", bt.check_symplectic().max(), SYMPLECTIC_TOL),
        Check::new("factor_product", max_abs(&(so.factor_product()? - bt.full())) / scale, STRUCTURE_TOL),
        Check::new("rho_contraction", (so.spectral_radius_2rho() - 1.0).max(0.0), 0.0),
    ];
    let (log_m, generator, log_m_error) = match exponent_form(&bt) {
        Ok(ef) => {
            checks.push(Check::new("log_m_round_trip", ef.round_trip_residual(&bt) / scale, STRUCTURE_TOL));
            checks.push(Check::new("log_m_blocks", ef.block_residual(), STRUCTURE_TOL));
            (Some(matrix(&ef.log_m)), Some(matrix(&ef.generator)), None)
        }
        Err(e @ Error::BranchCut { .. }) => (None, None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let passed = all_passed(&checks);
    let body = report::SqueezeOperator {
        u: matrix(&bt.u),
        v: matrix(&bt.v),
        rho: matrix(&so.rho),
        tau: matrix(&so.tau),
        norm_magnitude: so.norm_magnitude,
        sigma: so.sigma().ok().map(|s| matrix(&s)),
        log_m,
        generator,
        log_m_error,
        checks,
    };
    emit(&Report::new("squeeze-op", Some(spec), body, passed), output)
}

fn cmd_decompose(path: &Path, output: &Output) -> Outcome {
    let (spec, h) = load(path)?;
    let bt = diagonalize(&h)?.bt;
    let f: BlochMessiahFactors<f64> = bloch_messiah(&bt);
    let frame = mixed_boson_frame(&bt);
    let checks = vec![
        Check::new("reconstruction", f.reconstruction_residual(&bt), STRUCTURE_TOL),
        Check::new("s_unitary", unitarity_residual(&f.s_rot), STRUCTURE_TOL),
        Check::new("t_unitary", unitarity_residual(&f.t_rot), STRUCTURE_TOL),
        Check::new("mixed_frame_minimum_uncertainty", frame.minimum_uncertainty_residual(&f.r_vals), MUS_TOL),
    ];
    let passed = all_passed(&checks);
    let body = report::Decomposition {
        s: matrix(&f.s_rot),
        r: f.r_vals.clone(),
        cosh_r: f.cosh_r(),
        sinh_r: f.sinh_r(),
        t: matrix(&f.t_rot),
        degenerate: f.degenerate,
        special_case: classify_special_case(&f).name(),
        mixed_frame_covariance: matrix(&frame.cov_in_frame.cov),
        checks,
    };
    emit(&Report::new("decompose", Some(spec), body, passed), output)
}

struct StateRequest {
    kind: String,
    n: Option<String>,
    alpha: Option<String>,
    fock_upto: Option<usize>,
    coherent_at: Vec<String>,
    coord_at: Vec<String>,
}

fn split(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim)
}

fn parse_counts(list: &str) -> Result<Vec<usize>, Failure> {
    split(list)
        .map(|s| s.parse::<usize>().map_err(|_| Failure::input(format!("invalid occupation number '{s}'"))))
        .collect()
}

fn parse_complex(list: &str) -> Result<CVec<f64>, Failure> {
    let values = split(list)
        .map(|s| s.parse::<Cx<f64>>().map_err(|_| Failure::input(format!("invalid complex number '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CVec::<f64>::from_vec(values))
}

fn parse_reals(list: &str) -> Result<Vec<f64>, Failure> {
    split(list).map(|s| s.parse::<f64>().map_err(|_| Failure::input(format!("invalid coordinate '{s}'")))).collect()
}

fn expect_len(what: &str, found: usize, modes: usize) -> Result<(), Failure> {
    if found == modes {
        Ok(())
    } else {
        Err(Failure::input(format!("{what} needs {modes} entries, found {found}")))
    }
}

fn build_state(h: &BilinearHamiltonian<f64>, req: &StateRequest) -> Result<StateDescriptor<f64>, Failure> {
    let kind: StateKind = req.kind.parse()?;
    let modes = h.n_modes;
    let n = match (&req.n, kind.is_excited()) {
        (Some(list), _) => parse_counts(list)?,
        (None, true) => return Err(Failure::input(format!("{kind} state requires --n"))),
        (None, false) => vec![0; modes],
    };
    let alpha = match (&req.alpha, kind.is_displaced()) {
        (Some(list), _) => parse_complex(list)?,
        (None, true) => return Err(Failure::input(format!("{kind} state requires --alpha"))),
        (None, false) => CVec::<f64>::zeros(modes),
    };
    expect_len("--n", n.len(), modes)?;
    expect_len("--alpha", alpha.len(), modes)?;
    let bt = if kind.is_squeezed() { diagonalize(h)?.bt } else { BtMatrix::identity(modes) };
    Ok(StateDescriptor::new(kind, bt, alpha, n)?)
}

fn fock_samples(s: &StateDescriptor<f64>, upto: usize) -> Result<Vec<report::FockSample>, Failure> {
    let cutoff = upto + 1;
    let modes = s.n_modes();
    let dim = cutoff.saturating_pow(modes as u32);
    if dim > DENSE_DIM_LIMIT {
        return Err(Error::SpaceTooLarge { dim, limit: DENSE_DIM_LIMIT }.into());
    }
    let amps = fock_amplitudes(s, cutoff)?;
    Ok(amps
        .into_iter()
        .enumerate()
        .map(|(idx, a)| {
            let mut m = vec![0; modes];
            let mut rest = idx;
            for slot in m.iter_mut().rev() {
                *slot = rest % cutoff;
                rest /= cutoff;
            }
            report::FockSample { m, amplitude: pair(a) }
        })
        .collect())
}

fn cmd_state(path: &Path, req: &StateRequest, output: &Output) -> Outcome {
    let (spec, h) = load(path)?;
    let s = build_state(&h, req)?;
    let modes = s.n_modes();
    let cov = covariance(&s);
    let products = cov.uncertainty_products();
    let min_product = products.iter().copied().fold(f64::INFINITY, f64::min);

    let fock = req.fock_upto.map(|k| fock_samples(&s, k)).transpose()?;
    let fock_weight = fock.as_ref().map(|f| f.iter().map(|x| x.amplitude[0].powi(2) + x.amplitude[1].powi(2)).sum());
    let mut coherent = Vec::new();
    for point in &req.coherent_at {
        let beta = parse_complex(point)?;
        expect_len("--coherent-at", beta.len(), modes)?;
        let amplitude = pair(wavefn_coherent(&s, &beta)?);
        coherent.push(report::CoherentSample { beta: vector(&beta), amplitude });
    }
    let mut coordinate = Vec::new();
    for point in &req.coord_at {
        let x = parse_reals(point)?;
        expect_len("--coord-at", x.len(), modes)?;
        let amplitude = pair(wavefn_coordinate(&s, &x)?);
        coordinate.push(report::CoordinateSample { x, amplitude });
    }

    let checks = vec![
        Check::new("symplectic", s.bt.check_symplectic().max(), SYMPLECTIC_TOL),
        Check::new("heisenberg_bound", (1.0 / 16.0 - min_product).max(0.0), HEISENBERG_TOL),
    ];
    let passed = all_passed(&checks);
    let body = report::StateStatistics {
        kind: s.kind.name(),
        n: s.n.clone(),
        alpha: vector(&s.alpha),
        mean_n: mean_photon(&s),
        var_n: photon_variance(&s),
        covariance: matrix(&cov.cov),
        uncertainty_products: products,
        fock,
        fock_weight,
        coherent,
        coordinate,
        checks,
    };
    emit(&Report::new("state", Some(spec), body, passed), output)
}

fn cmd_verify(path: &Path, cutoff: Option<usize>, output: &Output) -> Outcome {
    let tol = tolerance()?;
    let (spec, h) = load(path)?;
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(h.n_modes));
    let r = verify_hamiltonian(&h, cutoff, tol)?;
    let body = report::Verification {
        cutoff: r.cutoff,
        dim: r.dim,
        tolerance: r.tolerance,
        tail_mass: r.tail_mass,
        moment_cutoff: r.moment_cutoff,
        checks: r.checks,
    };
    emit(&Report::new("verify", Some(spec), body, r.passed), output)
}

fn cmd_reference_example(output: &Output) -> Outcome {
    let spec = HamiltonianSpec::parse(REFERENCE_SPEC)?;
    let checks = reference_checks()?;
    let passed = all_passed(&checks);
    let omega = diagonalize(&reference_hamiltonian())?.omega;
    let body = report::GoldenComparison { omega, checks };
    emit(&Report::new("paper-example", Some(spec), body, passed), output)
}
