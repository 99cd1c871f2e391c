//! Command-line front end.
//!
//! Exit codes: 0 success, 1 output I/O failure, 2 configuration error,
//! 3 domain or admissibility error, 4 internal inconsistency (including a
//! failed `--check-fd`).

pub mod config;
pub mod report;
pub mod simulate;

use std::ffi::OsString;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::geom::Vec3;
use crate::numerics::{classify_definiteness, fd_hessian, sym_eigenvalues, SymMatrix};
use crate::spacecraft::{self, castalia_preset, gravity_coefficients, Regime, SpacecraftParams};
use crate::underwater;
use config::{OrbitSummary, Resolved, RunConfig, System};
use report::{
    CastaliaDocument, CastaliaSigns, FdCheck, HessianDocument, ReportDocument, SimulationDocument, SystemReport,
    Timing, ToolInfo,
};

/// Largest relative Frobenius deviation `hessian --check-fd` accepts.
pub const FD_CHECK_TOLERANCE: f64 = 1e-5;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Domain(Error::InternalInconsistency(_) | Error::Convergence { .. }) => 4,
            CliError::Domain(_) => 3,
            CliError::Check(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "leafstab", version, about = "Energy-Casimir stability of spacecraft and underwater vehicle equilibria")]
struct Cli {
    /// Worker threads when several configs are given.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Add wall-clock timing to the printed documents.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stability report for a spacecraft on a stationary orbit.
    SpacecraftStability {
        #[arg(long, required = true, num_args = 1..)]
        config: Vec<PathBuf>,
    },
    /// Stability report for an underwater vehicle in horizontal translation.
    UnderwaterStability {
        #[arg(long, required = true, num_args = 1..)]
        config: Vec<PathBuf>,
    },
    /// Integrate a perturbed equilibrium and write the trajectory as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Closed-form reduced Hessian, optionally checked against finite differences.
    Hessian {
        #[arg(long, required = true, num_args = 1..)]
        config: Vec<PathBuf>,
        #[arg(long)]
        check_fd: bool,
    },
    /// The 4769 Castalia case study (or another asteroid from an
    /// `asteroid_orbit` config).
    Castalia {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let timing = cli.timing;
    match cli.command {
        Command::SpacecraftStability { config } => {
            run_many(&config, cli.jobs, out, err, |p| stability_document(p, System::Spacecraft, timing))
        }
        Command::UnderwaterStability { config } => {
            run_many(&config, cli.jobs, out, err, |p| stability_document(p, System::Underwater, timing))
        }
        Command::Hessian { config, check_fd } => {
            run_many(&config, cli.jobs, out, err, |p| hessian_document(p, check_fd, timing))
        }
        Command::Simulate { config, out: path } => finish(simulation_document(&config, &path, timing), out, err),
        Command::Castalia { config } => finish(castalia_document(config.as_deref(), timing), out, err),
    }
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn report_error(e: &CliError, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "leafstab: {e}");
    e.exit_code()
}

/// Prints a document. A failed check still prints the document before the
/// nonzero exit.
fn finish<T: Serialize>(result: Result<(T, Option<CliError>), CliError>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match result {
        Ok((doc, check)) => {
            if let Err(e) = write_json(&doc, out) {
                return report_error(&e, err);
            }
            check.map_or(0, |e| report_error(&e, err))
        }
        Err(e) => report_error(&e, err),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Entry<T> {
    Ok(T),
    Failed { config: String, error: ErrorEntry },
}

#[derive(Serialize)]
struct ErrorEntry {
    exit_code: i32,
    message: String,
}

/// Runs `job` over every config (in parallel with `--jobs`) and prints one
/// document, or an array in input order when several configs are given.
fn run_many<T, F>(paths: &[PathBuf], jobs: Option<usize>, out: &mut dyn Write, err: &mut dyn Write, job: F) -> i32
where
    T: Serialize + Send,
    F: Fn(&Path) -> Result<(T, Option<CliError>), CliError> + Sync,
{
    if let [path] = paths {
        return finish(job(path), out, err);
    }
    let results: Vec<_> = match jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| paths.par_iter().map(|p| job(p)).collect()),
            Err(e) => return report_error(&CliError::Io(format!("thread pool: {e}")), err),
        },
        _ => paths.iter().map(|p| job(p)).collect(),
    };

    let mut code = 0;
    let mut entries = Vec::with_capacity(results.len());
    for (path, result) in paths.iter().zip(results) {
        match result {
            Ok((doc, check)) => {
                if let Some(e) = check {
                    code = code.max(report_error(&e, err));
                }
                entries.push(Entry::Ok(doc));
            }
            Err(e) => {
                code = code.max(report_error(&e, err));
                entries.push(Entry::Failed {
                    config: path.display().to_string(),
                    error: ErrorEntry { exit_code: e.exit_code(), message: e.to_string() },
                });
            }
        }
    }
    match write_json(&entries, out) {
        Ok(()) => code,
        Err(e) => report_error(&e, err),
    }
}

fn elapsed(start: Instant, enabled: bool) -> Option<Timing> {
    enabled.then(|| Timing { elapsed_seconds: start.elapsed().as_secs_f64() })
}

fn load_for(path: &Path, expected: System) -> Result<(RunConfig, Resolved), CliError> {
    let cfg = RunConfig::load(path)?;
    if cfg.system != expected {
        return Err(CliError::Config(format!(
            "{}: expected a {expected:?} config, found {:?}",
            path.display(),
            cfg.system
        )));
    }
    let resolved = cfg.resolve()?;
    Ok((cfg, resolved))
}

/// Stability analysis of one config file.
pub fn stability_document(
    path: &Path,
    expected: System,
    timing: bool,
) -> Result<(ReportDocument, Option<CliError>), CliError> {
    let start = Instant::now();
    let (config, resolved) = load_for(path, expected)?;
    let report = match &resolved {
        Resolved::Spacecraft { params, .. } => SystemReport::Spacecraft(spacecraft::stability_analysis(params)?),
        Resolved::Underwater { vehicle, q2e } => {
            SystemReport::Underwater(underwater::stability_analysis(*q2e, vehicle)?)
        }
    };
    let doc = ReportDocument { tool: ToolInfo::current(), config, resolved, report, timing: elapsed(start, timing) };
    Ok((doc, None))
}

/// Closed-form and (optionally) finite-difference Hessians at the equilibrium.
pub fn closed_and_fd_hessian(resolved: &Resolved, with_fd: bool) -> Result<(SymMatrix, Option<SymMatrix>), CliError> {
    match resolved {
        Resolved::Spacecraft { params, .. } => {
            params.validate()?;
            let closed = spacecraft::reduced_hessian(params);
            let fd = if with_fd {
                let pe = spacecraft::equilibrium(params).pi;
                let x0 = [pe.x, pe.y, pe.z, 0.0, 0.0, 0.0];
                Some(fd_hessian(|x| spacecraft::reduced_hamiltonian_at(x, params), &x0)?)
            } else {
                None
            };
            Ok((closed, fd))
        }
        Resolved::Underwater { vehicle, q2e } => {
            let closed = underwater::reduced_hessian(*q2e, vehicle)?;
            let fd = if with_fd {
                let pe: Vec3 = underwater::equilibrium(*q2e, vehicle)?.pi;
                let x0 = [pe.x, pe.y, pe.z, 0.0, 0.0, 0.0];
                Some(fd_hessian(|x| underwater::reduced_hamiltonian_at(x, *q2e, vehicle), &x0)?)
            } else {
                None
            };
            Ok((closed, fd))
        }
    }
}

pub fn hessian_document(
    path: &Path,
    check_fd: bool,
    timing: bool,
) -> Result<(HessianDocument, Option<CliError>), CliError> {
    let start = Instant::now();
    let config = RunConfig::load(path)?;
    let resolved = config.resolve()?;
    let (hessian, fd) = closed_and_fd_hessian(&resolved, check_fd)?;
    let eigenvalues = sym_eigenvalues(&hessian)?;
    let definiteness = classify_definiteness(&hessian)?;
    let fd_check = fd.map(|fd| {
        let relative_deviation = hessian.relative_frobenius_error(&fd);
        FdCheck { relative_deviation, tolerance: FD_CHECK_TOLERANCE, passed: relative_deviation <= FD_CHECK_TOLERANCE }
    });
    let failure = fd_check.as_ref().filter(|c| !c.passed).map(|c| {
        CliError::Check(format!(
            "{}: closed-form Hessian deviates from finite differences by {:.3e} (tolerance {:.0e})",
            path.display(),
            c.relative_deviation,
            c.tolerance
        ))
    });
    let doc = HessianDocument {
        tool: ToolInfo::current(),
        config,
        resolved,
        hessian,
        eigenvalues,
        definiteness,
        fd_check,
        timing: elapsed(start, timing),
    };
    Ok((doc, failure))
}

pub fn simulation_document(
    path: &Path,
    out_path: &Path,
    timing: bool,
) -> Result<(SimulationDocument, Option<CliError>), CliError> {
    let start = Instant::now();
    let config = RunConfig::load(path)?;
    let sim = config
        .simulation
        .ok_or_else(|| CliError::Config(format!("{}: no simulation block", path.display())))?;
    let resolved = config.resolve()?;
    let file = std::fs::File::create(out_path).map_err(|e| CliError::Io(format!("{}: {e}", out_path.display())))?;
    let mut writer = BufWriter::new(file);
    let simulation = simulate::simulate(&resolved, &sim, Some(&mut writer))?;
    writer.flush().map_err(|e| CliError::Io(format!("{}: {e}", out_path.display())))?;
    let doc = SimulationDocument { tool: ToolInfo::current(), config, resolved, simulation, timing: elapsed(start, timing) };
    Ok((doc, None))
}

/// Representative inertia triple and label for each regime's ordering.
const ORDERINGS: [([f64; 3], &str); 6] = [
    ([1.0, 3.0, 2.0], "I2 > I3 > I1"),
    ([1.0, 2.0, 3.0], "I3 > I2 > I1"),
    ([2.0, 1.0, 3.0], "I3 > I1 > I2"),
    ([2.0, 3.0, 1.0], "I2 > I1 > I3"),
    ([3.0, 2.0, 1.0], "I1 > I2 > I3"),
    ([3.0, 1.0, 2.0], "I1 > I3 > I2"),
];

/// Inertia orderings for which `(ω_T, k)` satisfies the sufficient conditions.
pub fn sufficient_orderings(omega_t: f64, k: [f64; 3]) -> Vec<String> {
    ORDERINGS
        .iter()
        .filter(|(inertia, _)| Regime::classify(&SpacecraftParams { inertia: *inertia, omega_t, k }).is_some())
        .map(|(_, label)| label.to_string())
        .collect()
}

pub fn castalia_document(
    path: Option<&Path>,
    timing: bool,
) -> Result<(CastaliaDocument, Option<CliError>), CliError> {
    let start = Instant::now();
    let (asteroid, requested) = match path {
        None => (castalia_preset(), None),
        Some(path) => {
            let cfg = RunConfig::load(path)?;
            let block = cfg
                .asteroid_orbit
                .ok_or_else(|| CliError::Config(format!("{}: castalia needs an asteroid_orbit block", path.display())))?;
            (block.asteroid, block.orbit_radius)
        }
    };
    let orbit = OrbitSummary::new(&asteroid, requested)?;
    let r = orbit.selected_radius;
    let k = gravity_coefficients(&asteroid, r);
    let signs = CastaliaSigns {
        k1_less_than_k3: k[0] < k[2],
        spin_exceeds_gradient: asteroid.omega_t * asteroid.omega_t > 2.0 * (k[1] - k[0]),
    };
    let orderings = sufficient_orderings(asteroid.omega_t, k);
    let conclusion = if orderings.is_empty() {
        format!("no inertia ordering meets the sufficient stability conditions at R = {r:.2} m")
    } else {
        format!("at R = {r:.2} m any spacecraft with {} is Lyapunov stable", orderings.join(" or "))
    };
    let doc = CastaliaDocument {
        tool: ToolInfo::current(),
        asteroid,
        gm: asteroid.gm(),
        orbit,
        k,
        signs,
        sufficient_orderings: orderings,
        conclusion,
        timing: elapsed(start, timing),
    };
    Ok((doc, None))
}
