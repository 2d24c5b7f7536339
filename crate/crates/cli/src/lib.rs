//! Command-line front end for the mspace toolkit. [`run`] does all the work
//! and returns the text and exit code, so tests can drive it in-process.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mspace_core::algebra::quat_mul;
use mspace_core::bohr_model::{energy_imbalance, solve_level, spectrum, transition, OrbitShift, PhysicalParams};
use mspace_core::density::{density_profile, pl_from_pm, sphere_average, AverageMethod, DensityLaw};
use mspace_core::dirac_field::{PlaneWaveSolution, SolutionKind};
use mspace_core::suite::{algebra_suite, dirac_suite, DiracStudy, Report};

pub mod config;
pub mod output;

pub use config::{Format, RunConfig, Units};

/// Exit code for a completed run that found an invariant violation.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for bad input or I/O failure.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mspace_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("constants file line {line}: {msg}")]
    Constants { line: usize, msg: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("output: {0}")]
    Output(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "mspace", version, about = "Biquaternion Dirac, orbit spectrum and density checks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Units::Natural)]
    pub units: Units,
    /// key=value file overriding alpha and electron_mass_ev.
    #[arg(long, global = true)]
    pub constants: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub panels: usize,
    /// Base grid spacing for residual studies.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub h: f64,
    /// Monte Carlo streams; part of the configuration, not the machine.
    #[arg(long, global = true, default_value_t = 4)]
    pub workers: u32,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Coupling {
    /// Coupling constant g; defaults to alpha.
    #[arg(long, conflicts_with = "z")]
    pub g: Option<f64>,
    /// Nuclear charge number; g = z alpha.
    #[arg(long)]
    pub z: Option<f64>,
}

impl Coupling {
    fn value(&self, cfg: &RunConfig) -> f64 {
        match (self.g, self.z) {
            (Some(g), _) => g,
            (None, Some(z)) => z * cfg.constants.alpha,
            (None, None) => cfg.constants.alpha,
        }
    }

    fn params(&self, cfg: &RunConfig) -> Result<PhysicalParams, CliError> {
        Ok(PhysicalParams::new(1.0, self.value(cfg))?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Single,
    Averaged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplication table, homomorphism and block-product checks.
    VerifyAlgebra {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Finite-difference residual convergence of the level-n solution (g = 0: free electron at rest).
    VerifyDirac {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[command(flatten)]
        coupling: Coupling,
        /// Number of spacings h, h/2, h/4, ...
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Scale the frequency by this factor; anything but 1 breaks the dispersion relation.
        #[arg(long, default_value_t = 1.0)]
        detune: f64,
    },
    /// Orbit levels against the Dirac circular-orbit energies.
    Spectrum {
        #[command(flatten)]
        coupling: Coupling,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
    /// Transition energy plus the energy-imbalance sign table around the initial level.
    Transition {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[command(flatten)]
        coupling: Coupling,
        /// Sweep points on each side of the on-shell velocity.
        #[arg(long, default_value_t = 4)]
        sweep: u32,
        /// Half-width of the sweep as a fraction of the on-shell velocity.
        #[arg(long, default_value_t = 0.2)]
        spread: f64,
    },
    /// Probability profile in L from a constant probability in M.
    Density {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[command(flatten)]
        coupling: Coupling,
        #[arg(long, value_enum, default_value_t = LawArg::Single)]
        law: LawArg,
        /// Defaults to half the orbit radius.
        #[arg(long)]
        r_min: Option<f64>,
        /// Defaults to twice the orbit radius.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Probability per unit volume in M.
        #[arg(long, default_value_t = 1.0)]
        p_m: f64,
    },
    /// Mean distance and mean inverse distance from the axis over a sphere.
    Average {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::ClosedForm)]
        method: MethodArg,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Serialize)]
struct CheckRow<'a> {
    check: &'a str,
    measured: f64,
    threshold: f64,
    passed: bool,
}

#[derive(Serialize)]
struct SpectrumRow {
    n: u32,
    v: f64,
    #[serde(rename = "R")]
    radius: f64,
    #[serde(rename = "E")]
    energy: f64,
    binding: f64,
    #[serde(rename = "E_dirac")]
    dirac: f64,
    rel_diff: f64,
}

#[derive(Serialize, Default)]
struct TransitionRow {
    kind: &'static str,
    n_from: u32,
    n_to: Option<u32>,
    #[serde(rename = "E_from")]
    energy_from: Option<f64>,
    #[serde(rename = "E_to")]
    energy_to: Option<f64>,
    #[serde(rename = "delta_E")]
    delta_e: Option<f64>,
    v: f64,
    v_e: Option<f64>,
    #[serde(rename = "R")]
    radius: f64,
    #[serde(rename = "R_e")]
    radius_e: Option<f64>,
    #[serde(rename = "delta_N")]
    delta_n: Option<f64>,
    shift: Option<String>,
}

#[derive(Serialize)]
struct DensityRow {
    r_or_a: f64,
    value: f64,
    law: &'static str,
}

#[derive(Serialize)]
struct AverageRow {
    a: f64,
    method: &'static str,
    mean_distance: f64,
    mean_inverse_distance: f64,
    distance_std_error: Option<f64>,
    inverse_std_error: Option<f64>,
    samples: Option<u64>,
    seed: Option<u64>,
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome { stderr: text, code, ..Default::default() }
            } else {
                Outcome { stdout: text, code, ..Default::default() }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { stderr: format!("error: {e}\n"), code: EXIT_ERROR, ..Default::default() },
    }
}

fn config_of(cli: &Cli) -> Result<RunConfig, CliError> {
    let constants = match &cli.constants {
        Some(p) => config::load_constants(p)?,
        None => Default::default(),
    };
    if !(cli.h > 0.0) || !cli.h.is_finite() {
        return Err(CliError::Usage(format!("--h must be positive, got {}", cli.h)));
    }
    if cli.panels == 0 || cli.workers == 0 {
        return Err(CliError::Usage("--panels and --workers must be at least 1".into()));
    }
    Ok(RunConfig {
        units: cli.units,
        constants_file: cli.constants.clone(),
        constants,
        format: cli.format,
        seed: cli.seed,
        panels: cli.panels,
        h: cli.h,
        workers: cli.workers,
        out: cli.out.clone(),
        verbose: cli.verbose,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = config_of(cli)?;
    let mut log = String::new();
    if cfg.verbose {
        log.push_str(&cfg.provenance());
        log.push('\n');
    }
    let (table, ok) = match &cli.command {
        Command::VerifyAlgebra { cases } => report_table(&algebra_suite(quat_mul, *cases, cfg.seed), &cfg, &mut log)?,
        Command::VerifyDirac { n, coupling, levels, detune } => {
            verify_dirac(&cfg, *n, coupling.value(&cfg), *levels, *detune, &mut log)?
        }
        Command::Spectrum { coupling, n_max } => cmd_spectrum(&cfg, &coupling.params(&cfg)?, *n_max)?,
        Command::Transition { from, to, coupling, sweep, spread } => {
            cmd_transition(&cfg, &coupling.params(&cfg)?, *from, *to, *sweep, *spread)?
        }
        Command::Density { n, coupling, law, r_min, r_max, samples, p_m } => {
            cmd_density(&cfg, &coupling.params(&cfg)?, *n, *law, *r_min, *r_max, *samples, *p_m)?
        }
        Command::Average { a, method, samples } => cmd_average(&cfg, *a, *method, *samples)?,
    };
    let code = if ok { 0 } else { EXIT_VIOLATION };
    if !ok {
        log.push_str("invariant violation\n");
    }
    let stdout = match &cfg.out {
        Some(path) => {
            std::fs::write(path, &table).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
            String::new()
        }
        None => table,
    };
    Ok(Outcome { stdout, stderr: log, code })
}

fn report_table(report: &Report, cfg: &RunConfig, log: &mut String) -> Result<(String, bool), CliError> {
    let rows: Vec<_> = report
        .checks
        .iter()
        .map(|c| CheckRow { check: &c.name, measured: c.measured, threshold: c.threshold, passed: c.passed })
        .collect();
    if cfg.verbose {
        for c in &report.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            log.push_str(&format!("{mark} {}: {:e} (limit {:e})\n", c.name, c.measured, c.threshold));
        }
    }
    Ok((output::render(&rows, cfg.format)?, report.passed()))
}

fn verify_dirac(
    cfg: &RunConfig,
    n: u32,
    g: f64,
    levels: usize,
    detune: f64,
    log: &mut String,
) -> Result<(String, bool), CliError> {
    if levels < 2 {
        return Err(CliError::Usage("--levels must be at least 2 to fit a slope".into()));
    }
    let mut study = DiracStudy::for_level(1.0, g, n, cfg.h, levels)?;
    if detune != 1.0 {
        let s = study.solution;
        study.solution = PlaneWaveSolution::unchecked(s.nu * detune, s.mu, s.pot, s.mass, SolutionKind::Bound);
    }
    let outcome = dirac_suite(&study)?;
    report_table(&outcome.report, cfg, log)
}

fn cmd_spectrum(cfg: &RunConfig, params: &PhysicalParams, n_max: u32) -> Result<(String, bool), CliError> {
    let k = cfg.energy_scale();
    let mut ok = true;
    let mut rows = Vec::new();
    for level in spectrum(params, n_max)? {
        let dirac = mspace_core::bohr_model::dirac_energy(params, level.n)?;
        let rel_diff = (level.energy - dirac).abs() / dirac.abs();
        let (force, quant) = level.plug_back(params);
        ok &= rel_diff < 1e-12 && force < 1e-12 && quant < 1e-12;
        rows.push(SpectrumRow {
            n: level.n,
            v: level.v,
            radius: level.radius,
            energy: level.energy * k,
            binding: level.binding(params) * k,
            dirac: dirac * k,
            rel_diff,
        });
    }
    Ok((output::render(&rows, cfg.format)?, ok))
}

fn cmd_transition(
    cfg: &RunConfig,
    params: &PhysicalParams,
    from: u32,
    to: u32,
    sweep: u32,
    spread: f64,
) -> Result<(String, bool), CliError> {
    if !(spread > 0.0 && spread < 1.0) {
        return Err(CliError::Usage(format!("--spread must lie in (0, 1), got {spread}")));
    }
    let k = cfg.energy_scale();
    let t = transition(params, from, to)?;
    let level = solve_level(params, from)?;
    let mut ok = from != to || t.delta_e == 0.0;
    let mut rows = vec![TransitionRow {
        kind: "transition",
        n_from: from,
        n_to: Some(to),
        energy_from: Some(t.energy_from * k),
        energy_to: Some(t.energy_to * k),
        delta_e: Some(t.delta_e * k),
        v: level.v,
        radius: level.radius,
        ..Default::default()
    }];
    let half = f64::from(sweep.max(1));
    let mut previous = f64::INFINITY;
    for j in -(sweep as i64)..=(sweep as i64) {
        let v_e = level.v * (1.0 + spread * j as f64 / half);
        if !(v_e > 0.0 && v_e < 1.0) {
            continue;
        }
        let im = energy_imbalance(params, from, v_e)?;
        let shift = im.shift();
        // higher orbit exactly when the imbalance is positive and the radius grows
        ok &= match shift {
            OrbitShift::Higher => im.delta_n > 0.0 && im.radius_e > im.radius,
            OrbitShift::Lower => im.delta_n < 0.0 && im.radius_e < im.radius,
            OrbitShift::OnShell => im.delta_n == 0.0,
        };
        ok &= j != 0 || shift == OrbitShift::OnShell;
        ok &= im.delta_n < previous;
        previous = im.delta_n;
        rows.push(TransitionRow {
            kind: "imbalance",
            n_from: from,
            v: level.v,
            v_e: Some(v_e),
            radius: level.radius,
            radius_e: Some(im.radius_e),
            delta_n: Some(im.delta_n * k),
            shift: Some(shift.to_string()),
            ..Default::default()
        });
    }
    Ok((output::render(&rows, cfg.format)?, ok))
}

#[allow(clippy::too_many_arguments)]
fn cmd_density(
    cfg: &RunConfig,
    params: &PhysicalParams,
    n: u32,
    law: LawArg,
    r_min: Option<f64>,
    r_max: Option<f64>,
    samples: usize,
    p_m: f64,
) -> Result<(String, bool), CliError> {
    let radius = solve_level(params, n)?.radius;
    let lo = r_min.unwrap_or(0.5 * radius);
    let hi = r_max.unwrap_or(2.0 * radius);
    if samples == 0 || !(hi >= lo) {
        return Err(CliError::Usage(format!("need samples >= 1 and r-max >= r-min, got {samples}, [{lo}, {hi}]")));
    }
    let distances: Vec<f64> = if samples == 1 {
        vec![lo]
    } else {
        (0..samples).map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64).collect()
    };
    let law = match law {
        LawArg::Single => DensityLaw::Single,
        LawArg::Averaged => DensityLaw::Averaged,
    };
    let profile = density_profile(law, p_m, radius, &distances)?;
    // P^L = P^M on the orbit, and the profile falls off as 1/distance
    let mut ok = pl_from_pm(p_m, radius, radius)? == p_m;
    let moment = |&(x, v): &(f64, f64)| x * v;
    let first = profile.points.first().map(moment).unwrap_or(0.0);
    ok &= profile.points.iter().all(|p| (moment(p) - first).abs() <= 1e-12 * first.abs());
    let rows: Vec<_> = profile.points.iter().map(|&(x, v)| DensityRow { r_or_a: x, value: v, law: law.name() }).collect();
    Ok((output::render(&rows, cfg.format)?, ok))
}

fn cmd_average(cfg: &RunConfig, a: f64, method: MethodArg, samples: u64) -> Result<(String, bool), CliError> {
    let m = match method {
        MethodArg::ClosedForm => AverageMethod::ClosedForm,
        MethodArg::Quadrature => AverageMethod::Quadrature { panels: cfg.panels },
        MethodArg::MonteCarlo => AverageMethod::MonteCarlo { samples, seed: cfg.seed, workers: cfg.workers },
    };
    let res = sphere_average(a, m)?;
    let exact = sphere_average(a, AverageMethod::ClosedForm)?;
    // mean distance times mean inverse distance exceeds one
    let mut ok = res.mean_distance * res.mean_inverse_distance > 1.0;
    match m {
        AverageMethod::ClosedForm => {}
        AverageMethod::Quadrature { .. } => {
            let d = (res.mean_distance - exact.mean_distance).abs() / exact.mean_distance;
            let i = (res.mean_inverse_distance - exact.mean_inverse_distance).abs() / exact.mean_inverse_distance;
            ok &= d <= 1e-8 && i <= 1e-8;
        }
        AverageMethod::MonteCarlo { .. } => {
            let se = res.distance_std_error.unwrap_or(0.0);
            ok &= (res.mean_distance - exact.mean_distance).abs() <= 5.0 * se + 1e-12 * exact.mean_distance;
        }
    }
    let (samples, seed) = match m {
        AverageMethod::MonteCarlo { samples, seed, .. } => (Some(samples), Some(seed)),
        _ => (None, None),
    };
    let row = AverageRow {
        a: res.a,
        method: m.name(),
        mean_distance: res.mean_distance,
        mean_inverse_distance: res.mean_inverse_distance,
        distance_std_error: res.distance_std_error,
        inverse_std_error: res.inverse_std_error,
        samples,
        seed,
    };
    Ok((output::render(&[row], cfg.format)?, ok))
}
