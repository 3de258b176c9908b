//! Command-line front end: `classify`, `section`, `verify` and `simulate`.
//!
//! Exit codes: 0 ok, 1 verification disagreement, 2 usage or malformed
//! input, 3 unsupported speed regime, 4 state already terminal, 5 I/O
//! failure, 6 simulation timeout.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::barrier::{classify, BarrierEvaluation, Outcome};
use crate::error::{Error, Result};
use crate::export::{export_section, write_trajectory_csv, ExportFormat};
use crate::game::{GameConfig, TerminalCause};
use crate::oracle::{goal_margin, GoalMargin};
use crate::scenario::Scenario;
use crate::section::{sample_section, section};
use crate::simulate::simulate;
use crate::sweep::{barrier_band_check, sweep_agreement, BandOptions, BandReport, SweepOptions, SweepReport};

/// Directory for output files whose path is not given explicitly.
pub const OUT_DIR_ENV: &str = "PURSUIT_BARRIER_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_TERMINAL: i32 = 4;
pub const EXIT_IO: i32 = 5;
pub const EXIT_TIMEOUT: i32 = 6;

#[derive(Debug, Parser)]
#[command(name = "pursuit-barrier", version, about = "Two-pursuer football game of kind: classify, section, verify, simulate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ExportFormat::Csv,
            Format::Json => ExportFormat::Json,
            Format::Svg => ExportFormat::Svg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Same,
    Fast,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the Barrier function and classify the state.
    Classify {
        scenario: PathBuf,
        /// Print the evaluation as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the Barrier cross-section for the scenario's pursuers.
    Section {
        scenario: PathBuf,
        /// Samples per segment.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check the classification against the goal-line dominance scan.
    Verify {
        /// Scenario to check; omit together with --random for a sweep.
        scenario: Option<PathBuf>,
        /// Number of random states to compare.
        #[arg(long, conflicts_with = "scenario", requires = "regime")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        regime: Option<RegimeArg>,
        /// Speeds `vE,v1,v2` for a random fast-pursuer sweep.
        #[arg(long, value_delimiter = ',')]
        speeds: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10.0)]
        x_bar: f64,
        /// Barrier-band states per segment in a random sweep.
        #[arg(long, default_value_t = 50)]
        band_states: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Play the game with heuristic strategies and record the trajectory.
    Simulate {
        scenario: PathBuf,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        tmax: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedRegime { .. } => EXIT_UNSUPPORTED,
        Error::AlreadyTerminal(_) => EXIT_TERMINAL,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = match &e {
                Error::AlreadyTerminal(cause) => writeln!(err, "AlreadyTerminal({cause:?})"),
                _ => writeln!(err, "error: {e}"),
            };
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Classify { scenario, json } => cmd_classify(&scenario, json, out),
        Command::Section { scenario, samples, out: path, format } => {
            cmd_section(&scenario, samples, path, format.into(), out)
        }
        Command::Verify { scenario: Some(path), report, .. } => cmd_verify_scenario(&path, report, out),
        Command::Verify { scenario: None, random: None, .. } => {
            Err(Error::Usage("verify needs a scenario or --random N --regime same|fast".into()))
        }
        Command::Verify { scenario: None, random: Some(n), seed, regime, speeds, x_bar, band_states, report } => {
            let regime = regime.ok_or_else(|| Error::Usage("--random needs --regime".into()))?;
            let config = match (regime, speeds) {
                (RegimeArg::Same, None) => GameConfig::new(1.0, 1.0, 1.0, x_bar)?,
                (RegimeArg::Same, Some(_)) => return Err(Error::Usage("--speeds only applies to --regime fast".into())),
                (RegimeArg::Fast, None) => GameConfig::new(0.5, 1.0, 2.0, x_bar)?,
                (RegimeArg::Fast, Some(v)) => {
                    if v.len() != 3 {
                        return Err(Error::Usage(format!("--speeds needs vE,v1,v2, got {} values", v.len())));
                    }
                    let cfg = GameConfig::new(v[0], v[1], v[2], x_bar)?;
                    if cfg.regime() != crate::game::Regime::FastPursuers {
                        return Err(Error::Usage("--regime fast needs speeds with vE below both pursuers".into()));
                    }
                    cfg
                }
            };
            cmd_verify_random(&config, n, seed, band_states, report, out)
        }
        Command::Simulate { scenario, dt, eps, tmax, out: path } => cmd_simulate(&scenario, dt, eps, tmax, path, out),
    }
}

fn output_path(explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => Path::new(&dir).join(default_name),
        None => PathBuf::from(default_name),
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_file(path, &serde_json::to_vec_pretty(value).expect("reports serialize"))
}

fn load(path: &Path) -> Result<(Scenario, GameConfig)> {
    let scenario = Scenario::load(path)?;
    let config = scenario.config()?;
    Ok((scenario, config))
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// One-line summary such as `EvaderWin B=7 segment=S2 active=Both`.
pub fn summary_line(eval: &BarrierEvaluation) -> String {
    let mut line = format!("{:?} B={} segment={} active={:?}", eval.outcome, eval.value, eval.segment, eval.active);
    if let Some(d) = eval.degraded {
        line.push_str(&format!(" degraded={d:?}"));
    }
    line
}

fn cmd_classify(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let (scenario, config) = load(path)?;
    let eval = classify(&scenario.state(), &config)?;
    if json {
        serde_json::to_writer_pretty(&mut *out, &eval).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out).map_err(io)?;
    } else {
        writeln!(out, "{}", summary_line(&eval)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_section(path: &Path, samples: usize, dest: Option<PathBuf>, format: ExportFormat, out: &mut dyn Write) -> Result<i32> {
    let (scenario, config) = load(path)?;
    let state = scenario.state();
    config.validate_state(&state)?;
    let cs = section(state.p1, state.p2, &config)?;
    let points = sample_section(&cs, samples)?;
    let bytes = export_section(&cs, &points, format)?;
    let dest = output_path(dest, &format!("section.{}", format.extension()));
    write_file(&dest, &bytes)?;
    for seg in &cs.segments {
        writeln!(out, "{} {} [{}, {}] active={:?}", seg.segment, seg.curve.kind_name(), seg.lo, seg.hi, seg.active)
            .map_err(io)?;
    }
    if let Some(d) = cs.degraded {
        writeln!(out, "degraded={d:?}").map_err(io)?;
    }
    writeln!(out, "wrote {} samples to {}", points.len(), dest.display()).map_err(io)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct ScenarioCheck {
    evaluation: BarrierEvaluation,
    oracle: GoalMargin,
    band: f64,
    margin_threshold: f64,
    verdict: &'static str,
    passed: bool,
}

fn cmd_verify_scenario(path: &Path, report: Option<PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let (scenario, config) = load(path)?;
    let state = scenario.state();
    let eval = classify(&state, &config)?;
    let oracle = goal_margin(&state, &config);
    let band = 1e-3 * (1.0 + config.x_bar * config.x_bar);
    let threshold = 1e-4 * config.x_bar;
    let (verdict, passed) = if eval.outcome == Outcome::OnBarrier {
        ("on barrier: |margin| within threshold", oracle.margin.abs() <= threshold)
    } else if eval.value.abs() > band {
        ("sign agreement", (eval.value > 0.0) == (oracle.margin > 0.0) && oracle.margin != 0.0)
    } else {
        ("inside the uncertainty band: not compared", true)
    };
    writeln!(out, "{}", summary_line(&eval)).map_err(io)?;
    writeln!(out, "oracle margin={} at g={}", oracle.margin, oracle.argmax_x).map_err(io)?;
    writeln!(out, "{verdict}: {}", if passed { "pass" } else { "FAIL" }).map_err(io)?;
    let check = ScenarioCheck { evaluation: eval, oracle, band, margin_threshold: threshold, verdict, passed };
    write_json(&output_path(report, "verify_report.json"), &check)?;
    Ok(if passed { EXIT_OK } else { EXIT_DISAGREEMENT })
}

#[derive(Debug, Serialize)]
struct RandomReport {
    sweep: SweepReport,
    barrier_band: BandReport,
    passed: bool,
}

fn cmd_verify_random(
    config: &GameConfig,
    n: usize,
    seed: u64,
    band_states: usize,
    report: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    if n == 0 {
        return Err(Error::Usage("--random needs a positive count".into()));
    }
    let sweep = sweep_agreement(config, &SweepOptions::new(config, n, seed));
    let band = barrier_band_check(config, &BandOptions::new(config, band_states.max(1), seed));
    writeln!(
        out,
        "sweep: checked={} agreements={} disagreements={} filtered={} regular={} degraded={:?}",
        sweep.checked,
        sweep.agreements,
        sweep.disagreements.len(),
        sweep.filtered,
        sweep.regular,
        sweep.degraded
    )
    .map_err(io)?;
    writeln!(
        out,
        "barrier band: checked={} failures={} max|margin|={:e} threshold={:e}",
        band.checked,
        band.failures.len(),
        band.max_abs_margin,
        band.options.threshold
    )
    .map_err(io)?;
    for w in sweep.warnings.iter().chain(&band.warnings) {
        writeln!(out, "warning: {w}").map_err(io)?;
    }
    let passed = sweep.passed() && band.passed();
    writeln!(out, "{}", if passed { "pass" } else { "FAIL" }).map_err(io)?;
    write_json(&output_path(report, "verify_report.json"), &RandomReport { sweep, barrier_band: band, passed })?;
    Ok(if passed { EXIT_OK } else { EXIT_DISAGREEMENT })
}

fn cmd_simulate(
    path: &Path,
    dt: Option<f64>,
    eps: Option<f64>,
    tmax: Option<f64>,
    dest: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let (scenario, config) = load(path)?;
    let mut opts = scenario.sim_options(&config);
    opts.dt = dt.unwrap_or(opts.dt);
    opts.eps = eps.unwrap_or(opts.eps);
    opts.t_max = tmax.unwrap_or(opts.t_max);
    let traj = simulate(&scenario.state(), &config, &opts)?;
    let dest = output_path(dest, "trajectory.csv");
    let file = std::fs::File::create(&dest).map_err(|e| Error::Io(format!("{}: {e}", dest.display())))?;
    write_trajectory_csv(&traj, std::io::BufWriter::new(file))?;
    let mut line = format!("terminal={:?} t={}", traj.terminal, traj.duration());
    if let Some(p) = traj.capture_point {
        line.push_str(&format!(" capture_point=({}, {})", p.x, p.y));
    }
    writeln!(out, "{line}").map_err(io)?;
    writeln!(out, "wrote {} samples to {}", traj.samples.len(), dest.display()).map_err(io)?;
    Ok(if traj.terminal == TerminalCause::Timeout { EXIT_TIMEOUT } else { EXIT_OK })
}
