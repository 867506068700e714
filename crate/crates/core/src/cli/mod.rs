//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::pipeline::{apply_coordinate_change, parse_matrix, run, CertificateReport, ProblemSpec, RunOptions, RunStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Both,
}

/// Certify Pommaret bases of real radical ideals from moment relaxations.
#[derive(Debug, Parser)]
#[command(name = "realrad", version)]
pub struct RunConfig {
    /// Input system (`vars:`, `order:`, `gen:`, `ineq:` lines).
    pub input: PathBuf,
    /// Numerical rank tolerance τ.
    #[arg(long = "tol", default_value_t = 1e-8)]
    pub tau: f64,
    /// Last relaxation order to try.
    #[arg(long)]
    pub tmax: Option<u32>,
    /// First relaxation order (orders below the natural start are reported
    /// but never certify).
    #[arg(long)]
    pub tstart: Option<u32>,
    /// Variable order, largest first, e.g. "x3 > x2 > x1". Overrides the file.
    #[arg(long)]
    pub order: Option<String>,
    /// Ball constraint radius, or "off".
    #[arg(long, default_value = "off", value_parser = parse_ball)]
    pub ball: Ball,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Shorthand for `--format json`.
    #[arg(long)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// File with an invertible n×n rational matrix A; the run uses x̃ = A·x.
    #[arg(long = "coord-change")]
    pub coord_change: Option<PathBuf>,
    /// Retry in random coordinates when no order certifies.
    #[arg(long = "auto-retry")]
    pub auto_retry: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball(pub Option<f64>);

fn parse_ball(s: &str) -> Result<Ball, String> {
    if s.eq_ignore_ascii_case("off") {
        return Ok(Ball(None));
    }
    match s.parse::<f64>() {
        Ok(r) if r > 0.0 && r.is_finite() => Ok(Ball(Some(r))),
        _ => Err(format!("expected a positive radius or 'off', got '{s}'")),
    }
}

impl RunConfig {
    pub fn output_format(&self) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else {
            self.format
        }
    }

    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            tau: self.tau,
            t_start: self.tstart,
            t_max: self.tmax,
            ball: self.ball.0,
            seed: self.seed,
            auto_retry: self.auto_retry,
            ..RunOptions::default()
        }
    }
}

pub fn exit_code(status: RunStatus) -> i32 {
    match status {
        RunStatus::Certified => 0,
        RunStatus::ExhaustedT => 2,
        RunStatus::Infeasible => 3,
    }
}

/// Replace the `order:` line of an input text.
pub fn override_order(text: &str, order: &str) -> String {
    let mut out: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with("order:"))
        .map(|l| format!("{l}\n"))
        .collect();
    out.push_str(&format!("order: {order}\n"));
    out
}

/// Load the input, apply the coordinate change if any, and run the sweep.
pub fn execute(cfg: &RunConfig) -> Result<CertificateReport, String> {
    let text = std::fs::read_to_string(&cfg.input).map_err(|e| format!("cannot read {}: {e}", cfg.input.display()))?;
    let text = match &cfg.order {
        Some(o) => override_order(&text, o),
        None => text,
    };
    let mut spec = ProblemSpec::parse(&text, cfg.run_options()).map_err(|e| format!("{}: {e}", cfg.input.display()))?;
    if let Some(path) = &cfg.coord_change {
        let m = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let a = parse_matrix(&m).map_err(|e| e.to_string())?;
        spec = apply_coordinate_change(&spec, &a).map_err(|e| e.to_string())?;
    }
    run(&spec).map_err(|e| e.to_string())
}

pub fn render(report: &CertificateReport, format: OutputFormat) -> String {
    let json = || serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match format {
        OutputFormat::Table => report.to_table(),
        OutputFormat::Json => json(),
        OutputFormat::Both => format!("{}\n{}", report.to_table(), json()),
    }
}

fn init_logging() {
    let level = match std::env::var("REALRAD_LOG").as_deref() {
        Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        Ok("trace") => log::LevelFilter::Trace,
        _ => log::LevelFilter::Warn,
    };
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();
}

/// Entry point; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_logging();
    match execute(&cfg) {
        Ok(report) => {
            print!("{}", render(&report, cfg.output_format()));
            exit_code(report.status)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}
