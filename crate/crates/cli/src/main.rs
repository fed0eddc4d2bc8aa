use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use circumnav::geometry::Vec2;
use circumnav::io::config::{config_from_value, load_config_value, set_path, ConfigError};
use circumnav::io::csv::{read_table, CsvError};
use circumnav::io::{load_config, write_outputs, IoError, RunSummary};
use circumnav::metrics::{summarize, EmptyWindow};
use circumnav::sim::{finite_difference, pe_check, run, run_many, PeError, PeParams, Signal, SimError};
use circumnav::verify;

/// Exit codes by error category.
mod exit {
    pub const USAGE: u8 = 2;
    pub const CONFIG: u8 = 3;
    pub const IO: u8 = 4;
    pub const INVARIANT: u8 = 5;
    pub const NUMERIC: u8 = 6;
    pub const VERIFY: u8 = 7;
    pub const INSUFFICIENT_DATA: u8 = 8;
}

#[derive(Parser)]
#[command(name = "circumnav", version, about = "Multi-agent circumnavigation of a moving circular target")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write its output bundle.
    Run(RunArgs),
    /// Run a configuration over a range of values of one key.
    Sweep(SweepArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Verify,
    /// Check persistent excitation of the sensing agent in a trajectory CSV.
    PeCheck(PeCheckArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Also write SVG plots.
    #[arg(long)]
    plot: bool,
    #[arg(long, env = "CIRCUMNAV_OUT", default_value = "out")]
    out: PathBuf,
    /// Abort on the first invariant violation.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// `key=start:end:count` or `key=v1,v2,...`; the key is a dotted path
    /// such as `estimator.gamma`.
    #[arg(long)]
    vary: String,
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    #[arg(long, env = "CIRCUMNAV_OUT", default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct PeCheckArgs {
    #[arg(long)]
    record: PathBuf,
    /// Agent id whose velocity and range are checked.
    #[arg(long, default_value_t = 0)]
    agent: usize,
    /// Start of the checked span, s. Defaults to 30% of the record.
    #[arg(long)]
    from: Option<f64>,
    #[arg(long, default_value_t = PeParams::default().window)]
    window: f64,
    #[arg(long, default_value_t = PeParams::default().threshold)]
    threshold: f64,
    #[arg(long, default_value_t = PeParams::default().stride)]
    stride: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl std::fmt::Display) -> Self {
        Self { code, message: message.to_string() }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::new(exit::CONFIG, e)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::new(exit::IO, e)
    }
}

impl From<EmptyWindow> for Failure {
    fn from(e: EmptyWindow) -> Self {
        Failure::new(exit::INSUFFICIENT_DATA, e)
    }
}

impl From<PeError> for Failure {
    fn from(e: PeError) -> Self {
        Failure::new(exit::INSUFFICIENT_DATA, e)
    }
}

impl From<CsvError> for Failure {
    fn from(e: CsvError) -> Self {
        Failure::new(exit::IO, e)
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = match e {
            SimError::Validation(_) => exit::CONFIG,
            SimError::InvariantViolation(_) => exit::INVARIANT,
            SimError::Geometry { .. } | SimError::NonFiniteState { .. } => exit::NUMERIC,
        };
        Failure::new(code, e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(exit::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify => cmd_verify(),
        Command::PeCheck(a) => cmd_pe_check(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_run(a: RunArgs) -> Result<(), Failure> {
    let mut cfg = load_config(&a.config)?;
    cfg.strict |= a.strict;
    let record = run(&cfg)?;
    let summary = summarize(&record, cfg.transient_cutoff())?;
    let bundle = write_outputs(&record, &summary, &a.out, a.plot)?;

    let sensing = record.sensing();
    println!("steps: {}", record.rows.len() - 1);
    println!("after t = {}:", summary.transient_cutoff);
    println!("  max |D^b| per agent: {:?}", summary.max_boundary_error);
    println!("  max |D^b_1| (sensing agent {sensing}): {:.6}", summary.max_boundary_error[sensing]);
    println!("  max centre error: {:.6}", summary.max_centre_error);
    println!("  max radius error: {:.6}", summary.max_radius_error);
    println!("  max spacing error: {:.6}", summary.max_spacing_error);
    println!("  control bound violations: {}", summary.control_bound_violations);
    println!("invariant violations: {}", record.violations.len());
    match record.pe.verdict() {
        Some(v) => println!("excitation verdict: {v}"),
        None => println!("excitation verdict: insufficient data"),
    }
    println!("wrote {}", bundle.trajectory.display());
    println!("wrote {}", bundle.summary.display());
    for p in &bundle.plots {
        println!("wrote {}", p.display());
    }
    Ok(())
}

/// Parses `key=a:b:n` (inclusive, evenly spaced) or `key=v1,v2,...`.
fn parse_vary(spec: &str) -> Result<(String, Vec<Value>), Failure> {
    let usage = |m: &str| Failure::new(exit::USAGE, format!("--vary {spec}: {m}"));
    let (key, range) = spec.split_once('=').ok_or_else(|| usage("expected key=range"))?;
    if key.is_empty() {
        return Err(usage("empty key"));
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| usage(&format!("`{s}` is not a number")));
    let values = if range.contains(':') {
        let parts: Vec<&str> = range.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(usage("expected start:end:count"));
        };
        let (a, b) = (num(a)?, num(b)?);
        let n: usize = n.trim().parse().map_err(|_| usage("count must be a positive integer"))?;
        match n {
            0 => return Err(usage("count must be a positive integer")),
            1 => vec![a],
            _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
        }
    } else {
        range.split(',').map(num).collect::<Result<_, _>>()?
    };
    // integer keys such as seed need integral JSON numbers
    let values = values
        .into_iter()
        .map(|v| if v.fract() == 0.0 && v.abs() < 9.0e15 && v >= 0.0 { Value::from(v as u64) } else { Value::from(v) })
        .collect();
    Ok((key.to_string(), values))
}

fn cmd_sweep(a: SweepArgs) -> Result<(), Failure> {
    let (key, values) = parse_vary(&a.vary)?;
    let base = load_config_value(&a.config)?;
    let origin = a.config.display().to_string();
    let mut configs = Vec::with_capacity(values.len());
    for v in &values {
        let mut doc = base.clone();
        set_path(&mut doc, &key, v.clone())?;
        configs.push(config_from_value(doc, &format!("{origin} with {key}={v}"))?);
    }

    let results = run_many(&configs, a.parallel);
    std::fs::create_dir_all(&a.out).map_err(|source| IoError { path: a.out.clone(), source })?;
    let mut entries = Vec::new();
    let mut first_failure = None;
    println!("{:>16}  {:>12}  {:>12}  {:>12}  {:>12}", key.as_str(), "max|D^b_1|", "centre err", "radius err", "spacing err");
    for ((v, cfg), res) in values.iter().zip(&configs).zip(results) {
        let outcome = res.map_err(Failure::from).and_then(|rec| {
            let s = summarize(&rec, cfg.transient_cutoff())?;
            Ok(RunSummary::new(&rec, s))
        });
        match outcome {
            Ok(s) => {
                let e = &s.errors;
                println!(
                    "{:>16}  {:>12.6}  {:>12.6}  {:>12.6}  {:>12.6}",
                    v.to_string(),
                    e.max_boundary_error[s.ring_order.sensing()],
                    e.max_centre_error,
                    e.max_radius_error,
                    e.max_spacing_error
                );
                entries.push(serde_json::json!({ "value": v, "summary": s }));
            }
            Err(f) => {
                println!("{:>16}  error: {}", v.to_string(), f.message);
                entries.push(serde_json::json!({ "value": v, "error": f.message }));
                first_failure.get_or_insert(f);
            }
        }
    }
    let path = a.out.join("sweep.json");
    let doc = serde_json::json!({ "key": key, "runs": entries });
    let mut text = serde_json::to_string_pretty(&doc).expect("sweep results serialize");
    text.push('\n');
    std::fs::write(&path, text).map_err(|source| IoError { path: path.clone(), source })?;
    println!("wrote {}", path.display());
    first_failure.map_or(Ok(()), Err)
}

fn cmd_verify() -> Result<(), Failure> {
    let criteria = verify::all();
    for c in &criteria {
        println!("{}", c.line());
        for f in c.failures() {
            println!("    {}: {:.6e} (limit {:.3e})", f.name, f.value, f.limit);
        }
    }
    let failed = criteria.iter().filter(|c| !c.passed()).count();
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        return Err(Failure::new(exit::VERIFY, format!("{failed} criteria failed")));
    }
    Ok(())
}

fn column(table: &circumnav::io::csv::Table, name: &str, path: &Path) -> Result<Vec<f64>, Failure> {
    table.column(name).ok_or_else(|| Failure::new(exit::IO, format!("{}: no column `{name}`", path.display())))
}

fn cmd_pe_check(a: PeCheckArgs) -> Result<(), Failure> {
    let file = File::open(&a.record).map_err(|source| IoError { path: a.record.clone(), source })?;
    let table = read_table(BufReader::new(file))?;
    let t = column(&table, "t", &a.record)?;
    let ux = column(&table, &format!("u{}_x", a.agent), &a.record)?;
    let uy = column(&table, &format!("u{}_y", a.agent), &a.record)?;
    let dc = column(&table, &format!("dc{}", a.agent), &a.record)?;
    if t.len() < 2 {
        return Err(PeError::InsufficientData { span: 0.0, window: a.window }.into());
    }
    let dt = t[1] - t[0];
    let from = a.from.unwrap_or(t[0] + 0.3 * (t[t.len() - 1] - t[0]));
    let start = t.iter().position(|&x| x >= from - 1e-9).unwrap_or(t.len());
    let params = PeParams { window: a.window, threshold: a.threshold, stride: a.stride };

    let velocity: Vec<Vec2> = ux[start..].iter().zip(&uy[start..]).map(|(&x, &y)| Vec2::new(x, y)).collect();
    let t0 = t.get(start).copied().unwrap_or(from);
    let v = pe_check(Signal::Planar(&velocity), t0, dt, &params)?;
    let range_rate = finite_difference(&dc[start..], dt);
    let r = pe_check(Signal::Scalar(&range_rate), t0, dt, &params)?;

    println!("agent {} from t = {t0}, window {} s, threshold {}", a.agent, params.window, params.threshold);
    println!("  velocity:   min excitation {:.6e} over {} windows, verdict {}", v.min_excitation, v.windows.len(), v.verdict);
    println!("  range rate: min excitation {:.6e} over {} windows, verdict {}", r.min_excitation, r.windows.len(), r.verdict);
    println!("exciting: {}", v.verdict && r.verdict);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vary_linspace() {
        let (k, v) = parse_vary("estimator.gamma=0.5:1.5:3").ok().unwrap();
        assert_eq!(k, "estimator.gamma");
        assert_eq!(v, vec![Value::from(0.5), Value::from(1u64), Value::from(1.5)]);
    }

    #[test]
    fn vary_list_and_errors() {
        let (_, v) = parse_vary("seed=1,2,3").ok().unwrap();
        assert_eq!(v, vec![Value::from(1u64), Value::from(2u64), Value::from(3u64)]);
        for bad in ["seed", "=1,2", "seed=1:2", "seed=a,b", "seed=0:1:0"] {
            assert!(parse_vary(bad).is_err(), "{bad}");
        }
    }
}
