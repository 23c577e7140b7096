use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use trigather::engine;
use trigather::range1::{self, RuleTable};
use trigather::render;
use trigather::trace::write_trace;
use trigather::verify::{algorithm_by_id, KNOWN_ALGORITHMS};
use trigather::{enumerate_connected, Configuration, Trace};

use crate::{Format, Render};

/// Largest robot count `enumerate` accepts.
const MAX_ENUMERATE: usize = 8;

/// Exit status of a command that ran to completion. Input and usage errors
/// are reported as `Err` and map to exit code 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Success => ExitCode::SUCCESS,
            Status::VerificationFailed => ExitCode::from(1),
        }
    }
}

pub fn enumerate(n: usize, out: Option<&Path>) -> Result<Status> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        bail!("--n must be in 1..={MAX_ENUMERATE}, got {n}");
    }
    let all = enumerate_connected(n)?;
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
        for c in &all {
            writeln!(w, "{}", c.to_json())?;
        }
        w.flush()?;
    }
    println!("n={n} count={}", all.len());
    Ok(Status::Success)
}

fn lookup_algorithm(id: &str) -> Result<Box<dyn trigather::Decide>> {
    algorithm_by_id(id).with_context(|| format!("known algorithms: {}", KNOWN_ALGORITHMS.join(", ")))
}

fn write_trace_file(trace: &Trace, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    write_trace(trace, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn verify(
    n: usize,
    algorithm: &str,
    max_steps: usize,
    jobs: Option<usize>,
    out_dir: &Path,
    format: Format,
) -> Result<Status> {
    if !(1..=MAX_ENUMERATE).contains(&n) {
        bail!("--n must be in 1..={MAX_ENUMERATE}, got {n}");
    }
    let f = lookup_algorithm(algorithm)?;
    let summary = trigather::verify::verify(n, f.as_ref(), max_steps, jobs)?;

    let failure_dir = out_dir.join("failures");
    fs::create_dir_all(&failure_dir).with_context(|| format!("creating {}", failure_dir.display()))?;
    fs::write(out_dir.join("summary.csv"), summary.to_csv())?;
    for r in summary.failed_records() {
        write_trace_file(
            &r.trace,
            &failure_dir.join(format!("config-{:05}.trace.jsonl", r.config_id)),
        )?;
    }

    match format {
        Format::Human => print!("{}", summary.to_human()),
        Format::Csv => print!("{}", summary.to_csv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary.to_json())?),
    }
    Ok(if summary.passed() {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

fn read_config(path: &Path) -> Result<Configuration> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Configuration::read_json(std::io::BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

pub fn run(config: &Path, algorithm: &str, max_steps: usize, render_mode: Render, out_dir: &Path) -> Result<Status> {
    let cfg = read_config(config)?;
    let f = lookup_algorithm(algorithm)?;
    let trace = engine::run(&cfg, f.as_ref(), max_steps)?;

    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    write_trace_file(&trace, &out_dir.join("trace.jsonl"))?;
    match render_mode {
        Render::None => {}
        Render::Ascii => {
            for i in 0..=trace.step_count() {
                println!("step {i}:");
                print!("{}", render::ascii(trace.config_at(i)));
            }
        }
        Render::Svg => {
            for i in 0..=trace.step_count() {
                let svg = render::svg(trace.config_at(i), &format!("step {i}"));
                fs::write(out_dir.join(format!("step-{i:03}.svg")), svg)?;
            }
        }
    }
    println!("outcome={} steps={}", trace.outcome, trace.step_count());
    Ok(Status::Success)
}

pub fn range1(table: &Path, config: &str, max_steps: usize, out_dir: &Path) -> Result<Status> {
    let text = fs::read_to_string(table).with_context(|| format!("reading {}", table.display()))?;
    let table = RuleTable::parse(&text).with_context(|| format!("parsing {}", table.display()))?;
    let cfg = match range1::library_config(config) {
        Some(entry) => entry.config,
        None if Path::new(config).exists() => read_config(Path::new(config))?,
        None => {
            let names: Vec<_> = range1::library().iter().map(|c| c.name).collect();
            bail!(
                "`{config}` is neither a built-in configuration ({}) nor a file",
                names.join(", ")
            );
        }
    };
    let verdict = range1::check_table(&table, &cfg, max_steps)?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    write_trace_file(&verdict.trace, &out_dir.join("trace.jsonl"))?;
    println!("outcome={} steps={}", verdict.outcome, verdict.trace.step_count());
    Ok(Status::Success)
}
