use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Simulate and verify seven-robot gathering on the triangular grid.
#[derive(Parser, Debug)]
#[command(name = "trigather", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count (and optionally list) connected configurations up to translation.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Write every canonical configuration as one JSON object per line.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run an algorithm from every connected configuration.
    Verify {
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, default_value = "gather2-v1")]
        algorithm: String,
        #[arg(long, default_value_t = trigather::engine::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Receives summary.csv and one trace per failing configuration.
        #[arg(long, default_value = "trigather-out")]
        out_dir: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run an algorithm from one configuration file and record the trace.
    Run {
        #[arg(long)]
        config: std::path::PathBuf,
        #[arg(long, default_value = "gather2-v1")]
        algorithm: String,
        #[arg(long, default_value_t = trigather::engine::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Render::None)]
        render: Render,
        /// Receives trace.jsonl and, with --render svg, step-NNN.svg files.
        #[arg(long, default_value = "trigather-out")]
        out_dir: std::path::PathBuf,
    },
    /// Replay a range-1 rule table on a built-in or file configuration.
    Range1 {
        #[arg(long)]
        table: std::path::PathBuf,
        /// Built-in configuration name or path to a configuration file.
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = trigather::engine::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Receives trace.jsonl.
        #[arg(long, default_value = "trigather-out")]
        out_dir: std::path::PathBuf,
    },
    /// Print the compiled guard table of the range-2 algorithm.
    DumpGuards,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Render {
    None,
    Ascii,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate { n, out } => commands::enumerate(n, out.as_deref()),
        Command::Verify {
            n,
            algorithm,
            max_steps,
            jobs,
            out_dir,
            format,
        } => commands::verify(n, &algorithm, max_steps, jobs, &out_dir, format),
        Command::Run {
            config,
            algorithm,
            max_steps,
            render,
            out_dir,
        } => commands::run(&config, &algorithm, max_steps, render, &out_dir),
        Command::Range1 {
            table,
            config,
            max_steps,
            out_dir,
        } => commands::range1(&table, &config, max_steps, &out_dir),
        Command::DumpGuards => {
            print!("{}", trigather::gather2::dump_guards());
            Ok(commands::Status::Success)
        }
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
