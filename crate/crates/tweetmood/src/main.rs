use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tweetmood::formats::{self, annotate_series, parse_events};
use tweetmood::{run_pipeline, RunConfig, RunError, Stage};

/// Sentiment, emotion and topic reports from archived tweets.
#[derive(Debug, Parser)]
#[command(version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// TOML run configuration
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// ingest, score, emotions, topics or all
    #[arg(long, default_value = "all")]
    stage: Stage,
    /// override the configured seed
    #[arg(long)]
    seed: Option<u64>,
    /// output directory, overriding out_dir in the config
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Add an event column to a series CSV
    Annotate {
        #[arg(long)]
        series: PathBuf,
        /// CSV with header date,label
        #[arg(long)]
        events: PathBuf,
        /// write here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), RunError> {
    if let Some(Command::Annotate { series, events, output }) = cli.command {
        return annotate(series, events, output);
    }
    let Some(path) = cli.config else {
        return Err(RunError::validation("config", "--config is required"));
    };
    let mut cfg = RunConfig::load(&path).map_err(|e| RunError::validation("config", e.to_string()))?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let out = cli
        .out
        .or_else(|| cfg.out_dir())
        .ok_or_else(|| RunError::validation("config", "no output directory (set out_dir or pass --out)"))?;
    let bundle = run_pipeline(&cfg, cli.stage, &out)?;
    for name in bundle.names() {
        eprintln!("wrote {}", out.join(name).display());
    }
    Ok(())
}

fn annotate(series: PathBuf, events: PathBuf, output: Option<PathBuf>) -> Result<(), RunError> {
    let load_err = |e: formats::LoadError| match e {
        formats::LoadError::Io { .. } => RunError::runtime("annotate", e.to_string()),
        formats::LoadError::Parse { .. } => RunError::validation("annotate", e.to_string()),
    };
    let events = formats::load(&events, parse_events).map_err(load_err)?;
    let annotated = formats::load(&series, |text| annotate_series(text, &events)).map_err(load_err)?;
    for e in &annotated.unmatched {
        eprintln!("warning: event {} {:?} matches no date in the series", e.date, e.label);
    }
    match output {
        Some(p) => std::fs::write(&p, &annotated.csv)
            .map_err(|e| RunError::runtime("annotate", format!("{}: {e}", p.display())))?,
        None => print!("{}", annotated.csv),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
