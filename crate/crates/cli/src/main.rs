//! knot-alt: classify oriented link diagrams from PD codes.
//!
//! Exit codes: 0 success, 1 input error, 2 internal-consistency failure
//! (a violated invariant of the pipeline itself; should never happen).

mod report;
mod selfcheck;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use knot_alt_core::dot::GraphKind;
use knot_alt_core::{analyze, parse_json, parse_pd, Error, PDCode};
use report::{CheckKind, Record, Report};

#[derive(Parser)]
#[command(name = "knot-alt", version, about = "Homogeneity and alternativity of link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify diagrams from .pd/.json files or directories of them.
    Classify {
        /// Input files or directories.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Override the outer region: the face walk of this dart becomes
        /// the outer region (darts are numbered 4 * crossing + slot).
        #[arg(long)]
        outer_dart: Option<usize>,
        /// Which verdicts to print in text output.
        #[arg(long, value_enum, default_value = "all")]
        check: CheckKind,
        /// Include per-diagram wall-clock times (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Export a derived graph as Graphviz DOT.
    Graph {
        input: PathBuf,
        /// spatial | seifert | labeled-seifert | g<i>
        #[arg(long)]
        kind: String,
        /// Emit DOT (the default and only format).
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        outer_dart: Option<usize>,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite on the built-in corpus plus random diagrams.
    Selfcheck {
        /// RNG seed; defaults to $KNOT_ALT_SEED, then 1729.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random diagrams to generate.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify {
            inputs,
            format,
            outer_dart,
            check,
            timings,
        } => run_classify(&inputs, format, outer_dart, check, timings),
        Command::Graph {
            input,
            kind,
            dot: _,
            outer_dart,
            output,
        } => run_graph(&input, &kind, outer_dart, output.as_deref()),
        Command::Selfcheck { seed, count } => selfcheck::run(seed, count),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("knot-alt: {err}");
            if err.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Expand files and directories into an ordered input list. Directories
/// contribute their .pd and .json files sorted by name.
fn collect_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>, Error> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("pd") | Some("json")
                    )
                })
                .collect();
            entries.sort();
            if entries.is_empty() {
                return Err(Error::Input(format!(
                    "{}: no .pd or .json files",
                    path.display()
                )));
            }
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

fn load_pd(path: &Path) -> Result<PDCode, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let mut pd = if path.extension().and_then(|e| e.to_str()) == Some("json") {
        parse_json(&text)?
    } else {
        parse_pd(&text)?
    };
    if pd.name.is_none() {
        pd.name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned());
    }
    Ok(pd)
}

fn display_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run_classify(
    inputs: &[PathBuf],
    format: Format,
    outer_dart: Option<usize>,
    check: CheckKind,
    timings: bool,
) -> Result<ExitCode, Error> {
    let files = collect_inputs(inputs)?;
    let results: Vec<Result<Record, Error>> = files
        .par_iter()
        .map(|path| {
            let fname = Some(path.display().to_string());
            let pd = match load_pd(path) {
                Ok(pd) => pd,
                Err(e) if e.is_internal() => return Err(e),
                Err(e) => {
                    return Ok(Record::from_error(display_name(path), fname, e.to_string()))
                }
            };
            let name = pd.name.clone().unwrap_or_else(|| display_name(path));
            let start = Instant::now();
            match analyze(&pd, outer_dart) {
                Ok(a) => {
                    let ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
                    Ok(Record::from_analysis(name, fname, &a, ms))
                }
                // Theorem violations abort the whole run.
                Err(e) if e.is_internal() => Err(e),
                Err(e) => Ok(Record::from_error(name, fname, e.to_string())),
            }
        })
        .collect();

    let mut records = Vec::with_capacity(results.len());
    for r in results {
        records.push(r?);
    }
    let report = Report::new(records);
    match format {
        Format::Text => print!("{}", report.to_text(check)),
        Format::Json => print!("{}", report.to_json()),
    }
    if report.summary.errors > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn run_graph(
    input: &Path,
    kind: &str,
    outer_dart: Option<usize>,
    output: Option<&Path>,
) -> Result<ExitCode, Error> {
    let kind: GraphKind = kind.parse()?;
    let pd = load_pd(input)?;
    let analysis = analyze(&pd, outer_dart)?;
    let dot = knot_alt_core::dot::export(&analysis, kind)?;
    match output {
        Some(path) => std::fs::write(path, dot)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(ExitCode::SUCCESS)
}
