use std::path::PathBuf;

use clap::{Parser, Subcommand};
use treeshift::Window;
use treeshift_cli::commands::{self, ClassifyOptions, DEFAULT_TOL, DEFAULT_WINDOW};
use treeshift_cli::{dot, parse_spec, CliError};

#[derive(Parser)]
#[command(
    name = "treeshift",
    about = "Classify weighted shifts on directed trees and cross-check the verdicts numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (h, r) = s
        .split_once(',')
        .ok_or_else(|| "expected H,R (stem depth, ray length)".to_string())?;
    let stem = h.trim().parse::<usize>().map_err(|e| e.to_string())?;
    let ray = r.trim().parse::<usize>().map_err(|e| e.to_string())?;
    Ok(Window::new(stem, ray))
}

#[derive(Subcommand)]
enum Command {
    /// Classify one or more spec files and print full reports.
    Classify {
        /// Spec files (JSON).
        specs: Vec<PathBuf>,
        /// Truncation window as H,R (stem depth, ray length).
        #[arg(long, value_parser = parse_window)]
        window: Option<Window>,
        /// Relative tolerance for modulus comparisons and oracles.
        #[arg(long)]
        tol: Option<f64>,
        /// Exit nonzero when symbolic and numeric oracles disagree.
        #[arg(long)]
        strict: bool,
        /// Also write the reports as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build the extension model for a perturbed-unilateral shift and verify
    /// the embedding.
    VerifyExtension {
        spec: PathBuf,
        /// How many embedded basis vectors to check.
        #[arg(long, default_value_t = 30)]
        window: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the moment sequence of a vertex with the Hankel verdict.
    Moments {
        spec: PathBuf,
        /// Vertex id: a core name, s(-k) for stem vertices, name(i) for ray
        /// vertices.
        #[arg(long)]
        vertex: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Emit a DOT graph of the (truncated) tree with weight-labeled edges.
    Dot {
        spec: PathBuf,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_window)]
        window: Option<Window>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Tolerance resolution: flag, then TREESHIFT_TOL, then the default.
fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    let value = match flag {
        Some(t) => t,
        None => match std::env::var("TREESHIFT_TOL") {
            Ok(text) => text.parse::<f64>().map_err(|e| {
                CliError::Precondition(format!("TREESHIFT_TOL is not a float: {e}"))
            })?,
            Err(_) => DEFAULT_TOL,
        },
    };
    let ok = value > 0.0 && value.is_finite();
    if !ok {
        return Err(CliError::Precondition(format!(
            "tolerance must be a positive finite number, got {value}"
        )));
    }
    Ok(value)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify {
            specs,
            window,
            tol,
            strict,
            json,
        } => {
            if specs.is_empty() {
                return Err(CliError::Precondition(
                    "classify needs at least one spec file".to_string(),
                ));
            }
            let opts = ClassifyOptions {
                window: window.unwrap_or(DEFAULT_WINDOW),
                tol: resolve_tol(tol)?,
                strict,
            };
            let mut reports = Vec::new();
            let mut disagreements = Vec::new();
            for path in &specs {
                let (report, mut issues) = commands::classify_file(path, &opts)?;
                print!("{}", report.render());
                println!();
                reports.push(report);
                disagreements.append(&mut issues);
            }
            println!(
                "classified {} spec(s): {} oracle disagreement(s)",
                reports.len(),
                disagreements.len()
            );
            if let Some(json_path) = json {
                let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
                std::fs::write(&json_path, text).map_err(|source| CliError::Output {
                    path: json_path.clone(),
                    source,
                })?;
            }
            if strict && !disagreements.is_empty() {
                return Err(CliError::StrictDisagreement(disagreements.join("; ")));
            }
            Ok(())
        }
        Command::VerifyExtension { spec, window, tol } => {
            let tol = resolve_tol(tol)?;
            let out = commands::verify_file(&spec, window, tol)?;
            print!("{out}");
            Ok(())
        }
        Command::Moments {
            spec,
            vertex,
            count,
            tol,
        } => {
            let tol = resolve_tol(tol)?;
            let out = commands::moments_file(&spec, &vertex, count, tol)?;
            print!("{out}");
            Ok(())
        }
        Command::Dot {
            spec,
            out,
            window,
            tol,
        } => {
            let tol = resolve_tol(tol)?;
            let shift = parse_spec(&spec)?;
            let text = dot::emit(&shift, window.unwrap_or(DEFAULT_WINDOW), tol)?;
            std::fs::write(&out, text).map_err(|source| CliError::Output {
                path: out.clone(),
                source,
            })?;
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
