mod corpus;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use painleve_core::{classify, monodromy_loop, parse, BigRational, ParseError, QuadraticODE};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "painleve", version, about = "Painlevé analysis of quadratic polynomial ODEs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Equation, e.g. "w'' = 6*w^2 + z".
    equation: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Bureau gate, resonances, compatibility conditions, class and conditions.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Expansion depth (default: largest resonance plus the order).
        #[arg(long)]
        depth: Option<usize>,
        /// Rational expansion point (default: generic symbolic z0).
        #[arg(long, value_parser = BigRational::from_str)]
        z0: Option<BigRational>,
    },
    /// Classification only, with the evidence trail.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Linearization of the A (w^2)^(n-1) class.
    Linearize {
        #[command(flatten)]
        common: Common,
    },
    /// Numeric continuation around a circle.
    Monodromy {
        #[command(flatten)]
        common: Common,
        /// Circle center, e.g. 1 or 1+0.5i.
        #[arg(long, allow_hyphen_values = true)]
        center: Complex64,
        #[arg(long)]
        radius: f64,
        /// Comma-separated initial values w, w', ..., w^(n-1) at the start point.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        seed_state: Vec<Complex64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        winding: i32,
        /// Local error tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Angle of the start point on the circle, in radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        start_angle: f64,
    },
    /// Runs every `.ode` file in a directory against its expectations.
    Corpus {
        directory: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn parse_or_report(text: &str) -> Result<QuadraticODE, ExitCode> {
    parse(text).map_err(|e: ParseError| {
        eprintln!("parse error: {e}");
        eprintln!("  {text}");
        eprintln!("  {}^", " ".repeat(e.offset()));
        ExitCode::from(2)
    })
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    let out = if json {
        serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
    } else {
        text(value)
    };
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Analyze { common, depth, z0 } => {
            let eq = parse_or_report(&common.equation)?;
            let r = report::analyze(&common.equation, &eq, z0, depth);
            emit(common.json, &r, report::analysis_text);
        }
        Command::Classify { common } => {
            let eq = parse_or_report(&common.equation)?;
            let j = report::classify_json(&common.equation, &classify(&eq));
            emit(common.json, &j, report::classify_text);
        }
        Command::Linearize { common } => {
            let eq = parse_or_report(&common.equation)?;
            let j = report::linearize_report(&common.equation, &eq);
            emit(common.json, &j, report::linearize_text);
        }
        Command::Monodromy {
            common,
            center,
            radius,
            seed_state,
            winding,
            tol,
            start_angle,
        } => {
            let eq = parse_or_report(&common.equation)?;
            if seed_state.len() != eq.order() {
                eprintln!(
                    "error: --seed-state needs {} values, got {}",
                    eq.order(),
                    seed_state.len()
                );
                return Err(ExitCode::from(2));
            }
            let init = report::seed_on_circle(center, radius, start_angle, seed_state);
            match monodromy_loop(&eq, &init, center, radius, winding, tol) {
                Ok(r) => {
                    let j = report::monodromy_json(&common.equation, center, radius, winding, &r);
                    emit(common.json, &j, report::monodromy_text);
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(ExitCode::from(2));
                }
            }
        }
        Command::Corpus { directory, json } => {
            if !directory.is_dir() {
                eprintln!("error: {} is not a directory", directory.display());
                return Err(ExitCode::from(2));
            }
            let results = corpus::run_corpus(&directory).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            emit(json, &results, |r| corpus::corpus_text(r));
            if results.iter().any(|r| !r.passed) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
