//! Command-line front end for `pointedq`.
//!
//! Every subcommand builds one JSON report; human output is a rendering of
//! the same report.

pub mod commands;
pub mod input;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use pointedq::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for invalid input, 2 for resource limits, 3 for internal consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                Error::ResourceLimit(_) => 2,
                Error::CompletionDiverged { .. } | Error::Internal(_) => 3,
                _ => 1,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "pointedq", version, about = "Diagonal braidings, Nichols algebras and the Hopf algebras U(D)")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for Nichols dimension computations.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Allow every component type of rank at most 3 when building U(D).
    #[arg(long, global = true)]
    pub extended_types: bool,
    /// Maximum number of terms in intermediate expressions.
    #[arg(long, global = true, env = "POINTEDQ_TERM_LIMIT", value_parser = clap::value_parser!(u64).range(1..))]
    pub term_limit: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a braiding: components, Cartan type, DJ presentation, GK verdict.
    Analyze { file: PathBuf },
    /// Positive roots and the root vector numeration of a Cartan matrix.
    Roots { file: PathBuf },
    /// Graded dimensions of the Nichols algebra of a braiding.
    Nichols {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Check every condition on a generic datum.
    Validate { file: PathBuf },
    /// PBW normal form of an expression in U(D).
    Nf {
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Comultiplication of an expression in U(D).
    Delta {
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Root vectors, straightening rules and PBW monomials up to a filtration degree.
    Pbw {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Isomorphisms between two generic data.
    Isom {
        first: PathBuf,
        second: PathBuf,
        /// Free lattice coordinates are searched in [-bound, bound].
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Gelfand-Kirillov dimensions of the Nichols algebra and of U(D).
    Gk { file: PathBuf },
}

/// A finished report and the exit code it carries.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub human: String,
    pub exit_code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => input::to_canonical_string(&self.json),
            Format::Human => {
                let mut s = self.human.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

impl Cli {
    pub fn output_format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

/// Runs a parsed command line, returning the rendered output and exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let format = cli.output_format();
    match commands::execute(cli) {
        Ok(report) => (report.render(format), report.exit_code),
        Err(e) => {
            let code = e.exit_code();
            let out = match format {
                Format::Json => input::to_canonical_string(&serde_json::json!({"error": e.to_string(), "exit_code": code})),
                Format::Human => format!("error: {}\n", e),
            };
            (out, code)
        }
    }
}
