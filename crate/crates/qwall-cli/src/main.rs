//! Command-line front end for the qwall toolkit.
//!
//! Every subcommand computes a typed payload; `--json` wraps it in a run
//! record `{tool, version, subcommand, input_digest, duration_ms, payload}`.
//! Identical inputs produce byte-identical payloads. Exit codes: 0 success,
//! 1 domain error (unknown name, bad file, unavailable data), 2 internal
//! invariant violation.

mod commands;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "qwall",
    version,
    about = "Exact classification of projective wallpaper-group symmetries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in wallpaper groups
    ListGroups {
        #[arg(long)]
        json: bool,
    },
    /// Classify the projective phase classes of one group over Z2
    Classify {
        #[arg(long)]
        group: String,
        /// Coefficient group (only z2 is classified by this solver)
        #[arg(long, default_value = "z2")]
        coeff: String,
        /// Include one representative factor system per class
        #[arg(long)]
        representatives: bool,
        #[arg(long)]
        json: bool,
    },
    /// Integral homology from the Borel total complex, plus cohomology on request
    Homology {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Also report cohomology with these coefficients (z2 or u1)
        #[arg(long)]
        coeff: Option<String>,
        /// Print every boundary matrix and its Smith form
        #[arg(long)]
        show_matrices: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print class representatives and evaluate them on element pairs
    FactorSystems {
        #[arg(long)]
        group: String,
        /// Element pair "label:tx,ty label:tx,ty"; repeatable
        #[arg(long = "pair")]
        pairs: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Clifford signature, minimal band count, and optional numerics
    Bands {
        /// Square of time reversal: +1 or -1
        #[arg(long, allow_hyphen_values = true)]
        st: i8,
        /// Square of parity: +1 or -1
        #[arg(long, allow_hyphen_values = true)]
        sp: i8,
        /// Sign bit picked up by parity passing the x half translation
        #[arg(long)]
        qx: u8,
        /// Sign bit picked up by parity passing the y half translation
        #[arg(long)]
        qy: u8,
        /// Compute determinant winding numbers of the translation operators
        #[arg(long)]
        winding: bool,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Check eigenvalue multiplicities of symmetrized random Hamiltonians
        #[arg(long)]
        degeneracy: bool,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Representation to analyze: auto, two-band, or four-band
        #[arg(long, default_value = "auto")]
        rep: String,
        #[arg(long)]
        json: bool,
    },
    /// Check every built-in (or overridden) group and complex file
    Validate {
        #[arg(long)]
        json: bool,
    },
    /// The classification table across all 17 groups, checked against expectations
    Table1 {
        #[arg(long, default_value = "z2")]
        coeff: String,
        #[arg(long)]
        json: bool,
    },
    /// Boundary matrices and Smith forms of one group's total complex
    ExportMatrices {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write the embedded group and complex files to a directory
    ExportData {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub enum AppError {
    Domain(String),
    Internal(String),
}

impl AppError {
    fn domain(msg: impl Into<String>) -> Self {
        AppError::Domain(msg.into())
    }
}

impl From<qwall::group::GroupError> for AppError {
    fn from(e: qwall::group::GroupError) -> Self {
        AppError::Domain(e.to_string())
    }
}

impl From<qwall::homology::HomologyError> for AppError {
    fn from(e: qwall::homology::HomologyError) -> Self {
        match e {
            qwall::homology::HomologyError::Truncated { .. } => AppError::Internal(e.to_string()),
            other => AppError::Domain(other.to_string()),
        }
    }
}

impl From<qwall::clifford::CliffordError> for AppError {
    fn from(e: qwall::clifford::CliffordError) -> Self {
        AppError::Domain(e.to_string())
    }
}

#[derive(serde::Serialize)]
struct RunRecord {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    input_digest: String,
    duration_ms: u128,
    payload: serde_json::Value,
}

/// Digest of the invocation: every argument, plus the bytes of any data-dir
/// override file the command will read. Builtin data is covered by `version`.
fn input_digest(touched: &[(&str, String)]) -> String {
    let mut h = Sha256::new();
    for a in std::env::args().skip(1) {
        h.update(a.as_bytes());
        h.update([0]);
    }
    if let Ok(dir) = std::env::var("QWALL_DATA_DIR") {
        h.update(dir.as_bytes());
        h.update([0]);
        for (kind, name) in touched {
            let path = std::path::Path::new(&dir)
                .join(kind)
                .join(format!("{name}.json"));
            if let Ok(bytes) = std::fs::read(&path) {
                h.update(kind.as_bytes());
                h.update([0]);
                h.update(name.as_bytes());
                h.update([0]);
                h.update(&bytes);
                h.update([0]);
            }
        }
    }
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

struct CommandOutput {
    subcommand: &'static str,
    payload: serde_json::Value,
    text: String,
    touched: Vec<(&'static str, String)>,
    json: bool,
    /// Nonzero when the command ran to completion but its result is a failure
    /// (validate found problems, table drifted); printed before exiting.
    exit_code: i32,
}

fn run(cli: Cli) -> Result<CommandOutput, AppError> {
    match cli.command {
        Command::ListGroups { json } => commands::list_groups(json),
        Command::Classify {
            group,
            coeff,
            representatives,
            json,
        } => commands::classify_cmd(&group, &coeff, representatives, json),
        Command::Homology {
            group,
            max_degree,
            coeff,
            show_matrices,
            json,
        } => commands::homology_cmd(&group, max_degree, coeff.as_deref(), show_matrices, json),
        Command::FactorSystems { group, pairs, json } => {
            commands::factor_systems_cmd(&group, &pairs, json)
        }
        Command::Bands {
            st,
            sp,
            qx,
            qy,
            winding,
            grid,
            degeneracy,
            samples,
            seed,
            rep,
            json,
        } => commands::bands_cmd(commands::BandsArgs {
            st,
            sp,
            qx,
            qy,
            winding,
            grid,
            degeneracy,
            samples,
            seed,
            rep,
            json,
        }),
        Command::Validate { json } => commands::validate_cmd(json),
        Command::Table1 { coeff, json } => commands::table1_cmd(&coeff, json),
        Command::ExportMatrices {
            group,
            max_degree,
            json,
        } => commands::export_matrices_cmd(&group, max_degree, json),
        Command::ExportData { out, json } => commands::export_data_cmd(&out, json),
    }
}

fn main() {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(cli) {
        Ok(out) => {
            if out.json {
                let record = RunRecord {
                    tool: "qwall",
                    version: env!("CARGO_PKG_VERSION"),
                    subcommand: out.subcommand,
                    input_digest: input_digest(&out.touched),
                    duration_ms: start.elapsed().as_millis(),
                    payload: out.payload,
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&record).expect("record serializes")
                );
            } else {
                println!("{}", out.text.trim_end());
            }
            if out.exit_code != 0 {
                std::process::exit(out.exit_code);
            }
        }
        Err(AppError::Domain(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            std::process::exit(2);
        }
    }
}
