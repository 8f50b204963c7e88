//! `pcgrass` command-line front end.
//!
//! Exit codes: 0 success, 1 valid but inconsistent matrix (`check` only),
//! 2 parse or validation error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pcgrass::io::{Format, Mode};
use pcgrass::{Convention, EmbeddingKind};

#[derive(Debug, Parser)]
#[command(name = "pcgrass", version, about = "Pairwise-comparison matrices in G(2,n): consistency, Plücker geometry, reduction")]
pub struct Cli {
    /// Output format; inferred from --output's extension, else json.
    #[arg(long, global = true, env = "PCGRASS_FORMAT")]
    pub format: Option<Format>,

    /// Absolute tolerance for skew-symmetry validation and consistency.
    #[arg(long, global = true, env = "PCGRASS_TOL", default_value_t = pcgrass::DEFAULT_TOL)]
    pub tol: f64,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix file (.json or .csv).
    pub input: PathBuf,

    /// Interpretation of the entries; overrides the JSON "mode" field.
    #[arg(long)]
    pub mode: Option<Mode>,

    /// Input format when the extension is not .json/.csv.
    #[arg(long)]
    pub input_format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EmbeddingArgs {
    #[arg(long, default_value_t = EmbeddingKind::Planar)]
    pub embedding: EmbeddingKind,

    /// JSON {"n", "vectors"} used with --embedding custom.
    #[arg(long)]
    pub embedding_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Consistency verdict and max |Δ|; exit 1 if inconsistent.
    Check(MatrixInput),
    /// Additive ↔ multiplicative conversion.
    Convert(MatrixInput),
    /// Algebraic and geometric inconsistency indices.
    Indices {
        #[command(flatten)]
        matrix: MatrixInput,
        #[command(flatten)]
        embedding: EmbeddingArgs,
        #[arg(long, default_value_t = Convention::Cyclic)]
        convention: Convention,
    },
    /// All triad deviations in lexicographic order.
    Deviations(MatrixInput),
    /// Pair subspaces v_i ∧ v_j for every pair.
    Embed {
        #[command(flatten)]
        matrix: MatrixInput,
        #[command(flatten)]
        embedding: EmbeddingArgs,
    },
    /// Wedge product of two vectors with its Plücker residuals.
    Wedge {
        /// JSON {"u": [...], "v": [...]}; alternative to --u/--v.
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Option<Vec<f64>>,
    },
    /// Plücker relation residuals of a 2-vector file {"n", "coords"}.
    Plucker { input: PathBuf },
    /// Spectral diagnosis of the coupling matrix M.
    Diagnose {
        /// Matrix file whose size sets n; alternative to --n.
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        #[arg(long, default_value_t = pcgrass::DEFAULT_RANK_TOL)]
        rank_tol: f64,
        /// Also write M as a CSV grid.
        #[arg(long)]
        export_m: Option<PathBuf>,
        #[arg(long)]
        input_format: Option<Format>,
    },
    /// Inconsistency reduction by descent on the M-form.
    Reduce {
        #[command(flatten)]
        matrix: MatrixInput,
        #[arg(long, default_value_t = 0.0)]
        lambda: f64,
        /// Step size; defaults to 1/n.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long, default_value_t = pcgrass::reduction::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Stop once I_alg falls to this value.
        #[arg(long, default_value_t = pcgrass::reduction::DEFAULT_STOP_TOL)]
        stop_tol: f64,
        /// Write the per-step trajectory as JSON lines.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Table of ω(v_i, v_j) against a_ij for ω = dx_1 ∧ dx_2.
    Twoform(MatrixInput),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = commands::emit(&cli, &outcome.text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
