//! `gmf`: command-line access to graded matrix factorizations, modules over the
//! hypersurface ring and exceptional collections. Reads a JSON problem file,
//! writes one JSON document (or CSV for tables) to standard output.

mod commands;
mod error;
mod problem;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "gmf", version, about = "Graded matrix factorizations and singularity categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Problem file (JSON).
    pub problem: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Overrides the seed recorded in the problem file.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Clone)]
pub struct ShiftWindow {
    #[arg(long, default_value_t = -6, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Args, Clone)]
pub struct DegreeWindow {
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
    pub hi: i64,
}

#[derive(Args, Clone)]
pub struct Objects {
    /// Comma-separated factorization names, in collection order.
    #[arg(long, value_delimiter = ',')]
    pub mfs: Vec<String>,
    /// Use the twists `k(0), k(-1), ...` of the residue field instead of named objects.
    #[arg(long, conflicts_with_all = ["mfs", "dual"])]
    pub residue_sequence: bool,
    /// Use the dual collection of a finite-dimensional `A`.
    #[arg(long, conflicts_with = "mfs")]
    pub dual: bool,
    /// Truncation index of the dual collection (default `-a`).
    #[arg(long, allow_hyphen_values = true)]
    pub truncation: Option<i64>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check every module and factorization in the problem file.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Cokernel module of a factorization.
    Cok {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mf: String,
        #[command(flatten)]
        window: DegreeWindow,
    },
    /// Factorization representing a module in the singularity category.
    Stabilize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
    },
    /// Morphisms `X -> Y[shift](twist)` up to homotopy.
    Hom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
        /// Include an explicit basis.
        #[arg(long)]
        basis: bool,
    },
    /// `dim Hom(X, Y[p])` over a window of shifts, with a vanishing certificate.
    HomTable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        window: ShiftWindow,
        #[arg(long)]
        no_certify: bool,
    },
    /// Module maps modulo those factoring through a projective.
    StableHom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// `Hom(M, N[shift])` in the graded singularity category.
    DsingHom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Minimal graded free resolution.
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Hilbert function over a degree window.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[command(flatten)]
        window: DegreeWindow,
    },
    /// `dim Ext^i_A(M, A)_e`.
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        i_max: usize,
        #[command(flatten)]
        window: DegreeWindow,
    },
    /// Tail `M_{>=p}`.
    Truncate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Exceptionality of a single object.
    Exceptional {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mf: String,
        #[command(flatten)]
        window: ShiftWindow,
    },
    /// Exceptional-collection and strongness checks.
    Collection {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        objects: Objects,
        #[arg(long)]
        strong: bool,
        #[command(flatten)]
        window: ShiftWindow,
    },
    /// Endomorphism algebra of a collection.
    QAlgebra {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        objects: Objects,
    },
    /// Gorenstein parameter of `A` (or of `B` without a potential).
    Gorenstein {
        #[command(flatten)]
        common: Common,
    },
    /// Fano / Calabi-Yau / general type classification.
    Trichotomy {
        #[command(flatten)]
        common: Common,
        /// For `a < 0`, verify the residue-field exceptional sequence.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        window: ShiftWindow,
    },
    /// Compare Hom dimensions of factorizations and of their cokernels.
    Fullfaith {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Stabilize the cokernel and search for an isomorphism with the original.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mf: String,
    },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("GMF_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::Input(format!("GMF_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::Input("GMF_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| commands::run(&cli.command));
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            let doc = serde_json::json!({
                "version": env!("CARGO_PKG_VERSION"),
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            eprintln!("gmf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
