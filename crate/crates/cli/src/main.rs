//! `selattice` command-line front end.
//!
//! Exit codes: 0 success, 1 failed check, 2 usage or input error, 3 data
//! coverage error (keywords absent, alignment gaps).

mod commands;
mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use selattice::CompositionConvention;

pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Coverage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Coverage(_) => 3,
        }
    }
}

impl From<selattice::Error> for CliError {
    fn from(e: selattice::Error) -> Self {
        match e {
            selattice::Error::AlignmentGap(_) => CliError::Coverage(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(
    name = "selattice",
    version,
    about = "Selective-eraser conditionals and topic lattices"
)]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tokenize a text and write its document JSON.
    Ingest {
        /// Raw text; defaults to `inputs.text` from the config.
        path: Option<PathBuf>,
        /// Document JSON destination; defaults to `<output_dir>/<stem>.doc.json`.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        language: Option<String>,
    },
    /// Evaluate one conditional between two erasers.
    Conditional {
        /// Raw text or document JSON with tokens.
        doc: PathBuf,
        /// Antecedent eraser as `term,width`.
        #[arg(long)]
        ante: String,
        /// Consequent eraser as `term,width`.
        #[arg(long)]
        cons: String,
        #[arg(long)]
        topic_width: Option<usize>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        convention: Option<CompositionConvention>,
    },
    /// Scan keyword pairs and write the table, lattice, anomalies and resolved graphs.
    Lattice {
        /// Raw text or document JSON; defaults to `inputs.text`.
        doc: Option<PathBuf>,
        /// Comma-separated keywords overriding `topic.keywords`.
        #[arg(long, value_delimiter = ',')]
        keywords: Vec<String>,
        #[arg(long)]
        mu: Option<f64>,
        /// Output file prefix inside the output directory; defaults to the input stem.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        sequential: bool,
    },
    /// Compare two resolved lattices under a keyword alignment.
    Compare {
        lattice1: PathBuf,
        lattice2: PathBuf,
        /// Alignment file, one `first second` pair per line.
        #[arg(long)]
        alignment: PathBuf,
        /// Diff JSON destination; defaults to `<output_dir>/compare.json`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Source texts of both lattices; runs the random-keyword null model.
        #[arg(long, num_args = 2, value_names = ["TEXT1", "TEXT2"])]
        baseline: Option<Vec<PathBuf>>,
    },
    /// Run the order-theoretic reference checks on the polarisation lattice.
    Qcheck,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Ingest { path, output, language } => commands::ingest(&cfg, path, output, language),
        Command::Conditional {
            doc,
            ante,
            cons,
            topic_width,
            mu,
            convention,
        } => commands::conditional(&cfg, &doc, &ante, &cons, topic_width, mu, convention),
        Command::Lattice {
            doc,
            keywords,
            mu,
            name,
            sequential,
        } => commands::lattice(&cfg, doc, keywords, mu, name, sequential),
        Command::Compare {
            lattice1,
            lattice2,
            alignment,
            output,
            baseline,
        } => commands::compare(&cfg, &lattice1, &lattice2, &alignment, output, baseline),
        Command::Qcheck => commands::qcheck(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
