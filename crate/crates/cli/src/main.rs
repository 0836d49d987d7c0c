//! `deglab`: degeneracy loci, configurations, symmetroids and dimension
//! counts from the command line.

mod commands;
mod demo;
mod error;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{DimKind, Options};
use error::{CliError, CliResult, EXIT_COMPUTATION, EXIT_OK};
use input::{parse_document, read_source, Document};
use report::Format;

/// Environment variable capping the worker threads.
const THREADS_VAR: &str = "DEGLAB_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "deglab",
    version,
    about = "Degeneracy loci of matrix tuples and their configurations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON: a file path, `-` for stdin, or an inline document.
    #[arg(long, global = true)]
    input: Option<String>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Numeric tolerance (command-specific default).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,

    /// Matrix size.
    #[arg(long, global = true)]
    m: Option<usize>,

    /// Number of matrices.
    #[arg(long, global = true)]
    r: Option<usize>,

    /// Parametrization for `dim`.
    #[arg(long, global = true, value_enum)]
    kind: Option<DimKind>,

    /// Output format (json by default; svg for `plot`, text for `demo`).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Degeneracy locus of a tuple or rank-one span.
    Locus,
    /// Quadrilateral or Desargues test of points or a locus report.
    Config,
    /// Symmetric matrices from a labeled quadrilateral set.
    Recipe,
    /// Determinantal form det(Σ u_i A_i) and its pencil.
    Symmetroid,
    /// Node certificates of the symmetroid.
    Nodes,
    /// Jacobian-rank dimension estimate.
    Dim,
    /// Phase retrieval test.
    PrTest,
    /// Fiber system of two plane matrices.
    Fiber,
    /// SVG of a plane configuration or locus.
    Plot,
    /// Rerun the reference examples.
    Demo,
}

impl Command {
    fn needs_input(self) -> bool {
        !matches!(self, Command::Dim | Command::Demo)
    }

    fn default_format(self) -> Format {
        match self {
            Command::Plot => Format::Svg,
            Command::Demo => Format::Text,
            _ => Format::Json,
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::validation(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::computation(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> CliResult<i32> {
    configure_threads()?;
    let doc = match (&cli.input, cli.command.needs_input()) {
        (Some(src), true) => parse_document(&read_source(src)?)?,
        (None, true) => return Err(CliError::validation("--input is required for this command")),
        (Some(_), false) => return Err(CliError::validation("this command takes no --input")),
        (None, false) => Document::default(),
    };
    let opts = Options {
        seed: cli.seed,
        tol: cli.tol,
        trials: cli.trials,
        m: cli.m,
        r: cli.r,
        kind: cli.kind,
    };
    let report = match cli.command {
        Command::Locus => commands::locus(&doc, &opts),
        Command::Config => commands::config(&doc, &opts),
        Command::Recipe => commands::recipe(&doc, &opts),
        Command::Symmetroid => commands::symmetroid(&doc, &opts),
        Command::Nodes => commands::nodes(&doc, &opts),
        Command::Dim => commands::dim(&opts),
        Command::PrTest => commands::pr_test(&doc, &opts),
        Command::Fiber => commands::fiber(&doc, &opts),
        Command::Plot => commands::plot(&doc, &opts),
        Command::Demo => demo::demo(),
    }?;
    let rendered = report.render(cli.format.unwrap_or(cli.command.default_format()))?;
    match &cli.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::computation(format!("writing {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|e| CliError::computation(format!("writing stdout: {e}")))?,
    }
    Ok(if report.ok { EXIT_OK } else { EXIT_COMPUTATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("deglab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
