//! `coxmat`: check and construct Coxeter matroids from `.cm` files.

mod commands;
mod document;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Axiom, CliError, DumpFormat, FlavorArg, ParityArg, What};
use report::{Outcome, Report};

#[derive(Debug, Parser)]
#[command(name = "coxmat", version, about = "Symplectic and orthogonal matroid toolkit")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test an axiom system on a collection or ordinary matroid.
    Check {
        #[arg(long, value_enum)]
        axiom: Axiom,
        /// Root system for `--axiom gs`.
        #[arg(long, value_enum, default_value = "c")]
        flavor: FlavorArg,
        file: PathBuf,
    },
    /// Evaluate the six Lagrangian pair conditions.
    Pair {
        /// One `pair` file or two `collection` files.
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the exploded sum of two collections on [n+1].
    Explode {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Split a collection by whether each basis contains i or i*.
    Project {
        file: PathBuf,
        #[arg(long)]
        element: usize,
    },
    /// Swap i and i* in every basis.
    Transpose {
        file: PathBuf,
        #[arg(long)]
        element: usize,
    },
    /// Print the union of a Lagrangian pair.
    Union {
        #[arg(num_args = 1..=2, required = true)]
        files: Vec<PathBuf>,
    },
    /// Decide whether the second ordinary matroid is a quotient of the first.
    Quotient { first: PathBuf, second: PathBuf },
    /// Print the Lagrangian orthogonal matroid of an ordinary matroid.
    Phi { file: PathBuf },
    /// Test the elementary quotient exchange conditions.
    Corollary { first: PathBuf, second: PathBuf },
    /// Print the matroid represented by an isotropic matrix.
    Represent { file: PathBuf },
    /// Extend an isotropic (n-1)-space to its two Lagrangian subspaces.
    Extend { file: PathBuf },
    /// Polytope utilities.
    Gs {
        #[command(subcommand)]
        action: GsAction,
    },
    /// List orderings, admissible sets or matroids.
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "c")]
        flavor: FlavorArg,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
}

#[derive(Debug, Subcommand)]
enum GsAction {
    /// Print the vertices and edges of the polytope.
    Dump {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: DumpFormat,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Pair { .. } => "pair",
            Command::Explode { .. } => "explode",
            Command::Project { .. } => "project",
            Command::Transpose { .. } => "transpose",
            Command::Union { .. } => "union",
            Command::Quotient { .. } => "quotient",
            Command::Phi { .. } => "phi",
            Command::Corollary { .. } => "corollary",
            Command::Represent { .. } => "represent",
            Command::Extend { .. } => "extend",
            Command::Gs { .. } => "gs dump",
            Command::Enumerate { .. } => "enumerate",
        }
    }

    fn run(&self) -> Result<Outcome, CliError> {
        match self {
            Command::Check { axiom, flavor, file } => commands::check(*axiom, *flavor, file),
            Command::Pair { files } => commands::pair(files),
            Command::Explode { files } => commands::explode(files),
            Command::Project { file, element } => commands::project_cmd(file, *element),
            Command::Transpose { file, element } => commands::transpose(file, *element),
            Command::Union { files } => commands::union(files),
            Command::Quotient { first, second } => commands::quotient(first, second),
            Command::Phi { file } => commands::phi(file),
            Command::Corollary { first, second } => commands::corollary(first, second),
            Command::Represent { file } => commands::represent(file),
            Command::Extend { file } => commands::extend(file),
            Command::Gs { action: GsAction::Dump { file, format } } => {
                commands::gs_dump(file, *format)
            }
            Command::Enumerate { what, n, k, flavor, parity } => {
                commands::enumerate(*what, *n, *k, *flavor, *parity)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let name = cli.command.name();
    let outcome = cli.command.run().unwrap_or_else(|e| {
        let status = e.status();
        Outcome::new(status, format!("error: {e}\n"), serde_json::json!({ "error": e.to_string() }))
    });
    // Write errors (a closed pipe, say) are ignored; the exit code still
    // carries the verdict.
    let _ = if cli.json {
        let report = Report::new(name, &outcome);
        let body = serde_json::to_string_pretty(&report).expect("reports serialize");
        writeln!(io::stdout().lock(), "{body}")
    } else if outcome.status.exit_code() >= 2 {
        write!(io::stderr().lock(), "{}", outcome.text)
    } else {
        write!(io::stdout().lock(), "{}", outcome.text)
    };
    ExitCode::from(outcome.status.exit_code() as u8)
}
