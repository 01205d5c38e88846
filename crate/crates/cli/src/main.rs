//! `teamkit`: parse, evaluate and check formulas of team-based
//! intuitionistic logic.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2
//! on a usage or input error.

mod commands;
mod input;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "teamkit", version, about = "Team semantics for intuitionistic logic with two disjunctions")]
pub struct Cli {
    /// Largest model accepted, in worlds. Defaults depend on the command.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct FormulaArg {
    /// Formula text, e.g. "p \/ ~p" (`\/` local, `\\/` global disjunction).
    #[arg(long, short)]
    pub formula: String,
}

#[derive(Args, Debug)]
pub struct GeneralSource {
    /// General model file (a model file with an optional "join" table).
    #[arg(long, conflicts_with = "builtin")]
    pub model: Option<PathBuf>,
    /// A builtin general model, e.g. lattice_m5.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print it back with its shape.
    Parse(FormulaArg),
    /// Decide whether a team of a Kripke model satisfies a formula.
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// Binary literal (0b011) or world list (0,1).
        #[arg(long)]
        team: String,
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Decide whether a team of a general model satisfies a formula.
    EvalGeneral {
        #[command(flatten)]
        source: GeneralSource,
        #[arg(long)]
        team: String,
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Print the disjunctive normal form over the local disjunction.
    Dnf {
        #[command(flatten)]
        formula: FormulaArg,
        /// Also check equivalence on all models up to the cap (default 3).
        #[arg(long)]
        check: bool,
    },
    /// Build a truncation of the universal model.
    Universal {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Write a Graphviz rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print de Jongh formulas of universal-model nodes and check the theorem.
    Dejongh {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Only this node.
        #[arg(long)]
        node: Option<usize>,
    },
    /// Compare refutation of the Jankov formula of one frame with the
    /// p-morphic image condition in another.
    Jankov {
        /// Rooted frame whose formula is built (model file, valuation ignored).
        #[arg(long)]
        frame: PathBuf,
        /// Frame tested against it.
        #[arg(long = "in")]
        target: PathBuf,
    },
    /// Validate a Kripke model file: order laws and persistence.
    FrameCheck {
        #[arg(long)]
        model: PathBuf,
        /// Write a Graphviz rendering to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Validate the frame conditions of a general model file.
    GeneralFrameCheck {
        #[command(flatten)]
        source: GeneralSource,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide distributivity of a join table and look for M5 or N5.
    Distributive {
        #[command(flatten)]
        source: GeneralSource,
    },
    /// Reproduce the built-in counterexamples step by step.
    Counterexamples,
    /// Translate a formula into the modal language.
    Translate(FormulaArg),
    /// Check that the translations preserve truth on a model.
    PreserveCheck {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Write the full powerset model as Graphviz to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Recognize axiom instances and check their validity.
    AxiomsCheck(FormulaArg),
    /// Check a derivation file.
    DeriveCheck {
        path: PathBuf,
    },
    /// Run the acceptance checks.
    Suite {
        /// Only these criteria (repeatable).
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
        /// Report elapsed times (output then varies between runs).
        #[arg(long)]
        timings: bool,
    },
}

/// How a command ended.
pub enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((out, status)) => {
            print!("{out}");
            match status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
