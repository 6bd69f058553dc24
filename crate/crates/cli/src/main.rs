//! `solgraph` command-line front end.
//!
//! Exit codes: 0 yes/connected/verified, 1 no/disconnected/falsified,
//! 2 usage, parse or applicability error, 3 cap exceeded, 4 unsatisfiable.

mod commands;
mod failure;

use clap::{Parser, Subcommand, ValueEnum};
use failure::Failure;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "solgraph", version, about = "Connectivity of Boolean solution spaces")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest variable count the brute-force oracle will enumerate.
    #[arg(
        long,
        global = true,
        env = "SOLGRAPH_ORACLE_CAP",
        default_value_t = solgraph::oracle::DEFAULT_CAP,
        value_parser = positive
    )]
    pub oracle_cap: usize,

    /// Write the oracle solution graph in DOT format.
    #[arg(long, global = true, value_name = "FILE")]
    pub dot: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a relation file.
    Classify {
        #[arg(long)]
        relations: PathBuf,
    },
    /// Decide whether the solution graph is connected.
    Conn {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Fall back to the oracle when no polynomial method applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether two solutions are connected.
    Stconn {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, value_name = "BITS")]
        s: String,
        #[arg(long, value_name = "BITS")]
        t: String,
        /// Use the oracle instead of the greedy walk.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact diameter of the solution graph.
    Diameter {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Build faithful expressions of the 3-clauses from a non-tight set.
    Express {
        #[arg(long)]
        relations: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::S3)]
        target: Target,
        /// Check every gadget against the oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Write a formula whose solution graph is a long path.
    GenLongpath {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compile a Turing machine on tapes of length n.
    CompileTm {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Two-step clock instead of the full configuration count.
        #[arg(long)]
        tiny: bool,
        #[arg(long, default_value_t = 2048)]
        max_vars: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Bijunctive,
    Affine,
    #[value(name = "ihsb-")]
    IhsbMinus,
    #[value(name = "ihsb+")]
    IhsbPlus,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    S3,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(answer) => ExitCode::from(u8::from(!answer)),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn arguments_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn method_names() {
        let cli = Cli::try_parse_from(["solgraph", "conn", "--formula", "f", "--method", "ihsb-"]).unwrap();
        assert!(matches!(cli.command, Command::Conn { method: Method::IhsbMinus, .. }));
        assert!(Cli::try_parse_from(["solgraph", "conn", "--formula", "f", "--method", "horn"]).is_err());
        assert_eq!(positive("0"), Err("must be positive".into()));
    }
}
