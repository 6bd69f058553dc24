//! Hard instances: formulas whose solution graph is an exponentially long
//! path, and the compilation of a space-bounded Turing machine.

mod compile;
mod longpath;
mod machine;

pub use compile::{compile_tm, decode_configuration, CompileOptions, CompiledMachine, Configuration, Layout, Transition};
pub use longpath::{gen_long_path, long_path_clause_count, long_path_ends};
pub use machine::{Direction, TMachine};

use crate::expressibility::ExpressError;
use crate::formulas::FormulaError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("n must be even and at least 2, got {0}")]
    OddN(usize),
    #[error("n must be at least 1")]
    EmptyTape,
    #[error("{vars} variables exceed the cap of {cap}")]
    TooLarge { vars: usize, cap: usize },
    #[error("machine line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no transition for state {state} on symbol {symbol}")]
    Partial { state: String, symbol: String },
    #[error("not a solution of the compiled formula")]
    NotASolution,
    #[error("not a configuration: {0}")]
    NotAConfiguration(String),
    #[error(transparent)]
    Express(#[from] ExpressError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}
