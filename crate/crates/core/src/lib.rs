//! Solution-space structure of Boolean constraint formulas.
//!
//! Classifies relation sets into Schaefer, tight and non-tight families,
//! decides (st-)connectivity of solution graphs with polynomial algorithms
//! where they exist, checks everything against a brute-force hypercube
//! oracle, and builds the hardness gadgets: faithful expressions of all
//! 3-clauses, exponentially long solution paths, and Turing-machine
//! reductions.

pub mod expressibility;
pub mod formulas;
pub mod graph;
pub mod hardness;
pub mod oracle;
pub mod random;
pub mod relations;
pub mod tight;

pub use formulas::{Arg, Assignment, Clause, Formula, FormulaError};
pub use oracle::{OracleError, SolutionGraph};
pub use relations::{
    classify_set, ClassificationReport, ClosureOp, ConnMethod, Relation, RelationError,
    TightClass, Verdict,
};
