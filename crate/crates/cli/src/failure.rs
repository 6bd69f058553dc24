use solgraph::expressibility::ExpressError;
use solgraph::hardness::HardnessError;
use solgraph::tight::TightError;
use solgraph::{FormulaError, OracleError, RelationError};

pub const USAGE: u8 = 2;
pub const CAP: u8 = 3;
pub const UNSAT: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn unsat() -> Self {
        Failure {
            code: UNSAT,
            message: "the formula is unsatisfiable".into(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::CapExceeded { .. } | OracleError::SolutionLimit { .. } | OracleError::DiameterCap { .. } => CAP,
            OracleError::EmptyGraph => UNSAT,
            OracleError::NotASolution(_) => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<TightError> for Failure {
    fn from(e: TightError) -> Self {
        match e {
            TightError::Unsatisfiable => Failure::unsat(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<ExpressError> for Failure {
    fn from(e: ExpressError) -> Self {
        match e {
            ExpressError::Oracle(o) => o.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<HardnessError> for Failure {
    fn from(e: HardnessError) -> Self {
        match e {
            HardnessError::TooLarge { .. } => Failure {
                code: CAP,
                message: e.to_string(),
            },
            HardnessError::Express(x) => x.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<RelationError> for Failure {
    fn from(e: RelationError) -> Self {
        Failure::usage(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_the_error_kind() {
        assert_eq!(Failure::from(OracleError::CapExceeded { n: 30, cap: 24 }).code, CAP);
        assert_eq!(Failure::from(OracleError::EmptyGraph).code, UNSAT);
        assert_eq!(Failure::from(TightError::Unsatisfiable).code, UNSAT);
        assert_eq!(Failure::from(ExpressError::NotNonTight).code, USAGE);
        assert_eq!(
            Failure::from(ExpressError::Oracle(OracleError::CapExceeded { n: 30, cap: 24 })).code,
            CAP
        );
        assert_eq!(Failure::from(HardnessError::TooLarge { vars: 9, cap: 1 }).code, CAP);
        assert_eq!(Failure::from(HardnessError::OddN(3)).code, USAGE);
    }
}
