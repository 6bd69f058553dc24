use super::Relation;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Coordinatewise operations whose closure defines the tractable classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    Maj3,
    And2,
    Or2,
    Xor3,
    IhsbMinus3,
    IhsbPlus3,
}

impl ClosureOp {
    pub const ALL: [ClosureOp; 6] = [
        ClosureOp::Maj3,
        ClosureOp::And2,
        ClosureOp::Or2,
        ClosureOp::Xor3,
        ClosureOp::IhsbMinus3,
        ClosureOp::IhsbPlus3,
    ];

    pub fn arity(self) -> usize {
        match self {
            ClosureOp::And2 | ClosureOp::Or2 => 2,
            _ => 3,
        }
    }

    /// Applies the operation bitwise to three encoded tuples (`c` ignored for
    /// binary operations).
    #[inline]
    pub fn apply(self, a: u32, b: u32, c: u32) -> u32 {
        match self {
            ClosureOp::Maj3 => (a & b) | (b & c) | (a & c),
            ClosureOp::And2 => a & b,
            ClosureOp::Or2 => a | b,
            ClosureOp::Xor3 => a ^ b ^ c,
            ClosureOp::IhsbMinus3 => a & (b | c),
            ClosureOp::IhsbPlus3 => a | (b & c),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            ClosureOp::Maj3 => "maj3",
            ClosureOp::And2 => "and2",
            ClosureOp::Or2 => "or2",
            ClosureOp::Xor3 => "xor3",
            ClosureOp::IhsbMinus3 => "ihsb_minus3",
            ClosureOp::IhsbPlus3 => "ihsb_plus3",
        }
    }
}

impl fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ClosureOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClosureOp::ALL
            .into_iter()
            .find(|op| op.id() == s)
            .ok_or_else(|| format!("unknown closure operation `{s}`"))
    }
}

/// Tuples of the relation whose image escapes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub op: ClosureOp,
    pub inputs: Vec<u32>,
    pub image: u32,
}

pub fn closed_under(rel: &Relation, op: ClosureOp) -> bool {
    closure_witness(rel, op).is_none()
}

/// First failing combination in lexicographic order over member indices.
pub fn closure_witness(rel: &Relation, op: ClosureOp) -> Option<ClosureWitness> {
    let m = rel.members();
    if op.arity() == 2 {
        for &a in m {
            for &b in m {
                let image = op.apply(a, b, 0);
                if !rel.contains(image) {
                    return Some(ClosureWitness { op, inputs: vec![a, b], image });
                }
            }
        }
        return None;
    }
    for &a in m {
        for &b in m {
            for &c in m {
                let image = op.apply(a, b, c);
                if !rel.contains(image) {
                    return Some(ClosureWitness { op, inputs: vec![a, b, c], image });
                }
            }
        }
    }
    None
}
