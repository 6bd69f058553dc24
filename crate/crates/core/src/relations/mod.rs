//! Finite Boolean relations and their closure-property classification.
//!
//! A relation of arity `k` is stored as a membership bit vector over the
//! `2^k` tuples. Tuple `(a_1, ..., a_k)` is encoded as the integer whose most
//! significant bit is `a_1`, so `"100"` is index 4 for arity 3.

mod classify;
mod closure;
pub(crate) mod io;

pub use classify::{
    classify_set, ClassificationReport, Complexity, ConnMethod, DiameterBound, PredictedComplexity,
    RelationFlags, SchaeferClass, TightClass, Verdict,
};
pub use closure::{closed_under, closure_witness, ClosureOp, ClosureWitness};
pub use io::{parse_relations, serialize_relations};

use serde::Serialize;
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// Largest arity accepted by default.
pub const DEFAULT_ARITY_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("relation `{name}` has arity {arity}, above the cap of {cap}")]
    ArityTooLarge { name: String, arity: usize, cap: usize },
    #[error("relation `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("relation `{0}` has no tuples")]
    Empty(String),
    #[error("tuple `{tuple}` does not fit relation `{name}` of arity {arity}")]
    BadTuple { name: String, tuple: String, arity: usize },
    #[error("substitution leaves no tuple")]
    EmptyResult,
    #[error("substitution leaves no free position")]
    NoFreePosition,
    #[error("position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("projection onto an empty position set")]
    EmptyProjection,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate relation name `{0}`")]
    DuplicateName(String),
}

/// A non-empty Boolean relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    name: String,
    arity: usize,
    bits: Vec<u64>,
    members: Vec<u32>,
}

/// How one coordinate of a relation is treated by [`Relation::substitute`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Binding {
    /// The coordinate stays a free position of its own.
    Free,
    /// The coordinate is fixed to a constant.
    Const(bool),
    /// The coordinate is bound to a named variable; repeated ids are identified.
    Var(usize),
}

impl Relation {
    /// Builds a relation from tuple indices. Duplicates are ignored.
    pub fn from_indices(
        name: impl Into<String>,
        arity: usize,
        indices: impl IntoIterator<Item = u32>,
    ) -> Result<Self, RelationError> {
        let name = name.into();
        if arity == 0 {
            return Err(RelationError::ZeroArity(name));
        }
        if arity > DEFAULT_ARITY_CAP {
            return Err(RelationError::ArityTooLarge {
                name,
                arity,
                cap: DEFAULT_ARITY_CAP,
            });
        }
        let size = 1usize << arity;
        let mut bits = vec![0u64; size.div_ceil(64)];
        for idx in indices {
            if idx as usize >= size {
                return Err(RelationError::BadTuple {
                    name,
                    tuple: idx.to_string(),
                    arity,
                });
            }
            bits[idx as usize / 64] |= 1 << (idx % 64);
        }
        let members: Vec<u32> = (0..size as u32)
            .filter(|&i| bits[i as usize / 64] >> (i % 64) & 1 == 1)
            .collect();
        if members.is_empty() {
            return Err(RelationError::Empty(name));
        }
        Ok(Relation {
            name,
            arity,
            bits,
            members,
        })
    }

    /// Builds a relation from binary tuple strings such as `"101"`.
    pub fn from_tuples<S: AsRef<str>>(
        name: impl Into<String>,
        arity: usize,
        tuples: &[S],
    ) -> Result<Self, RelationError> {
        let name = name.into();
        let mut indices = Vec::with_capacity(tuples.len());
        for t in tuples {
            let t = t.as_ref();
            indices.push(parse_tuple(t, arity).ok_or_else(|| RelationError::BadTuple {
                name: name.clone(),
                tuple: t.to_string(),
                arity,
            })?);
        }
        Relation::from_indices(name, arity, indices)
    }

    /// The relation `{0,1}^k`.
    pub fn full(name: impl Into<String>, arity: usize) -> Result<Self, RelationError> {
        Relation::from_indices(name, arity, 0..(1u32 << arity.min(31)))
    }

    /// The `k`-clause whose first `negated` literals are negated (`D_i`).
    pub fn clause(name: impl Into<String>, arity: usize, negated: usize) -> Result<Self, RelationError> {
        assert!(negated <= arity);
        // The single falsifying tuple has 1 on negated positions, 0 elsewhere.
        let falsifier = if negated == 0 {
            0
        } else {
            ((1u32 << negated) - 1) << (arity - negated)
        };
        Relation::from_indices(
            name,
            arity,
            (0..(1u32 << arity)).filter(|&t| t != falsifier),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Member tuple indices in ascending order.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: relations are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, tuple: u32) -> bool {
        (tuple as usize) < (1usize << self.arity) && self.bits[tuple as usize / 64] >> (tuple % 64) & 1 == 1
    }

    /// Same tuples, ignoring names.
    pub fn same_tuples(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.bits == other.bits
    }

    pub fn renamed(&self, name: impl Into<String>) -> Relation {
        Relation {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Value of coordinate `pos` (0-based) in a tuple of this arity.
    #[inline]
    pub fn coord(&self, tuple: u32, pos: usize) -> bool {
        coord(tuple, pos, self.arity)
    }

    /// Formats a tuple index as a binary string, coordinate 1 leftmost.
    pub fn format_tuple(&self, tuple: u32) -> String {
        format_tuple(tuple, self.arity)
    }

    /// Relation obtained by negating the coordinates set in `mask`
    /// (mask uses the tuple encoding, so bit `k-1` is coordinate 1).
    pub fn negate_coords(&self, mask: u32, name: impl Into<String>) -> Relation {
        Relation::from_indices(name, self.arity, self.members.iter().map(|&m| m ^ mask))
            .expect("negation preserves non-emptiness")
    }

    /// Relation with coordinates reordered: output coordinate `p` is input
    /// coordinate `order[p]`.
    pub fn permute(&self, order: &[usize], name: impl Into<String>) -> Relation {
        assert_eq!(order.len(), self.arity);
        let k = self.arity;
        Relation::from_indices(
            name,
            k,
            self.members.iter().map(|&m| {
                order
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (p, &src)| acc | (u32::from(coord(m, src, k)) << (k - 1 - p)))
            }),
        )
        .expect("permutation preserves non-emptiness")
    }

    /// Fixes constants and identifies coordinates.
    ///
    /// `bindings` has one entry per coordinate (missing trailing entries are
    /// [`Binding::Free`]). The result has one coordinate per free position and
    /// per distinct variable id, in order of first occurrence.
    pub fn substitute(&self, bindings: &[Binding]) -> Result<Relation, RelationError> {
        self.substitute_with_layout(bindings).map(|(r, _)| r)
    }

    /// Like [`Relation::substitute`], also returning for each output
    /// coordinate the first input position that feeds it.
    pub fn substitute_with_layout(
        &self,
        bindings: &[Binding],
    ) -> Result<(Relation, Vec<usize>), RelationError> {
        let k = self.arity;
        if bindings.len() > k {
            return Err(RelationError::PositionOutOfRange {
                position: bindings.len() - 1,
                arity: k,
            });
        }
        let binding = |p: usize| bindings.get(p).copied().unwrap_or(Binding::Free);
        // slot[p] = output coordinate of position p, if not constant
        let mut slot: Vec<Option<usize>> = vec![None; k];
        let mut firsts: Vec<usize> = Vec::new();
        let mut var_slot: Vec<(usize, usize)> = Vec::new();
        for (p, sl) in slot.iter_mut().enumerate() {
            match binding(p) {
                Binding::Const(_) => {}
                Binding::Free => {
                    *sl = Some(firsts.len());
                    firsts.push(p);
                }
                Binding::Var(id) => {
                    if let Some(&(_, s)) = var_slot.iter().find(|(v, _)| *v == id) {
                        *sl = Some(s);
                    } else {
                        var_slot.push((id, firsts.len()));
                        *sl = Some(firsts.len());
                        firsts.push(p);
                    }
                }
            }
        }
        let out_arity = firsts.len();
        let mut out = Vec::new();
        'members: for &m in &self.members {
            let mut t = 0u32;
            for (p, &sl) in slot.iter().enumerate() {
                let bit = coord(m, p, k);
                match (binding(p), sl) {
                    (Binding::Const(c), _) => {
                        if bit != c {
                            continue 'members;
                        }
                    }
                    (_, Some(s)) => {
                        if firsts[s] == p {
                            t |= u32::from(bit) << (out_arity - 1 - s);
                        } else if coord(m, firsts[s], k) != bit {
                            continue 'members;
                        }
                    }
                    _ => unreachable!(),
                }
            }
            out.push(t);
        }
        if out.is_empty() {
            return Err(RelationError::EmptyResult);
        }
        if out_arity == 0 {
            return Err(RelationError::NoFreePosition);
        }
        let name = format!("{}{}", self.name, describe_bindings(bindings));
        Ok((Relation::from_indices(name, out_arity, out)?, firsts))
    }

    /// Existential projection onto `keep` (0-based positions, in the given order).
    pub fn project(&self, keep: &[usize]) -> Result<Relation, RelationError> {
        if keep.is_empty() {
            return Err(RelationError::EmptyProjection);
        }
        if let Some(&p) = keep.iter().find(|&&p| p >= self.arity) {
            return Err(RelationError::PositionOutOfRange {
                position: p,
                arity: self.arity,
            });
        }
        let k = self.arity;
        let m = keep.len();
        let tuples = self.members.iter().map(|&t| {
            keep.iter()
                .enumerate()
                .fold(0u32, |acc, (q, &p)| acc | (u32::from(coord(t, p, k)) << (m - 1 - q)))
        });
        let name = format!(
            "{}|{}",
            self.name,
            keep.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
        );
        Relation::from_indices(name, m, tuples)
    }

    /// Connected components of the hypercube subgraph induced by the members,
    /// ordered by smallest member.
    pub fn components(&self) -> Vec<Relation> {
        self.component_sets()
            .into_iter()
            .enumerate()
            .map(|(i, comp)| {
                Relation::from_indices(format!("{}#{}", self.name, i), self.arity, comp)
                    .expect("components are non-empty")
            })
            .collect()
    }

    /// Member sets of the connected components, each sorted ascending, the
    /// list ordered by smallest member.
    pub fn component_sets(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.members.len()];
        let index_of = |t: u32| self.members.binary_search(&t).ok();
        let mut comps = Vec::new();
        for start in 0..self.members.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![self.members[start]];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let t = self.members[i];
                for b in 0..self.arity {
                    if let Some(j) = index_of(t ^ (1 << b)) {
                        if !seen[j] {
                            seen[j] = true;
                            comp.push(self.members[j]);
                            queue.push_back(j);
                        }
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Shortest-path distances in `G(R)` between all member pairs; `None`
    /// for pairs in different components. Indexed by member position.
    pub fn graph_distances(&self) -> Vec<Vec<Option<u32>>> {
        let n = self.members.len();
        let index_of = |t: u32| self.members.binary_search(&t).ok();
        (0..n)
            .map(|src| {
                let mut dist = vec![None; n];
                dist[src] = Some(0);
                let mut queue = VecDeque::from([src]);
                while let Some(i) = queue.pop_front() {
                    let d = dist[i].unwrap();
                    for b in 0..self.arity {
                        if let Some(j) = index_of(self.members[i] ^ (1 << b)) {
                            if dist[j].is_none() {
                                dist[j] = Some(d + 1);
                                queue.push_back(j);
                            }
                        }
                    }
                }
                dist
            })
            .collect()
    }

    pub fn schaefer_flags(&self) -> SchaeferFlags {
        SchaeferFlags {
            bijunctive: closed_under(self, ClosureOp::Maj3),
            horn: closed_under(self, ClosureOp::And2),
            dual_horn: closed_under(self, ClosureOp::Or2),
            affine: closed_under(self, ClosureOp::Xor3),
            ihsb_minus: closed_under(self, ClosureOp::IhsbMinus3),
            ihsb_plus: closed_under(self, ClosureOp::IhsbPlus3),
        }
    }

    pub fn componentwise_flags(&self) -> ComponentwiseFlags {
        let comps = self.components();
        let all = |op| comps.iter().all(|c| closed_under(c, op));
        ComponentwiseFlags {
            bijunctive: all(ClosureOp::Maj3),
            ihsb_minus: all(ClosureOp::IhsbMinus3),
            ihsb_plus: all(ClosureOp::IhsbPlus3),
        }
    }

    /// Sweeps all two-position restrictions looking for `OR` and `NAND`.
    pub fn or_nand_free(&self) -> FreenessReport {
        let k = self.arity;
        let mut or_witness = None;
        let mut nand_witness = None;
        if k >= 2 {
            'sweep: for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let rest: Vec<usize> = (0..k).filter(|&p| p != i && p != j).collect();
                    for c in 0..(1u32 << rest.len()) {
                        let mut bindings = vec![Binding::Const(false); k];
                        bindings[i] = Binding::Free;
                        bindings[j] = Binding::Free;
                        for (q, &p) in rest.iter().enumerate() {
                            bindings[p] = Binding::Const(coord(c, q, rest.len()));
                        }
                        let Ok((sub, _)) = self.substitute_with_layout(&bindings) else {
                            continue;
                        };
                        // output coordinates follow position order; orient as (i, j)
                        let sub = if i < j { sub } else { sub.permute(&[1, 0], sub.name().to_string()) };
                        let witness = || SubstitutionWitness {
                            free: (i, j),
                            constants: rest
                                .iter()
                                .enumerate()
                                .map(|(q, &p)| (p, coord(c, q, rest.len())))
                                .collect(),
                        };
                        if or_witness.is_none() && sub.members() == [0b01, 0b10, 0b11] {
                            or_witness = Some(witness());
                        }
                        if nand_witness.is_none() && sub.members() == [0b00, 0b01, 0b10] {
                            nand_witness = Some(witness());
                        }
                        if or_witness.is_some() && nand_witness.is_some() {
                            break 'sweep;
                        }
                    }
                }
            }
        }
        FreenessReport {
            or_free: or_witness.is_none(),
            nand_free: nand_witness.is_none(),
            or_witness,
            nand_witness,
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}{{", self.name, self.arity)?;
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.format_tuple(m))?;
        }
        write!(f, "}}")
    }
}

/// The six closure tests of a single relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SchaeferFlags {
    pub bijunctive: bool,
    pub horn: bool,
    pub dual_horn: bool,
    pub affine: bool,
    pub ihsb_minus: bool,
    pub ihsb_plus: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentwiseFlags {
    pub bijunctive: bool,
    pub ihsb_minus: bool,
    pub ihsb_plus: bool,
}

/// Which two positions stay free and which constants fix the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionWitness {
    pub free: (usize, usize),
    pub constants: Vec<(usize, bool)>,
}

impl SubstitutionWitness {
    /// Bindings for the witnessed substitution, the free positions mapped to
    /// variable ids `first` and `second`.
    pub fn bindings(&self, arity: usize, first: usize, second: usize) -> Vec<Binding> {
        let mut b = vec![Binding::Free; arity];
        for &(p, c) in &self.constants {
            b[p] = Binding::Const(c);
        }
        b[self.free.0] = Binding::Var(first);
        b[self.free.1] = Binding::Var(second);
        b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub or_free: bool,
    pub nand_free: bool,
    pub or_witness: Option<SubstitutionWitness>,
    pub nand_witness: Option<SubstitutionWitness>,
}

#[inline]
pub(crate) fn coord(tuple: u32, pos: usize, arity: usize) -> bool {
    tuple >> (arity - 1 - pos) & 1 == 1
}

pub fn format_tuple(tuple: u32, arity: usize) -> String {
    (0..arity).map(|p| if coord(tuple, p, arity) { '1' } else { '0' }).collect()
}

pub fn parse_tuple(s: &str, arity: usize) -> Option<u32> {
    if s.len() != arity {
        return None;
    }
    s.chars().try_fold(0u32, |acc, ch| match ch {
        '0' => Some(acc << 1),
        '1' => Some(acc << 1 | 1),
        _ => None,
    })
}

fn describe_bindings(bindings: &[Binding]) -> String {
    if bindings.iter().all(|b| *b == Binding::Free) {
        return String::new();
    }
    let parts: Vec<String> = bindings
        .iter()
        .enumerate()
        .filter_map(|(p, b)| match b {
            Binding::Free => None,
            Binding::Const(c) => Some(format!("{}={}", p + 1, u8::from(*c))),
            Binding::Var(v) => Some(format!("{}=v{}", p + 1, v)),
        })
        .collect();
    format!("[{}]", parts.join(","))
}

/// Named relations used throughout the crate and its tests.
pub mod named {
    use super::Relation;

    pub fn or() -> Relation {
        Relation::from_tuples("OR", 2, &["01", "10", "11"]).unwrap()
    }

    pub fn nand() -> Relation {
        Relation::from_tuples("NAND", 2, &["00", "01", "10"]).unwrap()
    }

    /// `(x1 ∨ ¬x2)`.
    pub fn imp() -> Relation {
        Relation::from_tuples("IMP", 2, &["00", "10", "11"]).unwrap()
    }

    pub fn eq() -> Relation {
        Relation::from_tuples("EQ", 2, &["00", "11"]).unwrap()
    }

    pub fn nae() -> Relation {
        Relation::from_tuples("NAE", 3, &["001", "010", "011", "100", "101", "110"]).unwrap()
    }

    pub fn one_in_three() -> Relation {
        Relation::from_tuples("R13", 3, &["100", "010", "001"]).unwrap()
    }

    /// The length-4 path `{100, 110, 010, 011, 001}`.
    pub fn m() -> Relation {
        Relation::from_tuples("M", 3, &["100", "110", "010", "011", "001"]).unwrap()
    }

    /// `D_i`: the 3-clause with the first `i` literals negated.
    pub fn d(i: usize) -> Relation {
        Relation::clause(format!("D{i}"), 3, i).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn encoding_is_msb_first() {
        let r = Relation::from_tuples("t", 3, &["100"]).unwrap();
        assert_eq!(r.members(), &[4]);
        assert!(r.coord(4, 0));
        assert_eq!(r.format_tuple(4), "100");
    }

    #[test]
    fn empty_and_oversized_relations_rejected() {
        assert_eq!(
            Relation::from_indices("e", 2, []),
            Err(RelationError::Empty("e".into()))
        );
        assert!(matches!(
            Relation::from_indices("big", 17, [0]),
            Err(RelationError::ArityTooLarge { .. })
        ));
        assert!(Relation::from_tuples("bad", 2, &["102"]).is_err());
    }

    #[test]
    fn clause_relations() {
        assert_eq!(d(0).len(), 7);
        assert!(!d(0).contains(0b000));
        assert!(!d(1).contains(0b100));
        assert!(!d(2).contains(0b110));
        assert!(!d(3).contains(0b111));
    }

    #[test]
    fn substitute_examples() {
        let or_rel = nae().substitute(&[Binding::Free, Binding::Free, Binding::Const(false)]).unwrap();
        assert!(or_rel.same_tuples(&or()));
        let r = one_in_three().substitute(&[Binding::Const(true)]).unwrap();
        assert_eq!(r.arity(), 2);
        assert_eq!(r.members(), &[0b00]);
        assert_eq!(
            or().substitute(&[Binding::Const(false), Binding::Const(false)]),
            Err(RelationError::EmptyResult)
        );
    }

    #[test]
    fn substitute_identifies_variables() {
        // NAE(x1, x1, x2) = {01, 10}
        let r = nae()
            .substitute(&[Binding::Var(7), Binding::Var(7), Binding::Var(3)])
            .unwrap();
        assert_eq!(r.members(), &[0b01, 0b10]);
    }

    #[test]
    fn substitute_needs_a_free_position() {
        assert_eq!(
            or().substitute(&[Binding::Const(true), Binding::Const(true)]),
            Err(RelationError::NoFreePosition)
        );
    }

    #[test]
    fn project_examples() {
        let p = m().project(&[0, 2]).unwrap();
        assert_eq!(p.members(), &[0b00, 0b01, 0b10]);
        assert!(m().project(&[0, 1, 2]).unwrap().same_tuples(&m()));
        assert_eq!(eq().project(&[0]).unwrap().members(), &[0, 1]);
        assert_eq!(m().project(&[]), Err(RelationError::EmptyProjection));
    }

    #[test]
    fn components_examples() {
        assert_eq!(one_in_three().components().len(), 3);
        let comps = one_in_three().component_sets();
        assert_eq!(comps, vec![vec![0b001], vec![0b010], vec![0b100]]);
        assert_eq!(m().components().len(), 1);
        assert_eq!(Relation::full("F", 3).unwrap().components().len(), 1);
    }

    #[test]
    fn schaefer_flag_examples() {
        let f = or().schaefer_flags();
        assert!(f.bijunctive && !f.horn && f.dual_horn);
        let e = eq().schaefer_flags();
        assert!(e.bijunctive && e.horn && e.dual_horn && e.affine && e.ihsb_minus && e.ihsb_plus);
        // maj(100, 010, 001) = 000 is missing from M
        let mf = m().schaefer_flags();
        assert!(!mf.bijunctive);
        assert!(!mf.horn);
    }

    #[test]
    fn componentwise_examples() {
        assert!(one_in_three().componentwise_flags().bijunctive);
        assert!(!nae().componentwise_flags().bijunctive);
        assert!(!m().componentwise_flags().bijunctive);
        assert!(eq().componentwise_flags().bijunctive);
    }

    #[test]
    fn freeness_examples() {
        let d0 = d(0).or_nand_free();
        assert!(!d0.or_free);
        assert!(d0.nand_free);
        assert_eq!(
            d0.or_witness,
            Some(SubstitutionWitness { free: (0, 1), constants: vec![(2, false)] })
        );
        // Every two-position restriction of R13 is {01,10} or {00}.
        let r13 = one_in_three().or_nand_free();
        assert!(r13.or_free && r13.nand_free);
        let e = eq().or_nand_free();
        assert!(e.or_free && e.nand_free);
        let n = nae().or_nand_free();
        assert_eq!(n.or_witness.unwrap().constants, vec![(2, false)]);
        assert_eq!(n.nand_witness.unwrap().constants, vec![(2, true)]);
    }

    #[test]
    fn permute_and_negate() {
        let r = m().permute(&[2, 1, 0], "Mrev");
        assert!(r.same_tuples(&m()));
        let neg = m().negate_coords(0b100, "M!1");
        assert_eq!(
            neg.members().iter().map(|&t| neg.format_tuple(t)).collect::<Vec<_>>(),
            vec!["000", "010", "101", "110", "111"]
        );
    }
}
