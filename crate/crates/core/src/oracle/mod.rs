//! Brute-force ground truth over the hypercube.
//!
//! [`enumerate_solutions`] tries all `2^n` assignments. [`enumerate_by_search`]
//! is an exact backtracking enumerator with per-clause propagation for sparse
//! formulas with many variables; both feed a [`SolutionGraph`].

mod search;

pub use search::enumerate_by_search;

use crate::formulas::{Assignment, Formula};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt::Write as _;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 24;
/// Largest graph on which [`SolutionGraph::diameter`] runs all-pairs BFS.
pub const DIAMETER_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} variables exceed the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("more than {limit} solutions")]
    SolutionLimit { limit: usize },
    #[error("{0} is not a solution")]
    NotASolution(String),
    #[error("{solutions} solutions exceed the exact diameter cap of {cap}")]
    DiameterCap { solutions: usize, cap: usize },
    #[error("the formula has no solutions")]
    EmptyGraph,
}

pub fn enumerate_solutions(f: &Formula) -> Result<Vec<Assignment>, OracleError> {
    enumerate_solutions_capped(f, DEFAULT_CAP)
}

/// All satisfying assignments in ascending encoding order.
pub fn enumerate_solutions_capped(f: &Formula, cap: usize) -> Result<Vec<Assignment>, OracleError> {
    let n = f.n();
    if n > cap || n > 40 {
        return Err(OracleError::CapExceeded { n, cap: cap.min(40) });
    }
    let compiled = f.compile();
    let total = 1u64 << n;
    const CHUNK: u64 = 1 << 14;
    let codes: Vec<u64> = if total <= CHUNK {
        (0..total).filter(|&c| compiled.eval(c)).collect()
    } else {
        (0..total / CHUNK)
            .into_par_iter()
            .flat_map_iter(|chunk| {
                let compiled = &compiled;
                (chunk * CHUNK..(chunk + 1) * CHUNK).filter(move |&c| compiled.eval(c))
            })
            .collect()
    };
    Ok(codes.into_iter().map(|c| Assignment::from_code(c, n)).collect())
}

pub fn build_graph(f: &Formula) -> Result<SolutionGraph, OracleError> {
    build_graph_capped(f, DEFAULT_CAP)
}

pub fn build_graph_capped(f: &Formula, cap: usize) -> Result<SolutionGraph, OracleError> {
    Ok(SolutionGraph::from_solutions(f.n(), enumerate_solutions_capped(f, cap)?))
}

/// The subgraph of the hypercube induced by a solution set.
#[derive(Clone, Debug)]
pub struct SolutionGraph {
    n: usize,
    solutions: Vec<Assignment>,
    component: Vec<usize>,
    component_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StConnResult {
    pub connected: bool,
    /// Shortest path from `s` to `t` when connected.
    pub path: Option<Vec<Assignment>>,
}

impl SolutionGraph {
    /// Builds the graph; solutions are sorted and deduplicated.
    pub fn from_solutions(n: usize, mut solutions: Vec<Assignment>) -> Self {
        solutions.sort_unstable();
        solutions.dedup();
        assert!(solutions.iter().all(|s| s.len() == n));
        let mut g = SolutionGraph {
            n,
            solutions,
            component: Vec::new(),
            component_count: 0,
        };
        g.label_components();
        g
    }

    fn label_components(&mut self) {
        const NONE: usize = usize::MAX;
        let mut comp = vec![NONE; self.solutions.len()];
        let mut count = 0;
        for start in 0..self.solutions.len() {
            if comp[start] != NONE {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in self.neighbors(i) {
                    if comp[j] == NONE {
                        comp[j] = count;
                        queue.push_back(j);
                    }
                }
            }
            count += 1;
        }
        self.component = comp;
        self.component_count = count;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solutions(&self) -> &[Assignment] {
        &self.solutions
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn index_of(&self, a: &Assignment) -> Option<usize> {
        self.solutions.binary_search(a).ok()
    }

    pub fn contains(&self, a: &Assignment) -> bool {
        self.index_of(a).is_some()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Component id of solution `i`; ids are ordered by smallest member.
    pub fn component_id(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    /// Solution indices per component.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (i, &c) in self.component.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Indices of solutions at Hamming distance one from solution `i`.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let a = &self.solutions[i];
        (0..self.n).filter_map(move |b| self.index_of(&a.flipped(b)))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// BFS distances from solution `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.solutions.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap();
            for j in self.neighbors(i) {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }

    /// Graph distance between two solutions, `None` if disconnected.
    pub fn distance(&self, s: &Assignment, t: &Assignment) -> Result<Option<u32>, OracleError> {
        let si = self.require(s)?;
        let ti = self.require(t)?;
        Ok(self.distances_from(si)[ti])
    }

    fn require(&self, a: &Assignment) -> Result<usize, OracleError> {
        if a.len() != self.n {
            return Err(OracleError::NotASolution(a.to_string()));
        }
        self.index_of(a)
            .ok_or_else(|| OracleError::NotASolution(a.to_string()))
    }

    /// Shortest-path st-connectivity.
    pub fn st_conn(&self, s: &Assignment, t: &Assignment) -> Result<StConnResult, OracleError> {
        let si = self.require(s)?;
        let ti = self.require(t)?;
        if self.component[si] != self.component[ti] {
            return Ok(StConnResult {
                connected: false,
                path: None,
            });
        }
        let mut parent = vec![usize::MAX; self.solutions.len()];
        parent[si] = si;
        let mut queue = VecDeque::from([si]);
        while let Some(i) = queue.pop_front() {
            if i == ti {
                break;
            }
            for j in self.neighbors(i) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        let mut path = vec![ti];
        while *path.last().unwrap() != si {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        Ok(StConnResult {
            connected: true,
            path: Some(path.into_iter().map(|i| self.solutions[i].clone()).collect()),
        })
    }

    /// Maximum over components of the largest pairwise graph distance.
    pub fn diameter(&self) -> Result<u32, OracleError> {
        if self.solutions.is_empty() {
            return Err(OracleError::EmptyGraph);
        }
        if self.solutions.len() > DIAMETER_CAP {
            return Err(OracleError::DiameterCap {
                solutions: self.solutions.len(),
                cap: DIAMETER_CAP,
            });
        }
        Ok((0..self.solutions.len())
            .into_par_iter()
            .map(|i| self.distances_from(i).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }

    /// Whether every component has diameter at most `bound`.
    ///
    /// One BFS per component settles most cases, since a component's
    /// diameter lies between the eccentricity `e` of any vertex and `2e`.
    /// Only inconclusive components get the all-pairs search.
    pub fn diameter_at_most(&self, bound: u32) -> Result<bool, OracleError> {
        if self.solutions.is_empty() {
            return Err(OracleError::EmptyGraph);
        }
        for comp in self.components() {
            let ecc = |i: usize| self.distances_from(i).into_iter().flatten().max().unwrap_or(0);
            let e = ecc(comp[0]);
            if e > bound {
                return Ok(false);
            }
            if 2 * e <= bound {
                continue;
            }
            if comp.len() > DIAMETER_CAP {
                return Err(OracleError::DiameterCap {
                    solutions: comp.len(),
                    cap: DIAMETER_CAP,
                });
            }
            if comp[1..].par_iter().any(|&i| ecc(i) > bound) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Connected, with every vertex of degree at most two and exactly two
    /// endpoints (or a single vertex).
    pub fn is_simple_path(&self) -> bool {
        if self.solutions.is_empty() || !self.is_connected() {
            return false;
        }
        if self.solutions.len() == 1 {
            return true;
        }
        let mut ends = 0;
        for i in 0..self.solutions.len() {
            match self.degree(i) {
                1 => ends += 1,
                2 => {}
                _ => return false,
            }
        }
        ends == 2
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph solutions {\n");
        for (i, a) in self.solutions.iter().enumerate() {
            writeln!(s, "  s{i} [label=\"{a}\"];").unwrap();
        }
        for i in 0..self.solutions.len() {
            for j in self.neighbors(i).filter(|&j| j > i) {
                writeln!(s, "  s{i} -- s{j};").unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::named::*;
    use crate::relations::Relation;

    fn single(rel: &Relation) -> Formula {
        let mut f = Formula::new(rel.arity());
        f.push(rel, &(0..rel.arity()).collect::<Vec<_>>()).unwrap();
        f
    }

    fn a(s: &str) -> Assignment {
        Assignment::parse(s).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let sols: Vec<String> = enumerate_solutions(&single(&m())).unwrap().iter().map(|a| a.to_string()).collect();
        assert_eq!(sols, vec!["001", "010", "011", "100", "110"]);
        assert_eq!(enumerate_solutions(&Formula::new(2)).unwrap().len(), 4);
        let mut f = Formula::new(1);
        f.push(&or(), &[0, 0]).unwrap();
        assert_eq!(enumerate_solutions(&f).unwrap(), vec![a("1")]);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(
            enumerate_solutions_capped(&Formula::new(5), 4),
            Err(OracleError::CapExceeded { n: 5, cap: 4 })
        );
    }

    #[test]
    fn component_examples() {
        assert_eq!(build_graph(&single(&m())).unwrap().component_count(), 1);
        assert_eq!(build_graph(&single(&one_in_three())).unwrap().component_count(), 3);
        assert_eq!(build_graph(&single(&eq())).unwrap().component_count(), 2);
    }

    #[test]
    fn st_conn_examples() {
        let g = build_graph(&single(&m())).unwrap();
        let r = g.st_conn(&a("100"), &a("001")).unwrap();
        assert!(r.connected);
        assert_eq!(r.path.unwrap().len(), 5);
        let g13 = build_graph(&single(&one_in_three())).unwrap();
        assert!(!g13.st_conn(&a("100"), &a("010")).unwrap().connected);
        assert_eq!(g.st_conn(&a("010"), &a("010")).unwrap().path.unwrap().len(), 1);
        assert_eq!(g.st_conn(&a("000"), &a("010")), Err(OracleError::NotASolution("000".into())));
    }

    #[test]
    fn diameter_and_path_shape() {
        let g = build_graph(&single(&m())).unwrap();
        assert_eq!(g.diameter().unwrap(), 4);
        assert!(g.is_simple_path());
        let cube = build_graph(&Formula::new(4)).unwrap();
        assert_eq!(cube.diameter().unwrap(), 4);
        assert!(!build_graph(&Formula::new(2)).unwrap().is_simple_path());
        let phi2 = single(&imp().permute(&[1, 0], "IMPr"));
        let g2 = build_graph(&phi2).unwrap();
        assert_eq!(g2.diameter().unwrap(), 2);
        assert!(g2.is_simple_path());
    }

    #[test]
    fn bounded_diameter_matches_exact() {
        let g = build_graph(&single(&m())).unwrap();
        assert!(g.diameter_at_most(4).unwrap());
        assert!(!g.diameter_at_most(3).unwrap());
        let cube = build_graph(&Formula::new(5)).unwrap();
        assert!(cube.diameter_at_most(5).unwrap());
        assert!(!cube.diameter_at_most(4).unwrap());
        let g13 = build_graph(&single(&one_in_three())).unwrap();
        assert!(g13.diameter_at_most(0).unwrap());
    }

    #[test]
    fn large_enumeration_is_ordered() {
        let mut f = Formula::new(16);
        for i in 0..15 {
            f.push(&nand(), &[i, i + 1]).unwrap();
        }
        let sols = enumerate_solutions(&f).unwrap();
        assert!(sols.windows(2).all(|w| w[0] < w[1]));
        // independent sets of a 16-path: Fibonacci(18)
        assert_eq!(sols.len(), 2584);
    }

    #[test]
    fn dot_output_lists_edges() {
        let dot = build_graph(&single(&m())).unwrap().to_dot();
        assert_eq!(dot.matches(" -- ").count(), 4);
    }
}
