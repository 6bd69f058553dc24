use super::HardnessError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    L,
    R,
}

/// A deterministic single-tape machine. States `0`, `1`, `2` are the start,
/// accepting and rejecting states; symbol `0` is the blank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMachine {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub delta: BTreeMap<(usize, usize), (usize, usize, Direction)>,
}

pub const START: usize = 0;
pub const ACCEPT: usize = 1;
pub const REJECT: usize = 2;

impl TMachine {
    /// Checks names and that δ is defined exactly on the non-halting states.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        delta: BTreeMap<(usize, usize), (usize, usize, Direction)>,
    ) -> Result<Self, HardnessError> {
        let bad = |message: String| HardnessError::Parse { line: 0, message };
        if states.len() < 3 {
            return Err(bad("need start, accept and reject states".into()));
        }
        if alphabet.is_empty() {
            return Err(bad("empty alphabet".into()));
        }
        for (names, what) in [(&states, "state"), (&alphabet, "symbol")] {
            for (i, s) in names.iter().enumerate() {
                if names[..i].contains(s) {
                    return Err(bad(format!("duplicate {what} {s}")));
                }
            }
        }
        let m = TMachine { states, alphabet, delta };
        for (&(q, a), &(p, b, _)) in &m.delta {
            if q >= m.states.len() || p >= m.states.len() || a >= m.alphabet.len() || b >= m.alphabet.len() {
                return Err(bad("transition index out of range".into()));
            }
            if m.is_halting(q) {
                return Err(bad(format!("transition out of halting state {}", m.states[q])));
            }
        }
        for q in m.running_states() {
            for a in 0..m.alphabet.len() {
                if !m.delta.contains_key(&(q, a)) {
                    return Err(HardnessError::Partial {
                        state: m.states[q].clone(),
                        symbol: m.alphabet[a].clone(),
                    });
                }
            }
        }
        Ok(m)
    }

    pub fn is_halting(&self, q: usize) -> bool {
        q == ACCEPT || q == REJECT
    }

    /// States other than accept and reject, in order.
    pub fn running_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&q| !self.is_halting(q)).collect()
    }

    /// Parses `states q0 qa qr …`, `alphabet _ …` and
    /// `delta q a -> q' b L|R` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, HardnessError> {
        let mut states: Option<Vec<String>> = None;
        let mut alphabet: Option<Vec<String>> = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| HardnessError::Parse { line, message };
            let words: Vec<&str> = content.split_whitespace().collect();
            match words[0] {
                "states" | "alphabet" => {
                    let slot = if words[0] == "states" { &mut states } else { &mut alphabet };
                    if slot.is_some() {
                        return Err(err(format!("duplicate `{}` line", words[0])));
                    }
                    *slot = Some(words[1..].iter().map(|w| w.to_string()).collect());
                }
                "delta" => {
                    if words.len() != 7 || words[3] != "->" {
                        return Err(err("expected `delta q a -> q' b L|R`".into()));
                    }
                    rows.push((line, words[1..].iter().map(|w| w.to_string()).collect::<Vec<_>>()));
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        let states = states.ok_or(HardnessError::Parse {
            line: 0,
            message: "missing `states` line".into(),
        })?;
        let alphabet = alphabet.ok_or(HardnessError::Parse {
            line: 0,
            message: "missing `alphabet` line".into(),
        })?;
        let mut delta = BTreeMap::new();
        for (line, w) in rows {
            let err = |message: String| HardnessError::Parse { line, message };
            let state = |s: &str| {
                states
                    .iter()
                    .position(|x| x == s)
                    .ok_or_else(|| err(format!("unknown state {s}")))
            };
            let symbol = |s: &str| {
                alphabet
                    .iter()
                    .position(|x| x == s)
                    .ok_or_else(|| err(format!("unknown symbol {s}")))
            };
            let dir = match w[5].as_str() {
                "L" => Direction::L,
                "R" => Direction::R,
                d => return Err(err(format!("direction must be L or R, got {d}"))),
            };
            let key = (state(&w[0])?, symbol(&w[1])?);
            if delta.insert(key, (state(&w[3])?, symbol(&w[4])?, dir)).is_some() {
                return Err(err(format!("second transition for {} {}", w[0], w[1])));
            }
        }
        TMachine::new(states, alphabet, delta)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("states {}\nalphabet {}\n", self.states.join(" "), self.alphabet.join(" "));
        for (&(q, a), &(p, b, d)) in &self.delta {
            let _ = writeln!(
                s,
                "delta {} {} -> {} {} {:?}",
                self.states[q], self.alphabet[a], self.states[p], self.alphabet[b], d
            );
        }
        s
    }

    fn micro(extra: &[&str], rows: &[(usize, usize, usize, usize, Direction)]) -> Self {
        let mut states: Vec<String> = ["q0", "qa", "qr"].iter().map(|s| s.to_string()).collect();
        states.extend(extra.iter().map(|s| s.to_string()));
        let alphabet = vec!["_".to_string(), "1".to_string()];
        let delta = rows.iter().map(|&(q, a, p, b, d)| ((q, a), (p, b, d))).collect();
        TMachine::new(states, alphabet, delta).expect("well-formed micro machine")
    }

    /// Writes 1 and accepts.
    pub fn accepter() -> Self {
        Self::micro(&[], &[(0, 0, ACCEPT, 1, Direction::R), (0, 1, ACCEPT, 1, Direction::R)])
    }

    /// Writes 1 and rejects, which restarts the clocked machine.
    pub fn rejecter() -> Self {
        Self::micro(&[], &[(0, 0, REJECT, 1, Direction::R), (0, 1, REJECT, 1, Direction::R)])
    }

    /// Walks right forever and falls off the tape.
    pub fn walker() -> Self {
        Self::micro(&[], &[(0, 0, 0, 1, Direction::R), (0, 1, 0, 1, Direction::R)])
    }

    /// Moves back and forth between two cells until the clock overflows.
    pub fn looper() -> Self {
        Self::micro(
            &["q1"],
            &[
                (0, 0, 3, 0, Direction::R),
                (0, 1, 3, 1, Direction::R),
                (3, 0, 0, 0, Direction::L),
                (3, 1, 0, 1, Direction::L),
            ],
        )
    }
}
