use super::machine::{Direction, TMachine, ACCEPT, REJECT, START};
use super::HardnessError;
use crate::expressibility::{push_reduced_clause, Split};
use crate::formulas::{serialize_formula, Arg, Assignment, Formula};
use num_bigint::BigUint;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Replaces the counter range `n·|Q|·|Γ|^n`.
    pub clock_range: Option<u64>,
    pub max_vars: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            clock_range: None,
            max_vars: 2048,
        }
    }
}

impl CompileOptions {
    /// A two-value clock: room for one machine step before overflow.
    pub fn tiny() -> Self {
        CompileOptions {
            clock_range: Some(2),
            ..Self::default()
        }
    }
}

/// One step of the clocked machine. When `var` is 1 the `on` variables are
/// switched on in order, then the `off` variables are switched off in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub var: usize,
    pub label: String,
    pub off: Vec<usize>,
    pub on: Vec<usize>,
    /// Stay 1 while `var` is 1.
    pub pins: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub tape_len: usize,
    pub clock_len: usize,
    pub symbols: Vec<String>,
    /// States of the clocked machine.
    pub states: Vec<String>,
    /// `x[i][a]`: cell `i` holds symbol `a`.
    pub x: Vec<Vec<usize>>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    /// `xc[j][b]`: clock cell `j` holds bit `b`.
    pub xc: Vec<[usize; 2]>,
    pub yc: Vec<usize>,
    pub transitions: Vec<Transition>,
    pub witnesses: Vec<usize>,
}

impl Layout {
    /// Number of configurations of the clocked machine. The halting state
    /// occurs only in the erased configuration.
    pub fn configuration_count(&self) -> BigUint {
        BigUint::from(self.states.len() - 1)
            * BigUint::from(self.tape_len)
            * BigUint::from(self.symbols.len()).pow(self.tape_len as u32)
            * BigUint::from(self.clock_len)
            * (BigUint::from(1u8) << self.clock_len)
            + 1u8
    }

    fn var_names(&self) -> Vec<(usize, String)> {
        let mut v = Vec::new();
        for (i, row) in self.x.iter().enumerate() {
            for (a, &var) in row.iter().enumerate() {
                v.push((var, format!("x({i},{})", self.symbols[a])));
            }
        }
        v.extend(self.y.iter().enumerate().map(|(i, &var)| (var, format!("y({i})"))));
        v.extend(self.z.iter().enumerate().map(|(q, &var)| (var, format!("z({})", self.states[q]))));
        for (j, row) in self.xc.iter().enumerate() {
            for (b, &var) in row.iter().enumerate() {
                v.push((var, format!("xc({j},{b})")));
            }
        }
        v.extend(self.yc.iter().enumerate().map(|(j, &var)| (var, format!("yc({j})"))));
        v.extend(self.transitions.iter().map(|t| (t.var, format!("t[{}]", t.label))));
        v.sort();
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub state: String,
    pub head: usize,
    pub tape: Vec<String>,
    pub clock_head: usize,
    /// Least significant bit first.
    pub clock: Vec<bool>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clock: String = self.clock.iter().rev().map(|&b| if b { '1' } else { '0' }).collect();
        write!(
            f,
            "{} head={} tape=[{}] clock_head={} clock={}",
            self.state,
            self.head,
            self.tape.join(" "),
            self.clock_head,
            clock
        )
    }
}

#[derive(Clone, Debug)]
pub struct CompiledMachine {
    pub formula: Formula,
    /// The initial configuration.
    pub s: Assignment,
    /// The standard accepting configuration.
    pub t: Assignment,
    pub layout: Layout,
    splits: Vec<Split>,
}

impl CompiledMachine {
    pub fn encode(&self, c: &Configuration) -> Result<Assignment, HardnessError> {
        let l = &self.layout;
        let bad = |m: &str| HardnessError::NotAConfiguration(m.to_string());
        if c.tape.len() != l.tape_len || c.clock.len() != l.clock_len {
            return Err(bad("tape length"));
        }
        if c.head >= l.tape_len || c.clock_head >= l.clock_len {
            return Err(bad("head position"));
        }
        let q = l.states.iter().position(|s| *s == c.state).ok_or_else(|| bad("unknown state"))?;
        let mut a = Assignment::zeros(self.formula.n());
        for (i, sym) in c.tape.iter().enumerate() {
            let s = l.symbols.iter().position(|x| x == sym).ok_or_else(|| bad("unknown symbol"))?;
            a.set(l.x[i][s], true);
        }
        for (j, &b) in c.clock.iter().enumerate() {
            a.set(l.xc[j][b as usize], true);
        }
        a.set(l.y[c.head], true);
        a.set(l.yc[c.clock_head], true);
        a.set(l.z[q], true);
        for s in &self.splits {
            s.fill(&mut a);
        }
        Ok(a)
    }

    /// The formula in `.csp` form, preceded by comments naming every
    /// variable and giving `s` and `t`.
    pub fn to_csp(&self) -> String {
        let mut out = String::new();
        let l = &self.layout;
        let _ = writeln!(out, "# tape {} clock {}", l.tape_len, l.clock_len);
        for (var, name) in l.var_names() {
            let _ = writeln!(out, "# x{} = {name}", var + 1);
        }
        let _ = writeln!(out, "# witnesses {}", l.witnesses.len());
        let _ = writeln!(out, "# s {}", self.s);
        let _ = writeln!(out, "# t {}", self.t);
        out.push_str(&serialize_formula(&self.formula));
        out
    }
}

/// Reads the configuration off a solution with every transition variable 0.
pub fn decode_configuration(c: &CompiledMachine, a: &Assignment) -> Result<Configuration, HardnessError> {
    if a.len() != c.formula.n() || !c.formula.evaluate(a) {
        return Err(HardnessError::NotASolution);
    }
    let l = &c.layout;
    if let Some(t) = l.transitions.iter().find(|t| a.get(t.var)) {
        return Err(HardnessError::NotAConfiguration(format!("transition {} is active", t.label)));
    }
    let one = |vars: &[usize]| vars.iter().position(|&v| a.get(v)).expect("exactly one holds");
    Ok(Configuration {
        state: l.states[one(&l.z)].clone(),
        head: one(&l.y),
        tape: l.x.iter().map(|row| l.symbols[one(row)].clone()).collect(),
        clock_head: one(&l.yc),
        clock: l.xc.iter().map(|row| a.get(row[1])).collect(),
    })
}

const PHASES: [&str; 6] = ["main-left", "main-right", "main-back", "clock-left", "clock-right", "clock-back"];
const ACC: usize = 0;
const REJ: usize = 1;

/// States of the clocked machine: `inc(q)`, `ret(q)`, `run(q)` per running
/// state `q`, then the erase sweeps after accepting and after rejecting,
/// then the halting state.
struct States {
    names: Vec<String>,
    inc: Vec<usize>,
    ret: Vec<usize>,
    run: Vec<usize>,
    sweep: [[usize; 6]; 2],
    halt: usize,
}

impl States {
    fn new(m: &TMachine) -> Self {
        let mut names = Vec::new();
        let mut add = |s: String| {
            names.push(s);
            names.len() - 1
        };
        let (mut inc, mut ret, mut run) = (vec![usize::MAX; m.states.len()], vec![usize::MAX; m.states.len()], vec![usize::MAX; m.states.len()]);
        for q in m.running_states() {
            inc[q] = add(format!("inc({})", m.states[q]));
            ret[q] = add(format!("ret({})", m.states[q]));
            run[q] = add(format!("run({})", m.states[q]));
        }
        let mut sweep = [[0; 6]; 2];
        for (o, prefix) in ["acc", "rej"].iter().enumerate() {
            for (p, phase) in PHASES.iter().enumerate() {
                sweep[o][p] = add(format!("{prefix}-{phase}"));
            }
        }
        let halt = add("acc-halt".to_string());
        States {
            names,
            inc,
            ret,
            run,
            sweep,
            halt,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tape {
    Main,
    Clock,
}

struct Builder {
    f: Formula,
    layout: Layout,
    relax: HashMap<(usize, usize), Vec<usize>>,
    max_vars: usize,
    splits: Vec<Split>,
}

impl Builder {
    fn var(&mut self) -> Result<usize, HardnessError> {
        if self.f.n() >= self.max_vars {
            return Err(HardnessError::TooLarge {
                vars: self.f.n() + 1,
                cap: self.max_vars,
            });
        }
        Ok(self.f.add_var())
    }

    fn vars(&mut self, k: usize) -> Result<Vec<usize>, HardnessError> {
        (0..k).map(|_| self.var()).collect()
    }

    fn cell(&self, tape: Tape, pos: usize, sym: usize) -> usize {
        match tape {
            Tape::Main => self.layout.x[pos][sym],
            Tape::Clock => self.layout.xc[pos][sym],
        }
    }

    fn head(&self, tape: Tape, pos: usize) -> usize {
        match tape {
            Tape::Main => self.layout.y[pos],
            Tape::Clock => self.layout.yc[pos],
        }
    }

    /// `(pos, sym, state) → (pos', sym', state')` on one tape.
    fn step(
        &mut self,
        tape: Tape,
        from: (usize, usize, usize),
        to: (usize, usize, usize),
        extra_pins: &[usize],
    ) -> Result<(), HardnessError> {
        let reads = [self.cell(tape, from.0, from.1), self.head(tape, from.0), self.layout.z[from.2]];
        let writes = [self.cell(tape, from.0, to.1), self.head(tape, to.0), self.layout.z[to.2]];
        let var = self.var()?;
        let (mut off, mut on, mut pins) = (Vec::new(), Vec::new(), Vec::new());
        for (r, w) in reads.into_iter().zip(writes) {
            if r == w {
                pins.push(r);
            } else {
                off.push(r);
                on.push(w);
                self.relax.entry((r.min(w), r.max(w))).or_default().push(var);
            }
        }
        assert!(!off.is_empty(), "every step changes the configuration");
        pins.extend_from_slice(extra_pins);
        let l = &self.layout;
        let label = match tape {
            Tape::Main => format!("{}@{} {}", l.states[from.2], from.0, l.symbols[from.1]),
            Tape::Clock => format!("{}@c{} {}", l.states[from.2], from.0, from.1),
        };
        self.layout.transitions.push(Transition {
            var,
            label,
            off,
            on,
            pins,
        });
        Ok(())
    }

    fn clause(&mut self, lits: &[(usize, bool)]) -> Result<(), HardnessError> {
        let lits: Vec<(Arg, bool)> = lits.iter().map(|&(v, neg)| (Arg::Var(v), neg)).collect();
        if let Some(split) = push_reduced_clause(&mut self.f, &lits)? {
            if self.f.n() > self.max_vars {
                return Err(HardnessError::TooLarge {
                    vars: self.f.n(),
                    cap: self.max_vars,
                });
            }
            self.layout.witnesses.extend_from_slice(&split.witnesses);
            self.splits.push(split);
        }
        Ok(())
    }

    /// At least one of `group`, and no two unless a transition between
    /// them is active.
    fn exactly_one(&mut self, group: &[usize]) -> Result<(), HardnessError> {
        let pos: Vec<(usize, bool)> = group.iter().map(|&v| (v, false)).collect();
        self.clause(&pos)?;
        for (k, &u) in group.iter().enumerate() {
            for &v in &group[k + 1..] {
                let mut lits = vec![(u, true), (v, true)];
                if let Some(ts) = self.relax.get(&(u.min(v), u.max(v))) {
                    lits.extend(ts.iter().map(|&t| (t, false)));
                }
                self.clause(&lits)?;
            }
        }
        Ok(())
    }
}

fn clock_len(m: &TMachine, n: usize, opts: &CompileOptions) -> usize {
    let range = match opts.clock_range {
        Some(r) => BigUint::from(r.max(1)),
        None => BigUint::from(n) * BigUint::from(m.states.len()) * BigUint::from(m.alphabet.len()).pow(n as u32),
    };
    // ceil(log2 range) + 1
    ((range - 1u8).bits() + 1) as usize
}

/// Compiles `m` on an `n`-cell tape into a formula whose solution graph is
/// connected iff the clocked machine reaches its standard accepting
/// configuration from the initial one, i.e. iff `m` accepts the empty input
/// within the clock range.
pub fn compile_tm(m: &TMachine, n: usize, opts: &CompileOptions) -> Result<CompiledMachine, HardnessError> {
    if n == 0 {
        return Err(HardnessError::EmptyTape);
    }
    let nc = clock_len(m, n, opts);
    let st = States::new(m);
    let g = m.alphabet.len();
    let running = m.running_states().len();
    let estimate = n * (g + 1) + st.names.len() + 3 * nc + n * g * (running + 6) + 2 * nc * (2 * running + 6) + n * g;
    if estimate > opts.max_vars {
        return Err(HardnessError::TooLarge {
            vars: estimate,
            cap: opts.max_vars,
        });
    }

    let mut b = Builder {
        f: Formula::new(0),
        layout: Layout {
            tape_len: n,
            clock_len: nc,
            symbols: m.alphabet.clone(),
            states: st.names.clone(),
            x: Vec::new(),
            y: Vec::new(),
            z: Vec::new(),
            xc: Vec::new(),
            yc: Vec::new(),
            transitions: Vec::new(),
            witnesses: Vec::new(),
        },
        relax: HashMap::new(),
        max_vars: opts.max_vars,
        splits: Vec::new(),
    };
    for _ in 0..n {
        let row = b.vars(g)?;
        b.layout.x.push(row);
    }
    b.layout.y = b.vars(n)?;
    b.layout.z = b.vars(st.names.len())?;
    for _ in 0..nc {
        let row = b.vars(2)?;
        b.layout.xc.push([row[0], row[1]]);
    }
    b.layout.yc = b.vars(nc)?;

    let (main, clock) = (Tape::Main, Tape::Clock);
    let rej_start = st.sweep[REJ][0];
    for q in m.running_states() {
        let (inc, ret, run) = (st.inc[q], st.ret[q], st.run[q]);
        for j in 0..nc {
            for bit in 0..2 {
                if j == nc - 1 {
                    b.step(clock, (j, bit, inc), (j, bit, rej_start), &[])?;
                } else if bit == 1 {
                    b.step(clock, (j, 1, inc), (j + 1, 0, inc), &[])?;
                } else {
                    b.step(clock, (j, 0, inc), (j.saturating_sub(1), 1, ret), &[])?;
                }
                if j > 0 {
                    b.step(clock, (j, bit, ret), (j - 1, bit, ret), &[])?;
                } else {
                    b.step(clock, (0, bit, ret), (0, bit, run), &[])?;
                }
            }
        }
        for i in 0..n {
            for a in 0..g {
                let (p, w, d) = m.delta[&(q, a)];
                let target = match d {
                    Direction::L => i.checked_sub(1),
                    Direction::R => (i + 1 < n).then_some(i + 1),
                };
                let next = match p {
                    ACCEPT => st.sweep[ACC][0],
                    REJECT => rej_start,
                    p => st.inc[p],
                };
                match target {
                    Some(i2) => b.step(main, (i, a, run), (i2, w, next), &[])?,
                    None if m.is_halting(p) => b.step(main, (i, a, run), (i, w, next), &[])?,
                    None => b.step(main, (i, a, run), (i, a, rej_start), &[])?,
                }
            }
        }
    }

    let blank = 0;
    for o in [ACC, REJ] {
        let [ml, mr, mb, cl, cr, cb] = st.sweep[o];
        for i in 0..n {
            for a in 0..g {
                if i > 0 {
                    b.step(main, (i, a, ml), (i - 1, a, ml), &[])?;
                    b.step(main, (i, a, mb), (i - 1, a, mb), &[])?;
                } else {
                    b.step(main, (0, a, ml), (0, a, mr), &[])?;
                    b.step(main, (0, a, mb), (0, a, cl), &[])?;
                }
                if i + 1 < n {
                    b.step(main, (i, a, mr), (i + 1, blank, mr), &[])?;
                } else {
                    b.step(main, (i, a, mr), (i, blank, mb), &[])?;
                }
            }
        }
        for j in 0..nc {
            for bit in 0..2 {
                if j > 0 {
                    b.step(clock, (j, bit, cl), (j - 1, bit, cl), &[])?;
                    b.step(clock, (j, bit, cb), (j - 1, bit, cb), &[])?;
                } else {
                    b.step(clock, (0, bit, cl), (0, bit, cr), &[])?;
                }
                if j + 1 < nc {
                    b.step(clock, (j, bit, cr), (j + 1, 0, cr), &[])?;
                } else {
                    b.step(clock, (j, bit, cr), (j, 0, cb), &[])?;
                }
            }
        }
        if o == REJ {
            for bit in 0..2 {
                b.step(clock, (0, bit, cb), (0, bit, st.inc[START]), &[])?;
            }
        } else {
            // The halting state is entered only from the erased configuration;
            // anything left over sends the sweep round again.
            b.step(clock, (0, 1, cb), (0, 1, ml), &[])?;
            let l = &b.layout;
            let mut clean = vec![l.y[0]];
            clean.extend(l.x.iter().map(|row| row[blank]));
            clean.extend(l.xc[1..].iter().map(|row| row[0]));
            let mut dirty: Vec<usize> = l.y[1..].to_vec();
            dirty.extend(l.x.iter().flat_map(|row| row[1..].to_vec()));
            dirty.extend(l.xc[1..].iter().map(|row| row[1]));
            b.step(clock, (0, 0, cb), (0, 0, st.halt), &clean)?;
            for d in dirty {
                b.step(clock, (0, 0, cb), (0, 0, ml), &[d])?;
            }
        }
    }

    let l = b.layout.clone();
    for row in &l.x {
        b.exactly_one(row)?;
    }
    for row in &l.xc {
        b.exactly_one(row)?;
    }
    b.exactly_one(&l.y)?;
    b.exactly_one(&l.yc)?;
    b.exactly_one(&l.z)?;
    for (k, t) in l.transitions.iter().enumerate() {
        for u in &l.transitions[k + 1..] {
            b.clause(&[(t.var, true), (u.var, true)])?;
        }
    }
    for t in &l.transitions {
        let k = t.off.len();
        for j in 0..k - 1 {
            b.clause(&[(t.var, true), (t.on[j], false), (t.on[j + 1], true)])?;
            b.clause(&[(t.var, true), (t.off[j + 1], false), (t.off[j], true)])?;
        }
        b.clause(&[(t.var, true), (t.off[0], false), (t.on[k - 1], false)])?;
        for &p in &t.pins {
            b.clause(&[(t.var, true), (p, false)])?;
        }
    }
    let halt = l.z[st.halt];
    let mut standard = vec![l.y[0], l.yc[0]];
    standard.extend(l.x.iter().map(|row| row[blank]));
    standard.extend(l.xc.iter().map(|row| row[0]));
    for v in standard {
        b.clause(&[(halt, true), (v, false)])?;
    }

    let mut compiled = CompiledMachine {
        formula: b.f,
        s: Assignment::zeros(0),
        t: Assignment::zeros(0),
        layout: b.layout,
        splits: b.splits,
    };
    let erased = |state: usize| Configuration {
        state: st.names[state].clone(),
        head: 0,
        tape: vec![m.alphabet[blank].clone(); n],
        clock_head: 0,
        clock: vec![false; nc],
    };
    compiled.s = compiled.encode(&erased(st.inc[START]))?;
    compiled.t = compiled.encode(&erased(st.halt))?;
    Ok(compiled)
}
