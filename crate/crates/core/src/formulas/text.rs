use super::{Arg, Formula, FormulaError};
use crate::relations::{io, parse_relations};
use std::fmt::Write as _;
use std::path::Path;

/// Parses the `.csp` format. `use` lines resolve relative to the working
/// directory.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    parse_with_base(text, Path::new("."))
}

/// Reads a `.csp` file; `use` lines resolve relative to its directory.
pub fn parse_formula_file(path: &Path) -> Result<Formula, FormulaError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormulaError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_with_base(&text, path.parent().unwrap_or(Path::new(".")))
}

fn parse_with_base(text: &str, base: &Path) -> Result<Formula, FormulaError> {
    let mut formula: Option<Formula> = None;
    let mut pending = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| FormulaError::Parse { line, message };
        let mut words = content.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "vars" => {
                if formula.is_some() {
                    return Err(err("duplicate `vars` line".into()));
                }
                let n: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| err("expected `vars <n>`".into()))?;
                let mut f = Formula::new(n);
                for r in pending.drain(..) {
                    f.add_relation(r).map_err(|e| err(e.to_string()))?;
                }
                formula = Some(f);
            }
            "use" => {
                let file = words.next().ok_or_else(|| err("expected `use <file>`".into()))?;
                let path = base.join(file);
                let rels_text = std::fs::read_to_string(&path).map_err(|e| FormulaError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                let rels = parse_relations(&rels_text).map_err(|e| err(format!("{}: {e}", path.display())))?;
                for r in rels {
                    match formula.as_mut() {
                        Some(f) => {
                            f.add_relation(r).map_err(|e| err(e.to_string()))?;
                        }
                        None => pending.push(r),
                    }
                }
            }
            "relation" => {
                let r = io::parse_relation_line(content).map_err(|e| err(e.to_string()))?;
                match formula.as_mut() {
                    Some(f) => {
                        f.add_relation(r).map_err(|e| err(e.to_string()))?;
                    }
                    None => pending.push(r),
                }
            }
            "clause" => {
                let f = formula
                    .as_mut()
                    .ok_or_else(|| err("`vars` must precede clauses".into()))?;
                let name = words.next().ok_or_else(|| err("missing relation name".into()))?;
                let rel = f.relation_index(name).ok_or_else(|| FormulaError::UnknownRelation {
                    line,
                    name: name.to_string(),
                })?;
                let mut args = Vec::new();
                for w in words {
                    args.push(match w {
                        "0" => Arg::Const(false),
                        "1" => Arg::Const(true),
                        _ => {
                            let k: usize = w
                                .strip_prefix('x')
                                .and_then(|d| d.parse().ok())
                                .filter(|&k| k >= 1)
                                .ok_or_else(|| err(format!("bad argument `{w}`")))?;
                            Arg::Var(k - 1)
                        }
                    });
                }
                f.add_clause(rel, args).map_err(|e| match e {
                    FormulaError::VarOutOfRange { .. } => err(e.to_string()),
                    other => other,
                })?;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    formula.ok_or(FormulaError::Parse {
        line: 0,
        message: "missing `vars <n>` line".into(),
    })
}

pub fn serialize_formula(f: &Formula) -> String {
    let mut s = format!("vars {}\n", f.n());
    for r in f.relations() {
        s.push_str(&io::relation_line(r));
        s.push('\n');
    }
    for c in f.clauses() {
        s.push_str("clause ");
        s.push_str(f.relation(c.relation).name());
        for a in &c.args {
            match *a {
                Arg::Var(v) => write!(s, " x{}", v + 1).unwrap(),
                Arg::Const(b) => write!(s, " {}", u8::from(b)).unwrap(),
            }
        }
        s.push('\n');
    }
    s
}
