use super::{Relation, RelationError};
use std::collections::HashSet;

/// Parses `relation <name> <arity> : <tuple> ...` lines.
pub fn parse_relations(text: &str) -> Result<Vec<Relation>, RelationError> {
    let mut out = Vec::new();
    let mut names = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let rel = parse_relation_line(content).map_err(|e| match e {
            RelationError::Parse { message, .. } => RelationError::Parse { line, message },
            other => RelationError::Parse { line, message: other.to_string() },
        })?;
        if !names.insert(rel.name().to_string()) {
            return Err(RelationError::DuplicateName(rel.name().to_string()));
        }
        out.push(rel);
    }
    Ok(out)
}

/// Parses one line without the trailing comment.
pub(crate) fn parse_relation_line(content: &str) -> Result<Relation, RelationError> {
    let parse_err = |message: String| RelationError::Parse { line: 0, message };
    let (head, tuples) = content
        .split_once(':')
        .ok_or_else(|| parse_err("missing `:` after arity".into()))?;
    let mut words = head.split_whitespace();
    if words.next() != Some("relation") {
        return Err(parse_err("expected `relation <name> <arity> : <tuples>`".into()));
    }
    let name = words
        .next()
        .ok_or_else(|| parse_err("missing relation name".into()))?;
    let arity: usize = words
        .next()
        .ok_or_else(|| parse_err("missing arity".into()))?
        .parse()
        .map_err(|_| parse_err("arity must be a positive integer".into()))?;
    if let Some(extra) = words.next() {
        return Err(parse_err(format!("unexpected token `{extra}` before `:`")));
    }
    let tuples: Vec<&str> = tuples.split_whitespace().collect();
    Relation::from_tuples(name, arity, &tuples)
}

pub fn serialize_relations(rels: &[Relation]) -> String {
    rels.iter().map(|r| relation_line(r) + "\n").collect()
}

pub(crate) fn relation_line(r: &Relation) -> String {
    let mut s = format!("relation {} {} :", r.name(), r.arity());
    for &m in r.members() {
        s.push(' ');
        s.push_str(&r.format_tuple(m));
    }
    s
}
