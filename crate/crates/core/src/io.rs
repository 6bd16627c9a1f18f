//! Text formats: DIMACS `p edge` graphs, plain edge lists, and the
//! `p 13sat` formula format.
//!
//! DIMACS and formula files are 1-based on the wire; edge lists are 0-based.
//! Everything is 0-based once parsed.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{Formula33, FormulaError};
use crate::graph::{Graph, GraphError};

/// Largest vertex count accepted from text input.
pub const MAX_VERTICES: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("missing header line")]
    MissingHeader,
    #[error("header declares {declared} {what} but {found} were given")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn vertex_count(line: usize, n: usize) -> Result<usize, ParseError> {
    if n > MAX_VERTICES {
        return Err(syntax(
            line,
            format!("vertex count {n} exceeds {MAX_VERTICES}"),
        ));
    }
    Ok(n)
}

fn one_based(line: usize, v: usize) -> Result<usize, ParseError> {
    v.checked_sub(1)
        .ok_or_else(|| syntax(line, "vertex indices are 1-based"))
}

/// Parses `p edge n m` / `e u v` DIMACS text. `p col` is accepted as a synonym.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut edges = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(syntax(
                            line,
                            format!("expected `p edge`, found `p {}`", other.unwrap_or("")),
                        ))
                    }
                }
                let n = vertex_count(line, number(line, toks.next(), "vertex count")?)?;
                let m = number(line, toks.next(), "edge count")?;
                graph = Some((Graph::empty(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| syntax(line, "edge before problem line"))?;
                let u = one_based(line, number(line, toks.next(), "vertex")?)?;
                let v = one_based(line, number(line, toks.next(), "vertex")?)?;
                g.add_edge(u, v)
                    .map_err(|source| ParseError::Graph { line, source })?;
                edges += 1;
            }
            Some(tok) => return Err(syntax(line, format!("unknown line type `{tok}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (g, m) = graph.ok_or(ParseError::MissingHeader)?;
    if m != edges {
        return Err(ParseError::CountMismatch {
            what: "edges",
            declared: m,
            found: edges,
        });
    }
    Ok(g)
}

/// Canonical DIMACS text: header, then edges sorted, 1-based.
pub fn write_dimacs(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "c {l}");
        }
    }
    let edges = g.edges();
    let _ = writeln!(out, "p edge {} {}", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses an edge list: `#` comments, a header `n [m]`, then `u v` per
/// line with 0-based vertices.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, Option<usize>)> = None;
    let mut edges = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        let Some(first) = toks.next() else { continue };
        match graph.as_mut() {
            None => {
                let n = vertex_count(line, number(line, Some(first), "vertex count")?)?;
                let m = toks
                    .next()
                    .map(|t| number(line, Some(t), "edge count"))
                    .transpose()?;
                graph = Some((Graph::empty(n), m));
            }
            Some((g, _)) => {
                let u = number(line, Some(first), "vertex")?;
                let v = number(line, toks.next(), "vertex")?;
                g.add_edge(u, v)
                    .map_err(|source| ParseError::Graph { line, source })?;
                edges += 1;
            }
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (g, m) = graph.ok_or(ParseError::MissingHeader)?;
    if let Some(m) = m {
        if m != edges {
            return Err(ParseError::CountMismatch {
                what: "edges",
                declared: m,
                found: edges,
            });
        }
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses `c` comments, `p 13sat n`, then `n` clause lines of three
/// 1-based variable indices.
pub fn parse_formula(text: &str) -> Result<Formula33, ParseError> {
    let mut vars: Option<usize> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        if first == "c" {
            continue;
        }
        if first == "p" {
            if vars.is_some() {
                return Err(syntax(line, "duplicate problem line"));
            }
            if toks.next() != Some("13sat") {
                return Err(syntax(line, "expected `p 13sat n`"));
            }
            let n = number(line, toks.next(), "variable count")?;
            if n > MAX_VERTICES {
                return Err(syntax(
                    line,
                    format!("variable count {n} exceeds {MAX_VERTICES}"),
                ));
            }
            vars = Some(n);
        } else {
            if vars.is_none() {
                return Err(syntax(line, "clause before problem line"));
            }
            let a = one_based(line, number(line, Some(first), "variable")?)?;
            let b = one_based(line, number(line, toks.next(), "variable")?)?;
            let c = one_based(line, number(line, toks.next(), "variable")?)?;
            clauses.push([a, b, c]);
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let n = vars.ok_or(ParseError::MissingHeader)?;
    if clauses.len() != n {
        return Err(ParseError::CountMismatch {
            what: "clauses",
            declared: n,
            found: clauses.len(),
        });
    }
    Ok(Formula33::new(n, clauses)?)
}

pub fn write_formula(f: &Formula33) -> String {
    let mut out = format!("p 13sat {}\n", f.variables());
    for c in f.clauses() {
        let _ = writeln!(out, "{} {} {}", c[0] + 1, c[1] + 1, c[2] + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn dimacs_round_trip() {
        let g = named::petersen();
        let text = write_dimacs(&g, &["petersen"]);
        assert!(text.starts_with("c petersen\np edge 10 15\ne 1 2\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn dimacs_errors_carry_line_numbers() {
        assert_eq!(
            parse_dimacs("p edge 3 1\ne 1 4\n"),
            Err(ParseError::Graph {
                line: 2,
                source: GraphError::VertexOutOfRange { vertex: 3, n: 3 }
            })
        );
        assert!(matches!(
            parse_dimacs("c x\ne 1 2\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 0 1\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert_eq!(parse_dimacs("c only\n"), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_dimacs("p edge 3 2\ne 1 2\n"),
            Err(ParseError::CountMismatch { .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 2 2\n"),
            Err(ParseError::Graph {
                line: 2,
                source: GraphError::SelfLoop(1)
            })
        ));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = named::paw();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        let g = parse_edge_list("# comment\n4\n0 1 # inline\n2 3\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn formula_round_trip() {
        let text = "c three copies\np 13sat 3\n1 2 3\n1 2 3\n1 2 3\n";
        let f = parse_formula(text).unwrap();
        assert_eq!(f.clauses(), &[[0, 1, 2]; 3]);
        assert_eq!(parse_formula(&write_formula(&f)).unwrap(), f);
        assert!(matches!(
            parse_formula("p 13sat 3\n1 2 3\n1 2\n1 2 3\n"),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_formula("p 13sat 3\n1 2 3\n1 2 3\n1 2 4\n"),
            Err(ParseError::Formula(_))
        ));
    }
}
