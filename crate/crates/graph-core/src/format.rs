//! Line-oriented instance files and graph-description export.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cost::{Cost, CostError};
use crate::graph::{Graph, GraphBuilder, GraphError, RuleSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("duplicate start directive")]
    DuplicateStart,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 for errors detected after the last line.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn at(line: usize, kind: impl Into<ParseErrorKind>) -> Self {
        ParseError { line, kind: kind.into() }
    }
}

/// Parses the `start` / `rules` / `edge` instance format.
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let syntax = |msg: &str| ParseError::at(line, ParseErrorKind::Syntax(msg.to_string()));
        match words[0] {
            "start" => {
                if words.len() != 3 {
                    return Err(syntax("expected `start <s> <t>`"));
                }
                if b.has_start() {
                    return Err(ParseError::at(line, ParseErrorKind::DuplicateStart));
                }
                b.start(words[1], words[2]).map_err(|e| ParseError::at(line, e))?;
            }
            "rules" => match words.get(1..) {
                Some(["r2"]) => {
                    b.rules(RuleSet::R2);
                }
                Some(["r3"]) => {
                    b.rules(RuleSet::R3);
                }
                _ => return Err(syntax("expected `rules r2` or `rules r3`")),
            },
            "edge" => {
                if words.len() != 4 {
                    return Err(syntax("expected `edge <u> <v> <cost>`"));
                }
                let cost = Cost::parse(words[3]).map_err(|e| ParseError::at(line, e))?;
                b.edge(words[1], words[2], cost)
                    .map_err(|e| ParseError::at(line, e))?;
            }
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    b.build().map_err(|e| ParseError::at(0, e))
}

/// Inverse of [`parse_instance`].
pub fn serialize(g: &Graph) -> String {
    serialize_with_header(g, &[])
}

/// Serializes with leading `# ` comment lines.
pub fn serialize_with_header(g: &Graph, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    let _ = writeln!(out, "start {} {}", g.token(g.s()), g.token(g.t()));
    if g.rules().simple_paths {
        out.push_str("rules r3\n");
    }
    for e in g.edges() {
        let _ = writeln!(out, "edge {} {} {}", g.token(e.tail), g.token(e.head), e.cost);
    }
    out
}

fn quoted(token: &str) -> String {
    format!("\"{}\"", token.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT description: one node statement per vertex, one labeled edge statement per edge.
pub fn export_dot(g: &Graph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.n() {
        let tok = g.token(v);
        let role = match (v == g.s(), v == g.t()) {
            (true, true) => Some("A,B"),
            (true, false) => Some("A"),
            (false, true) => Some("B"),
            _ => None,
        };
        match role {
            Some(r) => {
                let _ = writeln!(
                    out,
                    "  {} [shape=doublecircle, label={}];",
                    quoted(tok),
                    quoted(&format!("{tok} ({r})"))
                );
            }
            None => {
                let _ = writeln!(out, "  {};", quoted(tok));
            }
        }
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quoted(g.token(e.tail)),
            quoted(g.token(e.head)),
            quoted(&e.cost.to_string())
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_instance() {
        let g = parse_instance("start s t\nedge s v2 1\nedge t v2 10").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        let e = g.find_edge(g.vertex("s").unwrap(), g.vertex("v2").unwrap()).unwrap();
        assert_eq!(g.edge(e).cost, Cost::from_int(1));
        assert_eq!(g.rules(), RuleSet::R2);
    }

    #[test]
    fn decimal_cost_is_exact() {
        let g = parse_instance("start z q\nedge z q 2.1").unwrap();
        assert_eq!(g.edge(0).cost, Cost::new(21, 10).unwrap());
    }

    #[test]
    fn error_kinds_carry_lines() {
        let e = parse_instance("start a b\nedge a b -1").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::Cost(CostError::Negative));
        assert_eq!(e.to_string(), "line 2: negative cost");

        let e = parse_instance("start a b\n\nedge a a 1").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.to_string().contains("self-loop"));

        let e = parse_instance("edge a b 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Graph(GraphError::MissingStart));
        assert!(e.to_string().contains("missing start directive"));

        let e = parse_instance("start a b\nstart a b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateStart);

        let e = parse_instance("start a b\nedge a b").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert!(parse_instance("start a b\nrules r4").is_err());
        assert!(parse_instance("start a b\nvertex c").is_err());
    }

    #[test]
    fn rules_and_comments() {
        let g = parse_instance("# hi\n\n  start a b  \nrules r3\nedge a b 1/3 \n").unwrap();
        assert_eq!(g.rules(), RuleSet::R3);
        assert_eq!(g.edge(0).cost, Cost::new(1, 3).unwrap());
        assert_eq!(parse_instance(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn dot_without_edges() {
        let g = parse_instance("start s t").unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.matches("->").count(), 0);
        assert_eq!(dot.lines().filter(|l| l.contains("doublecircle")).count(), 2);
    }

    #[test]
    fn dot_cost_labels() {
        let g = parse_instance("start s t\nedge s t 21/10\nedge t s 1/3").unwrap();
        let dot = export_dot(&g);
        assert!(dot.contains("\"s\" -> \"t\" [label=\"2.1\"];"));
        assert!(dot.contains("\"t\" -> \"s\" [label=\"1/3\"];"));
    }
}
