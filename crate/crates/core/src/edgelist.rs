//! Plain-text edge lists.
//!
//! ```text
//! # optional comments
//! n m
//! u v      (m lines, one directed edge u -> v each)
//! ```
//!
//! Tokens are whitespace-separated decimal integers. Lines whose first
//! non-blank character is `#` and blank lines are ignored anywhere.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, Edge};
use crate::error::GraphError;

/// Largest vertex count accepted from a file.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header declares {declared} edges but the file has {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loaded {
    pub graph: Digraph,
    /// Repeated edge lines dropped while building.
    pub collapsed: usize,
}

fn numbers<const K: usize>(line_no: usize, text: &str) -> Result<[usize; K], ParseError> {
    let mut out = [0usize; K];
    let mut tokens = text.split_whitespace();
    for slot in out.iter_mut() {
        let tok = tokens.next().ok_or_else(|| ParseError::Syntax {
            line: line_no,
            msg: format!("expected {K} integers"),
        })?;
        *slot = tok.parse().map_err(|_| ParseError::Syntax {
            line: line_no,
            msg: format!("{tok:?} is not a non-negative integer"),
        })?;
    }
    if let Some(extra) = tokens.next() {
        return Err(ParseError::Syntax { line: line_no, msg: format!("unexpected token {extra:?}") });
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<Loaded, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let [n, m] = numbers::<2>(header_line, header)?;
    if n > MAX_VERTICES {
        return Err(ParseError::Syntax { line: header_line, msg: format!("n = {n} exceeds {MAX_VERTICES}") });
    }
    let mut edges: Vec<Edge> = Vec::new();
    for (line_no, text) in lines {
        let [u, v] = numbers::<2>(line_no, text)?;
        if u >= n || v >= n {
            return Err(ParseError::Invalid { line: line_no, source: GraphError::VertexOutOfRange { edge: (u, v), n } });
        }
        if u == v {
            return Err(ParseError::Invalid { line: line_no, source: GraphError::SelfLoop(u) });
        }
        edges.push((u, v));
        if edges.len() > m {
            return Err(ParseError::EdgeCount { declared: m, found: edges.len() });
        }
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { declared: m, found: edges.len() });
    }
    let built = Digraph::build(n, edges).expect("edges validated line by line");
    Ok(Loaded { graph: built.graph, collapsed: built.collapsed })
}

/// Canonical text: header, then edges in lexicographic order.
pub fn to_text(g: &Digraph) -> String {
    let mut out = String::with_capacity(8 * (g.edge_count() + 1));
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::tests::cycle;
    use proptest::prelude::*;

    #[test]
    fn parse_c4_with_comments() {
        let text = "# the 4-cycle\n4 4\n0 1\n\n1 2\n  # mid comment\n2 3\n3 0\n";
        let loaded = parse(text).unwrap();
        assert_eq!(loaded.graph, cycle(4));
        assert_eq!(loaded.collapsed, 0);
    }

    #[test]
    fn parse_empty_graph() {
        let g = parse("3 0\n").unwrap().graph;
        assert_eq!((g.n(), g.edge_count(), g.gamma()), (3, 0, 3));
    }

    #[test]
    fn parse_reports_line_numbers() {
        assert_eq!(parse("").unwrap_err(), ParseError::MissingHeader);
        assert_eq!(parse("# only\n").unwrap_err(), ParseError::MissingHeader);
        assert!(matches!(parse("3\n"), Err(ParseError::Syntax { line: 1, .. })));
        assert!(matches!(parse("3 1\n0 x\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse("3 1\n0 1 2\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse("3 1\n\n0 3\n"), Err(ParseError::Invalid { line: 3, .. })));
        assert!(matches!(
            parse("3 1\n1 1\n"),
            Err(ParseError::Invalid { line: 2, source: GraphError::SelfLoop(1) })
        ));
        assert_eq!(parse("3 2\n0 1\n").unwrap_err(), ParseError::EdgeCount { declared: 2, found: 1 });
        assert_eq!(parse("3 0\n0 1\n").unwrap_err(), ParseError::EdgeCount { declared: 0, found: 1 });
        assert!(parse("-1 0\n").is_err());
        assert!(parse("99999999999 0\n").is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let loaded = parse("2 2\n0 1\n0 1\n").unwrap();
        assert_eq!(loaded.graph.edge_count(), 1);
        assert_eq!(loaded.collapsed, 1);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..12, pairs in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let edges: Vec<Edge> = pairs.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
            let g = Digraph::from_edges(n, edges).unwrap();
            let text = to_text(&g);
            prop_assert_eq!(parse(&text).unwrap().graph, g.clone());
            prop_assert_eq!(to_text(&parse(&text).unwrap().graph), text);
        }
    }
}
