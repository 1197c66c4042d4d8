//! Graph file formats.
//!
//! The canonical format is an edge list with one-based vertices:
//!
//! ```text
//! # comment
//! n 4
//! 1 2
//! 2 3
//! ```
//!
//! A dense 0/1 adjacency matrix in CSV is accepted on input only; entry
//! `(i, j) = 1` means an edge `i → j` (source row, destination column).

use std::collections::BTreeSet;

use rsrobust::{Digraph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("line {line}: duplicate edge {i} -> {j}")]
    DuplicateEdge { line: usize, i: usize, j: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} is outside 1..={n}")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("adjacency matrix is not square: row {row} has {got} entries, expected {n}")]
    NotSquare { row: usize, got: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    AdjacencyCsv,
}

/// Picks the format from the first meaningful line: a `n <count>` header
/// means an edge list, anything with a comma an adjacency matrix.
pub fn detect_format(text: &str) -> Format {
    let first = meaningful_lines(text).next().map(|(_, l)| l).unwrap_or("");
    if first.contains(',') {
        Format::AdjacencyCsv
    } else {
        Format::EdgeList
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((k + 1, line))
    })
}

pub fn parse_graph(text: &str, undirected: bool) -> Result<Digraph, ParseError> {
    match detect_format(text) {
        Format::EdgeList => parse_edge_list(text, undirected),
        Format::AdjacencyCsv => parse_adjacency_csv(text, undirected),
    }
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Syntax {
        line,
        msg: format!("expected a nonnegative integer, found `{tok}`"),
    })
}

/// Collects edges, rejecting self-loops and, for directed input, repeats.
/// Undirected input adds both orientations and merges repeats.
struct EdgeSink {
    n: usize,
    undirected: bool,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSink {
    fn add(&mut self, line: usize, i: usize, j: usize) -> Result<(), ParseError> {
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(ParseError::OutOfRange { line, v, n: self.n });
            }
        }
        if i == j {
            return Err(ParseError::SelfLoop { line, v: i });
        }
        if self.undirected {
            self.edges.insert((i, j));
            self.edges.insert((j, i));
        } else if !self.edges.insert((i, j)) {
            return Err(ParseError::DuplicateEdge { line, i, j });
        }
        Ok(())
    }

    fn finish(self) -> Result<Digraph, ParseError> {
        Ok(Digraph::from_edge_list(self.n, self.edges)?)
    }
}

pub fn parse_edge_list(text: &str, undirected: bool) -> Result<Digraph, ParseError> {
    let mut lines = meaningful_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let n = match toks.as_slice() {
        ["n", count] => number(hline, count)?,
        _ => return Err(ParseError::MissingHeader),
    };
    let mut sink = EdgeSink {
        n,
        undirected,
        edges: BTreeSet::new(),
    };
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [i, j] = toks.as_slice() else {
            return Err(ParseError::Syntax {
                line,
                msg: format!("expected `i j`, found `{body}`"),
            });
        };
        sink.add(line, number(line, i)?, number(line, j)?)?;
    }
    sink.finish()
}

pub fn parse_adjacency_csv(text: &str, undirected: bool) -> Result<Digraph, ParseError> {
    let rows: Vec<(usize, Vec<&str>)> = meaningful_lines(text)
        .map(|(line, l)| (line, l.split(',').map(str::trim).collect()))
        .collect();
    let n = rows.len();
    let mut sink = EdgeSink {
        n,
        undirected,
        edges: BTreeSet::new(),
    };
    for (i, (line, cells)) in rows.iter().enumerate() {
        if cells.len() != n {
            return Err(ParseError::NotSquare {
                row: i + 1,
                got: cells.len(),
                n,
            });
        }
        for (j, cell) in cells.iter().enumerate() {
            match *cell {
                "0" => {}
                "1" => sink.add(*line, i + 1, j + 1)?,
                other => {
                    return Err(ParseError::Syntax {
                        line: *line,
                        msg: format!("matrix entries must be 0 or 1, found `{other}`"),
                    })
                }
            }
        }
    }
    sink.finish()
}

/// The canonical edge list, edges sorted by source then target.
pub fn write_edge_list(g: &Digraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, j) in g.edges() {
        out.push_str(&format!("{} {}\n", i + 1, j + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_with_comments() {
        let g = parse_graph("# a path\nn 3\n1 2 # first\n\n2 3\n", false).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(parse_graph("1 2\n", false).unwrap_err(), ParseError::MissingHeader);
        assert_eq!(
            parse_graph("n 3\n1 1\n", false).unwrap_err(),
            ParseError::SelfLoop { line: 2, v: 1 }
        );
        assert_eq!(
            parse_graph("n 3\n1 2\n1 2\n", false).unwrap_err(),
            ParseError::DuplicateEdge { line: 3, i: 1, j: 2 }
        );
        assert_eq!(
            parse_graph("n 3\n1 4\n", false).unwrap_err(),
            ParseError::OutOfRange { line: 2, v: 4, n: 3 }
        );
        assert!(matches!(
            parse_graph("n 3\n1 2 3\n", false),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("n 0\n", false),
            Err(ParseError::Graph(GraphError::Empty))
        ));
    }

    #[test]
    fn undirected_expansion() {
        let g = parse_graph("n 3\n1 2\n2 1\n2 3\n", true).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.has_edge(2, 1));
    }

    #[test]
    fn adjacency_orientation() {
        // row 1 column 2 set: edge 1 -> 2
        let g = parse_graph("0,1,0\n0,0,0\n1,0,0\n", false).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 0)]);
        assert!(matches!(
            parse_graph("0,1\n0,0,0\n", false),
            Err(ParseError::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            parse_graph("0,2\n0,0\n", false),
            Err(ParseError::Syntax { .. })
        ));
        let u = parse_graph("0,1\n1,0\n", true).unwrap();
        assert_eq!(u.edge_count(), 2);
    }

    #[test]
    fn round_trip() {
        let g = Digraph::from_edge_list(4, [(1, 2), (3, 1), (4, 2), (2, 4)]).unwrap();
        assert_eq!(parse_graph(&write_edge_list(&g), false).unwrap(), g);
    }
}
