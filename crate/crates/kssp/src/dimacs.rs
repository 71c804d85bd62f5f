//! DIMACS shortest-path `.gr` format: `c` comment lines, one `p sp <n> <m>`
//! problem line, and `a <tail> <head> <weight>` arc lines with 1-based node
//! ids. Duplicate arc lines are preserved as parallel edges.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing problem line `p sp <n> <m>`")]
    MissingProblemLine,
    #[error("line {line}: duplicate problem line")]
    DuplicateProblemLine { line: usize },
    #[error("arc count mismatch: problem line declares {declared}, found {found}")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("line {line}: node id {id} out of range 1..={node_count}")]
    NodeOutOfRange {
        line: usize,
        id: u64,
        node_count: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: usize, message: impl Into<String>) -> DimacsError {
    DimacsError::Malformed {
        line,
        message: message.into(),
    }
}

pub fn parse<R: BufRead>(reader: R) -> Result<Graph, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(NodeId, NodeId, f64)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(DimacsError::DuplicateProblemLine { line: lineno });
                }
                if fields.next() != Some("sp") {
                    return Err(malformed(lineno, "problem line must be `p sp <n> <m>`"));
                }
                let n = parse_field::<usize>(&mut fields, lineno, "node count")?;
                let m = parse_field::<usize>(&mut fields, lineno, "edge count")?;
                if fields.next().is_some() {
                    return Err(malformed(lineno, "trailing fields on problem line"));
                }
                header = Some((n, m));
                edges.reserve(m);
            }
            Some("a") => {
                let (n, _) = header.ok_or(DimacsError::MissingProblemLine)?;
                let tail = parse_field::<u64>(&mut fields, lineno, "tail")?;
                let head = parse_field::<u64>(&mut fields, lineno, "head")?;
                let weight = parse_field::<f64>(&mut fields, lineno, "weight")?;
                if fields.next().is_some() {
                    return Err(malformed(lineno, "trailing fields on arc line"));
                }
                for id in [tail, head] {
                    if id < 1 || id > n as u64 {
                        return Err(DimacsError::NodeOutOfRange {
                            line: lineno,
                            id,
                            node_count: n,
                        });
                    }
                }
                edges.push((tail as NodeId - 1, head as NodeId - 1, weight));
            }
            Some(other) => {
                return Err(malformed(lineno, format!("unknown line type `{other}`")));
            }
        }
    }

    let (n, m) = header.ok_or(DimacsError::MissingProblemLine)?;
    if edges.len() != m {
        return Err(DimacsError::ArcCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn parse_str(text: &str) -> Result<Graph, DimacsError> {
    parse(text.as_bytes())
}

/// Write a graph in `.gr` format. Integral weights are written without a
/// decimal point, so graphs with integer weights round-trip byte-exactly.
pub fn write<W: Write>(graph: &Graph, mut out: W) -> io::Result<()> {
    writeln!(out, "p sp {} {}", graph.node_count(), graph.edge_count())?;
    for e in graph.edges() {
        if e.weight.fract() == 0.0 && e.weight.abs() < 1e15 {
            writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, e.weight as i64)?;
        } else {
            writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, e.weight)?;
        }
    }
    Ok(())
}

pub fn to_string(graph: &Graph) -> String {
    let mut buf = Vec::new();
    write(graph, &mut buf).expect("write to Vec cannot fail");
    String::from_utf8(buf).expect("dimacs output is ascii")
}

fn parse_field<T: std::str::FromStr>(
    fields: &mut std::str::SplitWhitespace,
    line: usize,
    what: &str,
) -> Result<T, DimacsError> {
    let raw = fields
        .next()
        .ok_or_else(|| malformed(line, format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{raw}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let g = parse_str("p sp 2 1\na 1 2 5\n").unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let e = g.edge(0);
        assert_eq!((e.tail, e.head, e.weight), (0, 1, 5.0));
    }

    #[test]
    fn comments_and_duplicate_arcs() {
        let g = parse_str("c a multigraph\np sp 2 2\na 1 2 3\na 1 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.out_edges(0), &[0, 1]);
    }

    #[test]
    fn writes_expected_text() {
        let g = Graph::from_edges(2, &[(0, 1, 5.0)]).unwrap();
        assert_eq!(to_string(&g), "p sp 2 1\na 1 2 5\n");
        let empty = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(to_string(&empty), "p sp 1 0\n");
    }

    #[test]
    fn error_cases() {
        assert!(matches!(
            parse_str("a 1 2 3\n"),
            Err(DimacsError::MissingProblemLine)
        ));
        assert!(matches!(
            parse_str("p sp 2 1\np sp 2 1\na 1 2 3\n"),
            Err(DimacsError::DuplicateProblemLine { line: 2 })
        ));
        assert!(matches!(
            parse_str("p sp 2 2\na 1 2 3\n"),
            Err(DimacsError::ArcCountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_str("p sp 2 1\na 1 3 4\n"),
            Err(DimacsError::NodeOutOfRange { id: 3, .. })
        ));
        assert!(matches!(
            parse_str("p sp 2 1\na 1 2\n"),
            Err(DimacsError::Malformed { .. })
        ));
        assert!(matches!(
            parse_str("p sp 2 1\nq 1 2 3\n"),
            Err(DimacsError::Malformed { .. })
        ));
        // negative weights are rejected at graph construction
        assert!(matches!(
            parse_str("p sp 2 1\na 1 2 -4\n"),
            Err(DimacsError::Graph(_))
        ));
    }

    #[test]
    fn round_trip_preserves_graph() {
        let g = Graph::from_edges(
            3,
            &[(0, 1, 2.0), (1, 2, 3.5), (2, 0, 1.0), (0, 0, 7.0), (0, 1, 2.0)],
        )
        .unwrap();
        let parsed = parse_str(&to_string(&g)).unwrap();
        assert_eq!(parsed, g);
    }
}
