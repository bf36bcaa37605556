//! Edge-list files: an optional `n <count>` header, then one `u v` pair per
//! line. Lines starting with `#` and blank lines are skipped. Without a
//! header the vertex count is the largest id plus one.

use std::fmt::Write as _;
use std::path::Path;

use mutvis_core::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] mutvis_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("`{token}` is not a non-negative integer")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared = None;
    let mut seen_content = false;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "n" {
            if seen_content {
                return Err(syntax(line, "the `n` header must come before any edge"));
            }
            if tokens.len() != 2 {
                return Err(syntax(line, "expected `n <count>`"));
            }
            declared = Some(parse_id(tokens[1], line)?);
            seen_content = true;
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(syntax(
                line,
                format!("expected `u v`, found {} fields", tokens.len()),
            ));
        }
        let (u, v) = (parse_id(tokens[0], line)?, parse_id(tokens[1], line)?);
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(syntax(
                    line,
                    format!("vertex {} out of range for n = {n}", u.max(v)),
                ));
            }
        }
        if u == v {
            return Err(syntax(line, format!("self-loop on vertex {u}")));
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Ok(Graph::new(n, edges)?)
}

pub fn read_edge_list(path: &Path) -> Result<Graph, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_edge_list(&text)
}

/// Header plus edges in ascending order; parses back to the same graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * (g.m() + 1));
    writeln!(out, "n {}", g.n()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_comments() {
        let g = parse_edge_list("# P_4\nn 4\n0 1\n\n 1 2\n# tail\n2 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (4, 3));
        let g = parse_edge_list("0 1\n1 5\n").unwrap();
        assert_eq!(g.n(), 6);
        let g = parse_edge_list("n 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in [
            "0 1 2\n",
            "0 x\n",
            "n 2\n0 2\n",
            "0 1\nn 2\n",
            "1 1\n",
            "n\n",
            "-1 2\n",
        ] {
            assert!(
                matches!(parse_edge_list(bad), Err(ParseError::Syntax { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn round_trip() {
        let g = Graph::new(5, [(3, 4), (0, 1), (1, 3)]).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(text, "n 5\n0 1\n1 3\n3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
