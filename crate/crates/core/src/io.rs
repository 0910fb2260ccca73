//! Plain-text edge-list format.
//!
//! First non-comment line is `n m`, followed by `m` lines `u v` with
//! 0-based indices. Lines starting with `#` and blank lines are ignored.

use crate::graph::{Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize), EdgeListError> {
        let syntax = |msg: &str| EdgeListError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let mut it = l.split_whitespace();
        let a = it.next().ok_or_else(|| syntax("expected two integers"))?;
        let b = it.next().ok_or_else(|| syntax("expected two integers"))?;
        if it.next().is_some() {
            return Err(syntax("trailing tokens"));
        }
        let a = a
            .parse()
            .map_err(|_| syntax("not a non-negative integer"))?;
        let b = b
            .parse()
            .map_err(|_| syntax("not a non-negative integer"))?;
        Ok((a, b))
    };

    let (line, header) = lines.next().ok_or(EdgeListError::Syntax {
        line: 1,
        msg: "missing `n m` header".to_string(),
    })?;
    let (n, m) = parse_pair(line, header)?;
    let edges = lines
        .map(|(line, l)| parse_pair(line, l))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
