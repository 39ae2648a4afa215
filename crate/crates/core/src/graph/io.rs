//! Edge-list text format.
//!
//! ```text
//! # nodes=<N> edges=<M>
//! u v
//! ...
//! ```
//!
//! One line per alive edge with `u < v`, ascending lexicographic order, LF
//! endings. Writing then reading then writing is byte-identical.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::{Graph, GraphError, NodeId};

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "# nodes={} edges={}", g.node_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<(), GraphError> {
    w.write_all(to_edge_list_string(g).as_bytes())
        .map_err(|e| GraphError::Io(e.to_string()))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix("# nodes=")?;
    let (n, m) = rest.split_once(" edges=")?;
    Some((n.parse().ok()?, m.parse().ok()?))
}

/// Parses the edge-list format. Ordering is not required on input, but edges
/// must be simple and the declared edge count must match.
pub fn read_edge_list<R: BufRead>(r: R) -> Result<Graph, GraphError> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?
        .map_err(|e| GraphError::Io(e.to_string()))?;
    let (n, m) = parse_header(header.trim_end()).ok_or_else(|| GraphError::Parse {
        line: 1,
        msg: format!("expected `# nodes=<N> edges=<M>`, got {header:?}"),
    })?;
    let mut g = Graph::new(n);
    for (idx, line) in lines.enumerate() {
        let lineno = idx + 2;
        let line = line.map_err(|e| GraphError::Io(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| GraphError::Parse { line: lineno, msg };
        let mut parts = line.split_ascii_whitespace();
        let mut next = || -> Result<usize, GraphError> {
            parts
                .next()
                .ok_or_else(|| parse_err("expected two node ids".into()))?
                .parse::<usize>()
                .map_err(|e| parse_err(e.to_string()))
        };
        let (u, v) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(parse_err("trailing tokens".into()));
        }
        if u >= n || v >= n {
            return Err(parse_err(format!("node id out of range (n = {n})")));
        }
        g.add_edge(NodeId::from(u), NodeId::from(v))?;
    }
    if g.edge_count() != m {
        return Err(GraphError::Parse {
            line: 1,
            msg: format!("header declares {m} edges, found {}", g.edge_count()),
        });
    }
    Ok(g)
}
