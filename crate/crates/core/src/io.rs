//! Text formats: a plain edge list and graph6.
//!
//! Edge list: first non-comment line is `n`, then one `u v` pair per line.
//! An optional `B: i j k` line sets an explicit boundary; without it the
//! boundary is the leaf set. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tree::{Edge, TreeWithBoundary};

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("line {line}: expected a vertex index, got {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<TreeWithBoundary> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut boundary: Option<Vec<usize>> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("B:") {
            if boundary.is_some() {
                return Err(Error::Parse(format!("line {lineno}: second boundary line")));
            }
            let b = rest
                .split_whitespace()
                .map(|t| parse_usize(t, lineno))
                .collect::<Result<Vec<_>>>()?;
            boundary = Some(b);
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match (n, toks.as_slice()) {
            (None, [t]) => n = Some(parse_usize(t, lineno)?),
            (None, _) => {
                return Err(Error::Parse(format!(
                    "line {lineno}: expected the vertex count"
                )))
            }
            (Some(_), [a, b]) => edges.push((parse_usize(a, lineno)?, parse_usize(b, lineno)?)),
            (Some(_), _) => return Err(Error::Parse(format!("line {lineno}: expected \"u v\""))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("empty input".into()))?;
    TreeWithBoundary::from_edge_list(n, &edges, boundary.as_deref())
}

/// Writes the edge-list format. The boundary line is emitted only when the
/// boundary differs from the leaf set.
pub fn write_edge_list(tree: &TreeWithBoundary) -> String {
    let mut out = format!("{}\n", tree.n());
    for (u, v) in tree.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    if !tree.has_leaf_boundary() {
        let b: Vec<String> = tree.boundary().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "B: {}", b.join(" "));
    }
    out
}

/// graph6 encoding of the underlying graph (boundary is not recorded).
pub fn to_graph6(n: usize, edges: &[Edge]) -> String {
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in edges {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[i * n + j]);
        }
    }
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                x |= 1 << (5 - k);
            }
        }
        bytes.push(x + 63);
    }
    String::from_utf8(bytes).expect("graph6 is printable ASCII")
}

/// Decodes a graph6 string into `(n, edges)` with edges `(i, j)`, `i < j`,
/// in column order.
pub fn from_graph6(s: &str) -> Result<(usize, Vec<Edge>)> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let data: Vec<u8> = s.bytes().collect();
    if data.is_empty() || data.iter().any(|&c| !(63..=126).contains(&c)) {
        return Err(Error::Parse(format!("not a graph6 string: {s:?}")));
    }
    let val = |c: u8| (c - 63) as usize;
    let (n, rest) = if data[0] != 126 {
        (val(data[0]), &data[1..])
    } else if data.len() >= 4 && data[1] != 126 {
        (
            (val(data[1]) << 12) | (val(data[2]) << 6) | val(data[3]),
            &data[4..],
        )
    } else if data.len() >= 8 {
        let mut n = 0;
        for &c in &data[2..8] {
            n = (n << 6) | val(c);
        }
        (n, &data[8..])
    } else {
        return Err(Error::Parse("truncated graph6 header".into()));
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {}",
            rest.len(),
            nbits.div_ceil(6)
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(rest[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}
