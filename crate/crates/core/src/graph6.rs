//! graph6 codec, short form only (at most 62 vertices).
//!
//! The header is one byte `n + 63`. The body packs the upper triangle of the
//! adjacency matrix column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`)
//! into 6-bit groups, most significant bit first, each offset by 63 and the
//! last group zero-padded.

use crate::error::{Error, Result};
use crate::graph::Tree;

pub const MAX_VERTICES: usize = 62;

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes any short-form graph6 record into `(n, edges)` without requiring
/// the graph to be a tree.
pub fn decode_graph6(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if header == 126 {
        return Err(Error::Graph6("long-form header (n > 62) is not supported".into()));
    }
    if !(63..=125).contains(&header) {
        return Err(Error::Graph6(format!("malformed header byte {header:#04x}")));
    }
    let n = (header - 63) as usize;
    let need = body_len(n);
    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!("out-of-range character {:#04x} at offset {}", body[pos], pos + 1)));
    }
    if body.len() < need {
        return Err(Error::Graph6(format!("truncated bit vector: {} of {} bytes", body.len(), need)));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!("{} trailing bytes after bit vector", body.len() - need)));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok((n, edges))
}

/// Parses a graph6 record that must encode a tree.
pub fn parse_graph6(text: &str) -> Result<Tree> {
    let (n, edges) = decode_graph6(text)?;
    Tree::new(n, edges)
}

pub fn emit_graph6(t: &Tree) -> Result<String> {
    let n = t.n();
    if n > MAX_VERTICES {
        return Err(Error::SizeGuard { what: "graph6 vertex count", limit: MAX_VERTICES, got: n });
    }
    let mut bits = vec![0u8; body_len(n) * 6];
    for &(u, v) in t.edges() {
        // u < v: column v, row u
        bits[v * (v - 1) / 2 + u] = 1;
    }
    let mut out = String::with_capacity(1 + bits.len() / 6);
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b);
        out.push((x + 63) as char);
    }
    Ok(out)
}
