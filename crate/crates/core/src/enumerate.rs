//! Free trees up to isomorphism.

use std::collections::BTreeMap;

use crate::canon::{canonical_tree, unlabeled_key};
use crate::error::{Error, Result};
use crate::graph::Tree;

pub const MAX_ENUMERATION: usize = 16;

/// One canonically labeled representative per isomorphism class of trees on
/// `n` vertices, sorted by canonical key.
///
/// Classes on `n` vertices are grown from those on `n - 1` by attaching a
/// leaf everywhere and deduplicating on the canonical key.
pub fn enumerate_free_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::SizeGuard { what: "free-tree enumeration size", limit: MAX_ENUMERATION, got: n });
    }
    let mut level = vec![Tree::single()];
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for t in &level {
            for v in 0..t.n() {
                let grown = t.with_leaf(v);
                next.entry(unlabeled_key(&grown)).or_insert_with(|| canonical_tree(&grown));
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// All trees on `1..=max_n` vertices.
pub fn trees_up_to(max_n: usize) -> Result<Vec<Tree>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_free_trees(n)?);
    }
    Ok(out)
}
