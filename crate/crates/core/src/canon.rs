//! Canonical keys for vertex-labeled trees and forests.
//!
//! The key roots the tree at its center (or splits it at the central edge
//! when there are two centers) and encodes each rooted subtree as
//! `open, label, sorted child codes..., close`. Child codes are compared as
//! byte strings; the encoding is prefix-free, so sorting is well defined.

use crate::graph::{Forest, Tree};

const OPEN: u8 = 0;
const CLOSE: u8 = 1;
const LABEL_BASE: u8 = 2;
/// Largest vertex label accepted by [`canonical_key`].
pub const MAX_LABEL: u8 = u8::MAX - LABEL_BASE;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Centers of a tree: one or two vertices found by repeatedly stripping leaves.
pub fn centers(t: &Tree) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            deg[v] = 0;
            for &w in t.neighbors(v) {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    let mut c = layer;
    c.sort_unstable();
    c
}

/// Encodes the subtree of `root` not containing `avoid`, returning the code
/// and the vertices in canonical preorder.
fn encode(t: &Tree, labels: &[u8], root: usize, avoid: Option<usize>) -> (Vec<u8>, Vec<usize>) {
    let parent_of_root = avoid.unwrap_or(usize::MAX);
    // iterative post-order
    let mut order = Vec::new();
    let mut stack = vec![(root, parent_of_root)];
    let mut parent = vec![usize::MAX; t.n()];
    while let Some((u, p)) = stack.pop() {
        parent[u] = p;
        order.push(u);
        for &w in t.neighbors(u) {
            if w != p {
                stack.push((w, u));
            }
        }
    }
    let mut codes: Vec<Option<(Vec<u8>, Vec<usize>)>> = vec![None; t.n()];
    for &u in order.iter().rev() {
        let mut kids: Vec<(Vec<u8>, Vec<usize>)> = t
            .neighbors(u)
            .iter()
            .filter(|&&w| w != parent[u])
            .map(|&w| codes[w].take().expect("child encoded before parent"))
            .collect();
        kids.sort_by(|a, b| a.0.cmp(&b.0));
        let mut code = vec![OPEN, labels[u] + LABEL_BASE];
        let mut pre = vec![u];
        for (c, p) in kids {
            code.extend_from_slice(&c);
            pre.extend_from_slice(&p);
        }
        code.push(CLOSE);
        codes[u] = Some((code, pre));
    }
    codes[root].take().expect("root encoded")
}

/// Canonical key plus a canonical vertex order: `order[i]` is the vertex that
/// receives label `i` in the canonical relabeling.
pub fn canonical_form(t: &Tree, labels: &[u8]) -> (CanonicalKey, Vec<usize>) {
    assert_eq!(labels.len(), t.n(), "one label per vertex");
    assert!(labels.iter().all(|&l| l <= MAX_LABEL), "label out of range");
    let c = centers(t);
    if c.len() == 1 {
        let (code, order) = encode(t, labels, c[0], None);
        return (CanonicalKey(code), order);
    }
    let a = encode(t, labels, c[0], Some(c[1]));
    let b = encode(t, labels, c[1], Some(c[0]));
    let (first, second) = if a.0 <= b.0 { (a, b) } else { (b, a) };
    // the bicentral marker keeps these keys distinct from unicentral ones
    let mut code = Vec::with_capacity(first.0.len() + second.0.len() + 1);
    code.push(u8::MAX);
    code.extend_from_slice(&first.0);
    code.extend_from_slice(&second.0);
    let mut order = first.1;
    order.extend_from_slice(&second.1);
    (CanonicalKey(code), order)
}

/// Key of a labeled tree; equal keys iff a label-preserving isomorphism exists.
pub fn canonical_key(t: &Tree, labels: &[u8]) -> CanonicalKey {
    canonical_form(t, labels).0
}

pub fn unlabeled_key(t: &Tree) -> CanonicalKey {
    canonical_key(t, &vec![0; t.n()])
}

/// The canonically relabeled copy of `t` (isomorphic trees give equal results).
pub fn canonical_tree(t: &Tree) -> Tree {
    let (_, order) = canonical_form(t, &vec![0; t.n()]);
    let mut perm = vec![0; t.n()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    t.relabel(&perm)
}

/// Key of a labeled forest: the sorted multiset of component keys.
pub fn forest_key(f: &Forest, labels: impl Fn(usize, usize) -> u8) -> CanonicalKey {
    let mut keys: Vec<CanonicalKey> = f
        .components
        .iter()
        .enumerate()
        .map(|(c, t)| {
            let l: Vec<u8> = (0..t.n()).map(|i| labels(c, i)).collect();
            canonical_key(t, &l)
        })
        .collect();
    keys.sort();
    let mut out = Vec::new();
    for k in keys {
        out.extend_from_slice(&(k.0.len() as u32).to_le_bytes());
        out.extend_from_slice(&k.0);
    }
    CanonicalKey(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path3_any_numbering() {
        let a = Tree::path(3);
        let b = Tree::new(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(unlabeled_key(&a), unlabeled_key(&b));
    }

    #[test]
    fn star_vs_path() {
        assert_ne!(unlabeled_key(&Tree::star(3)), unlabeled_key(&Tree::path(4)));
    }

    #[test]
    fn leaf_label_swap() {
        let p = Tree::path(3);
        assert_eq!(canonical_key(&p, &[1, 0, 2]), canonical_key(&p, &[2, 0, 1]));
        assert_ne!(canonical_key(&p, &[1, 0, 2]), canonical_key(&p, &[0, 1, 2]));
    }

    #[test]
    fn centers_of_paths() {
        assert_eq!(centers(&Tree::path(5)), vec![2]);
        assert_eq!(centers(&Tree::path(4)), vec![1, 2]);
        assert_eq!(centers(&Tree::single()), vec![0]);
    }

    #[test]
    fn canonical_tree_is_invariant() {
        let a = Tree::dynkin_e(7).unwrap();
        let perm = [6, 2, 4, 0, 1, 5, 3];
        assert_eq!(canonical_tree(&a), canonical_tree(&a.relabel(&perm)));
    }
}
