use std::collections::HashSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use treecount_core::canon::{canonical_key, canonical_tree, unlabeled_key};
use treecount_core::enumerate::{enumerate_free_trees, trees_up_to};
use treecount_core::graph::Tree;
use treecount_core::graph6::{emit_graph6, parse_graph6};

const TREE_COUNTS: [usize; 10] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];

/// Rooted parenthesis encoding, minimized over roots.
fn plain_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn enc(adj: &[Vec<usize>], v: usize, p: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != p).map(|&w| enc(adj, w, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| enc(&adj, r, usize::MAX)).min().unwrap()
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Isomorphism classes among all labeled trees, via every Prüfer sequence.
fn prufer_classes(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut seen = HashSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(plain_form(n, &prufer_edges(n, &seq)));
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return seen.len();
        }
    }
}

/// Unrooted tree counts from rooted counts (Euler transform and Otter's dissimilarity).
fn otter_counts(max_n: usize) -> Vec<u64> {
    let mut r = vec![0u64; max_n + 1];
    r[1] = 1;
    for n in 1..max_n {
        let mut s = 0u64;
        for k in 1..=n {
            let d: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * r[d]).sum();
            s += d * r[n - k + 1];
        }
        r[n + 1] = s / n as u64;
    }
    (0..=max_n)
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let pairs: u64 = (1..n).map(|i| r[i] * r[n - i]).sum();
            let sym = if n % 2 == 0 { r[n / 2] } else { 0 };
            r[n] - (pairs - sym) / 2
        })
        .collect()
}

#[test]
fn counts_match_prufer_classes() {
    for n in 1..=8 {
        assert_eq!(prufer_classes(n), TREE_COUNTS[n - 1], "n = {n}");
        assert_eq!(enumerate_free_trees(n).unwrap().len(), TREE_COUNTS[n - 1]);
    }
}

#[test]
fn counts_match_rooted_recurrence() {
    let otter = otter_counts(10);
    for n in 1..=10 {
        assert_eq!(otter[n] as usize, TREE_COUNTS[n - 1]);
        let trees = enumerate_free_trees(n).unwrap();
        assert_eq!(trees.len(), TREE_COUNTS[n - 1]);
        let forms: HashSet<String> = trees.iter().map(|t| plain_form(t.n(), t.edges())).collect();
        assert_eq!(forms.len(), trees.len(), "duplicate isomorphism class at n = {n}");
    }
}

#[test]
fn graph6_round_trip() {
    for t in trees_up_to(12).unwrap() {
        let s = emit_graph6(&t).unwrap();
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.edges(), t.edges());
        assert_eq!(emit_graph6(&back).unwrap(), s);
    }
}

#[test]
fn canonical_key_relabel_invariant() {
    let mut rng = StdRng::seed_from_u64(7);
    for t in trees_up_to(9).unwrap() {
        let labels: Vec<u8> = (0..t.n()).map(|v| (t.degree(v) % 3) as u8).collect();
        let key = canonical_key(&t, &labels);
        for _ in 0..20 {
            let mut perm: Vec<usize> = (0..t.n()).collect();
            perm.shuffle(&mut rng);
            let u = t.relabel(&perm);
            let mut moved = vec![0u8; t.n()];
            for v in 0..t.n() {
                moved[perm[v]] = labels[v];
            }
            assert_eq!(canonical_key(&u, &moved), key);
            assert_eq!(unlabeled_key(&u), unlabeled_key(&t));
        }
    }
}

fn random_tree() -> impl Strategy<Value = Tree> {
    (3usize..14).prop_flat_map(|n| proptest::collection::vec(0..n, n - 2).prop_map(move |s| Tree::from_prufer(n, &s).unwrap()))
}

proptest! {
    #[test]
    fn canonical_tree_is_isomorphic_and_idempotent(t in random_tree()) {
        let c = canonical_tree(&t);
        prop_assert_eq!(plain_form(c.n(), c.edges()), plain_form(t.n(), t.edges()));
        let again = canonical_tree(&c);
        prop_assert_eq!(again.edges(), c.edges());
    }

    #[test]
    fn keys_separate_classes(a in random_tree(), b in random_tree()) {
        let same = plain_form(a.n(), a.edges()) == plain_form(b.n(), b.edges());
        prop_assert_eq!(unlabeled_key(&a) == unlabeled_key(&b), same);
    }
}
