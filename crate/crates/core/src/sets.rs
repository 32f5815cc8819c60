//! Matchings, independent sets, vertex covers and admissible sets.

use std::collections::VecDeque;

use serde::Serialize;

use crate::coloring::{canonical_coloring, Color, Coloring, Component, ORACLE_MAX_N};
use crate::error::{Error, Result};
use crate::graph::{Forest, Tree};

/// Largest tree for which independent sets are streamed.
pub const INDEPENDENT_MAX_N: usize = 24;

/// A set of pairwise disjoint edges ("dominoes"), normalized and sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matching(Vec<(usize, usize)>);

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut e: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        e.sort_unstable();
        let mut used: Vec<usize> = e.iter().flat_map(|&(u, v)| [u, v]).collect();
        used.sort_unstable();
        if used.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("dominoes share a vertex".into()));
        }
        Ok(Matching(e))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.0.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.partner(v).is_some()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.0.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Vertices of `0..n` not covered by the matching.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let mut cov = vec![false; n];
        for &(u, v) in &self.0 {
            cov[u] = true;
            cov[v] = true;
        }
        (0..n).filter(|&v| !cov[v]).collect()
    }

    pub fn is_matching_of(&self, t: &Tree) -> bool {
        self.0.iter().all(|&(u, v)| v < t.n() && t.has_edge(u, v))
    }
}

/// A maximum matching by greedy leaf elimination: walking the tree from the
/// leaves up, an unmatched vertex is matched to its parent whenever the parent
/// is still free.
pub fn maximum_matching(t: &Tree) -> Matching {
    let (parent, order) = t.rooted(0);
    let mut matched = vec![false; t.n()];
    let mut edges = Vec::new();
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != v && !matched[v] && !matched[p] {
            matched[v] = true;
            matched[p] = true;
            edges.push((v, p));
        }
    }
    Matching::new(edges).expect("greedy matching is a matching")
}

pub fn forest_maximum_matching(f: &Forest) -> Matching {
    let mut edges = Vec::new();
    for (t, labels) in f.iter() {
        edges.extend(maximum_matching(t).edges().iter().map(|&(u, v)| (labels[u], labels[v])));
    }
    Matching::new(edges).expect("components are disjoint")
}

/// A maximum matching leaving the red vertex `v` uncovered.
pub fn maximum_matching_avoiding(t: &Tree, c: &Coloring, v: usize) -> Result<Matching> {
    if c.color(v) != Color::Red {
        return Err(Error::NotRed(v));
    }
    let m = forest_maximum_matching(&t.remove_vertices(&[v]));
    let best = maximum_matching(t).len();
    if m.len() != best {
        return Err(Error::Invariant(format!("no maximum matching avoids red vertex {v}")));
    }
    Ok(m)
}

/// A maximum matching containing the red-green edge `u - v`: maximum
/// matchings of the pieces of `T \ {u, v}` plus the edge itself.
pub fn maximum_matching_containing(t: &Tree, c: &Coloring, u: usize, v: usize) -> Result<Matching> {
    let rg = matches!((c.color(u), c.color(v)), (Color::Red, Color::Green) | (Color::Green, Color::Red));
    if !t.has_edge(u, v) || !rg {
        return Err(Error::NotRedGreen(u, v));
    }
    let rest = forest_maximum_matching(&t.remove_vertices(&[u, v]));
    let m = Matching::new(rest.edges().iter().copied().chain([(u, v)]))?;
    let best = maximum_matching(t).len();
    if m.len() != best {
        return Err(Error::Invariant(format!("no maximum matching contains {u}-{v}")));
    }
    Ok(m)
}

/// Every maximum matching, edges chosen in sorted order by backtracking.
pub fn all_maximum_matchings(t: &Tree) -> Result<Vec<Matching>> {
    if t.n() > ORACLE_MAX_N {
        return Err(Error::SizeGuard { what: "matching enumeration tree size", limit: ORACLE_MAX_N, got: t.n() });
    }
    let edges = t.edges();
    let target = maximum_matching(t).len();
    let mut out = Vec::new();
    let mut used = vec![false; t.n()];
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        edges: &[(usize, usize)],
        target: usize,
        used: &mut [bool],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) {
        if chosen.len() == target {
            out.push(Matching(chosen.clone()));
            return;
        }
        if i == edges.len() || chosen.len() + (edges.len() - i) < target {
            return;
        }
        let (u, v) = edges[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            chosen.push((u, v));
            rec(i + 1, edges, target, used, chosen, out);
            chosen.pop();
            used[u] = false;
            used[v] = false;
        }
        rec(i + 1, edges, target, used, chosen, out);
    }
    rec(0, edges, target, &mut used, &mut chosen, &mut out);
    Ok(out)
}

/// All minimum vertex covers as bitmasks, by exhaustive search over subsets.
pub fn minimum_vertex_covers(t: &Tree) -> Result<Vec<u32>> {
    let n = t.n();
    if n > ORACLE_MAX_N {
        return Err(Error::SizeGuard { what: "vertex cover enumeration tree size", limit: ORACLE_MAX_N, got: n });
    }
    let masks: Vec<u32> = t.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    let mut best = u32::MAX;
    let mut out = Vec::new();
    for s in 0u32..(1u32 << n) {
        let size = s.count_ones();
        if size > best || !masks.iter().all(|&e| e & s != 0) {
            continue;
        }
        if size < best {
            best = size;
            out.clear();
        }
        out.push(s);
    }
    Ok(out)
}

/// Number of maximum independent sets (equivalently, of minimum vertex covers)
/// by dynamic programming over the rooted tree.
pub fn count_maximum_independent_sets(t: &Tree) -> u128 {
    let (parent, order) = t.rooted(0);
    // (size, count) with v excluded / included
    let mut out = vec![(0usize, 1u128); t.n()];
    let mut inn = vec![(1usize, 1u128); t.n()];
    let best = |a: (usize, u128), b: (usize, u128)| match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => (a.0, a.1.checked_add(b.1).expect("count overflow")),
    };
    for &v in order.iter().rev() {
        let p = parent[v];
        if p == v {
            continue;
        }
        let free = best(out[v], inn[v]);
        out[p] = (out[p].0 + free.0, out[p].1.checked_mul(free.1).expect("count overflow"));
        inn[p] = (inn[p].0 + out[v].0, inn[p].1.checked_mul(out[v].1).expect("count overflow"));
    }
    best(out[0], inn[0]).1
}

/// Streams every independent set (including the empty one) as a sorted
/// vertex list. Vertices are decided in natural order, "exclude" before
/// "include", so the empty set comes first.
pub struct IndependentSets {
    n: usize,
    nbr: Vec<u32>,
    stack: Vec<(usize, u32)>,
}

impl Iterator for IndependentSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while let Some((i, set)) = self.stack.pop() {
            if i == self.n {
                return Some((0..self.n).filter(|&v| set >> v & 1 == 1).collect());
            }
            if self.nbr[i] & set == 0 {
                self.stack.push((i + 1, set | 1 << i));
            }
            self.stack.push((i + 1, set));
        }
        None
    }
}

pub fn independent_sets(t: &Tree) -> Result<IndependentSets> {
    let n = t.n();
    if n > INDEPENDENT_MAX_N {
        return Err(Error::SizeGuard { what: "independent set enumeration tree size", limit: INDEPENDENT_MAX_N, got: n });
    }
    let nbr = (0..n).map(|v| t.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    Ok(IndependentSets { n, nbr, stack: vec![(0, 0)] })
}

/// A nonempty set of red vertices of one red-green component such that every
/// green vertex of the component has zero or two neighbors in it, with signs
/// alternating across each shared green neighbor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleSet {
    /// Sorted members.
    pub members: Vec<usize>,
    /// `signs[i]` belongs to `members[i]`; each connected part (through shared
    /// green neighbors) has its smallest member at `+1`.
    pub signs: Vec<i8>,
    /// Connected part of each member, numbered in order of smallest member.
    pub parts: Vec<usize>,
}

impl AdmissibleSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn part_count(&self) -> usize {
        self.parts.iter().max().map_or(0, |&p| p + 1)
    }

    pub fn sign_of(&self, v: usize) -> Option<i8> {
        self.members.binary_search(&v).ok().map(|i| self.signs[i])
    }

    /// Checks membership rules and sign alternation against the tree.
    pub fn validate(&self, t: &Tree, c: &Coloring, comp: &Component) -> Result<()> {
        if self.members.is_empty() {
            return Err(Error::Invariant("admissible set is empty".into()));
        }
        for &v in &self.members {
            if c.color(v) != Color::Red || !comp.contains(v) {
                return Err(Error::Invariant(format!("member {v} is not a red vertex of the component")));
            }
        }
        for g in comp.greens(c) {
            let inside: Vec<usize> = t.neighbors(g).iter().copied().filter(|&w| self.sign_of(w).is_some()).collect();
            match inside.as_slice() {
                [] => {}
                [a, b] => {
                    if self.sign_of(*a) == self.sign_of(*b) {
                        return Err(Error::Invariant(format!("{a} and {b} share green {g} with equal signs")));
                    }
                }
                _ => return Err(Error::Invariant(format!("green {g} has {} neighbors in the set", inside.len()))),
            }
        }
        Ok(())
    }
}

/// Assigns alternating signs by BFS over "shares a green neighbor".
fn sign_members(t: &Tree, c: &Coloring, members: Vec<usize>) -> Result<AdmissibleSet> {
    let k = members.len();
    let idx = |v: usize| members.binary_search(&v).ok();
    let mut signs = vec![0i8; k];
    let mut parts = vec![usize::MAX; k];
    let mut part = 0;
    for start in 0..k {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        parts[start] = part;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &g in t.neighbors(members[i]) {
                debug_assert_eq!(c.color(g), Color::Green);
                for &w in t.neighbors(g) {
                    let Some(j) = idx(w) else { continue };
                    if j == i {
                        continue;
                    }
                    if signs[j] == 0 {
                        signs[j] = -signs[i];
                        parts[j] = part;
                        queue.push_back(j);
                    } else if signs[j] == signs[i] {
                        return Err(Error::Invariant(format!(
                            "sign conflict between {} and {}",
                            members[i], members[j]
                        )));
                    }
                }
            }
        }
        part += 1;
    }
    Ok(AdmissibleSet { members, signs, parts })
}

pub const ADMISSIBLE_MAX_REDS: usize = 24;

/// Every admissible set of a component, by exhaustive filtering of the
/// nonempty subsets of its red vertices (in increasing bitmask order).
pub fn admissible_sets(t: &Tree, c: &Coloring, comp: &Component) -> Result<Vec<AdmissibleSet>> {
    let reds: Vec<usize> = comp.reds(c).collect();
    if reds.len() > ADMISSIBLE_MAX_REDS {
        return Err(Error::SizeGuard { what: "red vertices per component", limit: ADMISSIBLE_MAX_REDS, got: reds.len() });
    }
    let pos = |v: usize| reds.binary_search(&v).ok();
    // for each green vertex, the bitmask of its red neighbors
    let green_masks: Vec<u32> = comp
        .greens(c)
        .map(|g| t.neighbors(g).iter().filter_map(|&w| pos(w)).fold(0u32, |m, i| m | 1 << i))
        .collect();
    let mut out = Vec::new();
    for s in 1u32..(1u32 << reds.len()) {
        if green_masks.iter().all(|&m| matches!((m & s).count_ones(), 0 | 2)) {
            let members = (0..reds.len()).filter(|&i| s >> i & 1 == 1).map(|i| reds[i]).collect();
            out.push(sign_members(t, c, members)?);
        }
    }
    Ok(out)
}

/// Grows an admissible set from the red vertex `u`: while some green vertex
/// has exactly one neighbor in the set, add its smallest other red neighbor.
pub fn grow_admissible(t: &Tree, c: &Coloring, comp: &Component, u: usize) -> Result<AdmissibleSet> {
    if c.color(u) != Color::Red || !comp.contains(u) {
        return Err(Error::NotRed(u));
    }
    let mut inside = vec![false; t.n()];
    inside[u] = true;
    loop {
        let lonely = comp.greens(c).find(|&g| t.neighbors(g).iter().filter(|&&w| inside[w]).count() == 1);
        let Some(g) = lonely else { break };
        let w = *t
            .neighbors(g)
            .iter()
            .find(|&&w| !inside[w] && c.color(w) == Color::Red)
            .expect("green vertices have two red neighbors");
        inside[w] = true;
    }
    let members = (0..t.n()).filter(|&v| inside[v]).collect();
    let s = sign_members(t, c, members)?;
    s.validate(t, c, comp)?;
    Ok(s)
}

/// Convenience: admissible sets of every component of `t`.
pub fn all_admissible_sets(t: &Tree) -> Result<Vec<Vec<AdmissibleSet>>> {
    let c = canonical_coloring(t);
    let p = crate::coloring::red_green_components(t, &c);
    p.components.iter().map(|comp| admissible_sets(t, &c, comp)).collect()
}
