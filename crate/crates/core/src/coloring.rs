//! The canonical red / orange / green coloring of a tree.
//!
//! Green vertices lie in every minimum vertex cover, orange ones in some but
//! not all, red ones in none. [`canonical_coloring`] computes it with the
//! local propagation rule; [`coloring_by_vertex_covers`] and
//! [`coloring_by_matchings`] are exponential oracles used to check it.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Forest, Tree};
use crate::sets::{all_maximum_matchings, minimum_vertex_covers};

/// Largest tree accepted by the exponential oracles.
pub const ORACLE_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Red,
    Orange,
    Green,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "Red",
            Color::Orange => "Orange",
            Color::Green => "Green",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<Color>,
    /// Forced dominoes pairing the orange vertices, normalized `(u < v)` and sorted.
    pub dominoes: Vec<(usize, usize)>,
}

impl Coloring {
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }

    /// `r(T) - g(T)`.
    pub fn dimension(&self) -> usize {
        let r = self.count(Color::Red);
        let g = self.count(Color::Green);
        debug_assert!(r >= g);
        r - g
    }

    /// Orange partner of `v`, if `v` is orange.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.dominoes.iter().find_map(|&(a, b)| {
            if v == a {
                Some(b)
            } else if v == b {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Checks the local characterization: the dominoes are a perfect matching
    /// of the orange vertices using tree edges, every green vertex has at
    /// least two red neighbors and every red vertex has only green neighbors.
    pub fn check_local_characterization(&self, t: &Tree) -> Result<()> {
        let mut covered = vec![false; t.n()];
        for &(u, v) in &self.dominoes {
            if !t.has_edge(u, v) {
                return Err(Error::Invariant(format!("domino {u}-{v} is not an edge")));
            }
            for w in [u, v] {
                if self.colors[w] != Color::Orange || covered[w] {
                    return Err(Error::Invariant(format!("domino {u}-{v} misplaced at {w}")));
                }
                covered[w] = true;
            }
        }
        for v in 0..t.n() {
            let reds = t.neighbors(v).iter().filter(|&&w| self.colors[w] == Color::Red).count();
            match self.colors[v] {
                Color::Orange if !covered[v] => {
                    return Err(Error::Invariant(format!("orange vertex {v} not in a domino")))
                }
                Color::Green if reds < 2 => {
                    return Err(Error::Invariant(format!("green vertex {v} has {reds} red neighbors")))
                }
                Color::Red if t.neighbors(v).iter().any(|&w| self.colors[w] != Color::Green) => {
                    return Err(Error::Invariant(format!("red vertex {v} has a non-green neighbor")))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// The propagation algorithm: start all red; whenever a vertex has exactly one
/// red neighbor, that neighbor turns green (recording a domino when the
/// vertex itself is green); at the fixpoint, green vertices without red
/// neighbors become orange.
pub fn canonical_coloring(t: &Tree) -> Coloring {
    propagate(t, None::<&mut rand::rngs::StdRng>)
}

/// Same fixpoint with the work list processed in a random order.
pub fn canonical_coloring_shuffled<R: Rng>(t: &Tree, rng: &mut R) -> Coloring {
    propagate(t, Some(rng))
}

fn propagate<R: Rng>(t: &Tree, mut rng: Option<&mut R>) -> Coloring {
    let n = t.n();
    let mut green = vec![false; n];
    let mut red_nbrs: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut dominoes = Vec::new();
    let mut pending: Vec<usize> = (0..n).filter(|&v| red_nbrs[v] == 1).collect();
    pending.reverse();
    loop {
        let v = match rng.as_deref_mut() {
            Some(r) if !pending.is_empty() => {
                let i = r.gen_range(0..pending.len());
                pending.swap_remove(i)
            }
            _ => match pending.pop() {
                Some(v) => v,
                None => break,
            },
        };
        if red_nbrs[v] != 1 {
            continue;
        }
        let w = *t.neighbors(v).iter().find(|&&w| !green[w]).expect("one red neighbor");
        green[w] = true;
        if green[v] {
            dominoes.push((v.min(w), v.max(w)));
        }
        for &x in t.neighbors(w) {
            red_nbrs[x] -= 1;
            if red_nbrs[x] == 1 {
                pending.push(x);
            }
        }
        if red_nbrs[w] == 1 {
            pending.push(w);
        }
    }
    let colors = (0..n)
        .map(|v| match (green[v], red_nbrs[v]) {
            (false, _) => Color::Red,
            (true, 0) => Color::Orange,
            (true, _) => Color::Green,
        })
        .collect();
    dominoes.sort_unstable();
    Coloring { colors, dominoes }
}

fn oracle_guard(t: &Tree) -> Result<()> {
    if t.n() > ORACLE_MAX_N {
        return Err(Error::SizeGuard { what: "exponential oracle tree size", limit: ORACLE_MAX_N, got: t.n() });
    }
    Ok(())
}

/// Colors from membership in minimum vertex covers. `dominoes` is left empty.
pub fn coloring_by_vertex_covers(t: &Tree) -> Result<Coloring> {
    oracle_guard(t)?;
    let covers = minimum_vertex_covers(t)?;
    let all = covers.iter().fold(u32::MAX, |acc, &c| acc & c);
    let some = covers.iter().fold(0u32, |acc, &c| acc | c);
    let colors = (0..t.n())
        .map(|v| {
            let bit = 1u32 << v;
            if all & bit != 0 {
                Color::Green
            } else if some & bit != 0 {
                Color::Orange
            } else {
                Color::Red
            }
        })
        .collect();
    Ok(Coloring { colors, dominoes: Vec::new() })
}

/// Colors and forced dominoes from the set of all maximum matchings.
pub fn coloring_by_matchings(t: &Tree) -> Result<Coloring> {
    oracle_guard(t)?;
    let matchings = all_maximum_matchings(t)?;
    let n = t.n();
    // per vertex: the set of dominoes covering it, and whether it is ever uncovered
    let mut seen: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); n];
    let mut uncovered = vec![false; n];
    for m in &matchings {
        let mut cov = vec![None; n];
        for &(u, v) in m.edges() {
            cov[u] = Some((u, v));
            cov[v] = Some((u, v));
        }
        for v in 0..n {
            match cov[v] {
                Some(d) => {
                    seen[v].insert(d);
                }
                None => uncovered[v] = true,
            }
        }
    }
    let colors: Vec<Color> = (0..n)
        .map(|v| {
            if uncovered[v] {
                Color::Red
            } else if seen[v].len() == 1 {
                Color::Orange
            } else {
                Color::Green
            }
        })
        .collect();
    let dominoes: BTreeSet<(usize, usize)> = (0..n)
        .filter(|&v| colors[v] == Color::Orange)
        .map(|v| *seen[v].iter().next().expect("orange vertex is covered"))
        .collect();
    Ok(Coloring { colors, dominoes: dominoes.into_iter().collect() })
}

/// One red-green component: a maximal subtree connected through edges with
/// one red and one green end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Sorted vertex labels.
    pub vertices: Vec<usize>,
    /// Red-green edges, normalized and sorted.
    pub edges: Vec<(usize, usize)>,
}

impl Component {
    /// Stable handle: the smallest vertex label.
    pub fn index(&self) -> usize {
        self.vertices[0]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn reds<'a>(&'a self, c: &'a Coloring) -> impl Iterator<Item = usize> + 'a {
        self.vertices.iter().copied().filter(move |&v| c.color(v) == Color::Red)
    }

    pub fn greens<'a>(&'a self, c: &'a Coloring) -> impl Iterator<Item = usize> + 'a {
        self.vertices.iter().copied().filter(move |&v| c.color(v) == Color::Green)
    }

    /// `r - g` restricted to the component.
    pub fn dimension(&self, c: &Coloring) -> usize {
        self.reds(c).count() - self.greens(c).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RedGreenPartition {
    /// Components sorted by their smallest vertex.
    pub components: Vec<Component>,
    /// Component position of every vertex; `None` for orange vertices.
    pub component_of: Vec<Option<usize>>,
}

impl RedGreenPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Position of the component whose smallest vertex is `index`.
    pub fn by_index(&self, index: usize) -> Option<usize> {
        self.components.iter().position(|c| c.index() == index)
    }
}

pub fn red_green_components(t: &Tree, c: &Coloring) -> RedGreenPartition {
    let n = t.n();
    let rg_edge = |u: usize, v: usize| {
        matches!((c.color(u), c.color(v)), (Color::Red, Color::Green) | (Color::Green, Color::Red))
    };
    let mut component_of = vec![None; n];
    let mut components = Vec::new();
    for start in 0..n {
        if c.color(start) == Color::Orange || component_of[start].is_some() {
            continue;
        }
        let id = components.len();
        component_of[start] = Some(id);
        let mut verts = vec![start];
        let mut i = 0;
        while i < verts.len() {
            let u = verts[i];
            i += 1;
            for &w in t.neighbors(u) {
                if rg_edge(u, w) && component_of[w].is_none() {
                    component_of[w] = Some(id);
                    verts.push(w);
                }
            }
        }
        verts.sort_unstable();
        let edges = t
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| component_of[u] == Some(id) && component_of[v] == Some(id) && rg_edge(u, v))
            .collect();
        components.push(Component { vertices: verts, edges });
    }
    RedGreenPartition { components, component_of }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TreeKind {
    Orange,
    Unimodal,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeClass {
    pub dimension: usize,
    pub kind: TreeKind,
}

pub fn classify(t: &Tree) -> TreeClass {
    let dimension = dimension(t);
    let kind = match dimension {
        0 => TreeKind::Orange,
        1 => TreeKind::Unimodal,
        _ => TreeKind::Other,
    };
    TreeClass { dimension, kind }
}

pub fn dimension(t: &Tree) -> usize {
    canonical_coloring(t).dimension()
}

pub fn forest_dimension(f: &Forest) -> usize {
    f.components.iter().map(dimension).sum()
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn integer_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in col + 1..cols {
                let num = m[rank][col]
                    .checked_mul(m[r][k])
                    .and_then(|a| m[r][col].checked_mul(m[rank][k]).and_then(|b| a.checked_sub(b)))
                    .expect("Bareiss overflow");
                debug_assert_eq!(num % prev, 0);
                m[r][k] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dimension of the kernel of the adjacency matrix.
pub fn adjacency_nullity(t: &Tree) -> usize {
    let n = t.n();
    let mut m = vec![vec![0i128; n]; n];
    for &(u, v) in t.edges() {
        m[u][v] = 1;
        m[v][u] = 1;
    }
    n - integer_rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    /// An orange domino hanging off a red-green path of five.
    fn domino_and_path() -> Tree {
        Tree::new(7, [(0, 1), (1, 3), (3, 2), (3, 4), (4, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn domino_and_path_coloring() {
        let c = canonical_coloring(&domino_and_path());
        assert_eq!(c.colors, vec![Orange, Orange, Red, Green, Red, Green, Red]);
        assert_eq!(c.dominoes, vec![(0, 1)]);
        assert_eq!(coloring_by_vertex_covers(&domino_and_path()).unwrap().colors, c.colors);
        assert_eq!(coloring_by_matchings(&domino_and_path()).unwrap(), c);
    }

    #[test]
    fn single_vertex_is_red() {
        assert_eq!(canonical_coloring(&Tree::single()).colors, vec![Red]);
    }

    #[test]
    fn path4_all_orange() {
        let c = canonical_coloring(&Tree::path(4));
        assert_eq!(c.colors, vec![Orange; 4]);
        assert_eq!(c.dominoes, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn oracles_small_cases() {
        let e = Tree::path(2);
        assert_eq!(coloring_by_vertex_covers(&e).unwrap().colors, vec![Orange, Orange]);
        assert_eq!(coloring_by_matchings(&e).unwrap().dominoes, vec![(0, 1)]);
        let s = Tree::star(3);
        assert_eq!(coloring_by_vertex_covers(&s).unwrap().colors, vec![Green, Red, Red, Red]);
        assert_eq!(coloring_by_matchings(&Tree::path(3)).unwrap().colors, vec![Red, Green, Red]);
        assert!(matches!(coloring_by_matchings(&Tree::path(21)), Err(Error::SizeGuard { .. })));
        assert!(matches!(coloring_by_vertex_covers(&Tree::path(21)), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn components() {
        let t = domino_and_path();
        let p = red_green_components(&t, &canonical_coloring(&t));
        assert_eq!(p.len(), 1);
        assert_eq!(p.components[0].vertices, vec![2, 3, 4, 5, 6]);
        assert_eq!(p.component_of[0], None);

        let p4 = Tree::path(4);
        assert!(red_green_components(&p4, &canonical_coloring(&p4)).is_empty());

        // two 3-stars joined center to center
        let two = Tree::new(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)]).unwrap();
        let c = canonical_coloring(&two);
        assert_eq!(c.color(0), Green);
        assert_eq!(c.color(4), Green);
        let p = red_green_components(&two, &c);
        assert_eq!(p.len(), 2);
        assert_eq!(p.components[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(p.components[1].vertices, vec![4, 5, 6, 7]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&Tree::path(7)), 1);
        assert_eq!(dimension(&Tree::dynkin_d(4).unwrap()), 2);
        assert_eq!(dimension(&Tree::path(4)), 0);
        assert_eq!(adjacency_nullity(&Tree::dynkin_d(4).unwrap()), 2);
        assert_eq!(adjacency_nullity(&Tree::path(7)), 1);
        assert_eq!(adjacency_nullity(&Tree::single()), 1);
        assert_eq!(classify(&Tree::path(5)).kind, TreeKind::Unimodal);
    }

    #[test]
    fn dynkin_classes() {
        for n in 2..=12 {
            let expected = if n % 2 == 0 { TreeKind::Orange } else { TreeKind::Unimodal };
            assert_eq!(classify(&Tree::path(n)).kind, expected, "A_{n}");
        }
        for n in 4..=12 {
            let d = dimension(&Tree::dynkin_d(n).unwrap());
            assert_eq!(d, if n % 2 == 0 { 2 } else { 1 }, "D_{n}");
        }
        for n in 5..=12 {
            let d = dimension(&Tree::dynkin_e(n).unwrap());
            assert_eq!(d, if n % 2 == 0 { 0 } else { 1 }, "E_{n}");
        }
    }
}
