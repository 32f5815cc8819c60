//! Trees and forests with 0-based vertex labels.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A finite tree on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are
/// sorted as well, so iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree, checking that the edge set is connected and acyclic.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotATree("a tree needs at least one vertex".into()));
        }
        let mut norm: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NotATree(format!("edge {u}-{v} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotATree("duplicate edge".into()));
        }
        if norm.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices (a tree has n - 1)",
                norm.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let t = Tree { n, edges: norm, adj };
        if t.bfs_order(0).len() != n {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(t)
    }

    pub fn single() -> Self {
        Tree { n: 1, edges: Vec::new(), adj: vec![Vec::new()] }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Tree::new(n, (1..n).map(|i| (i - 1, i))).expect("path is a tree")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Tree::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is a tree")
    }

    /// Type D: two leaves 0 and 1 on vertex 2, followed by the path 2 - 3 - ... - (n-1).
    pub fn dynkin_d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("D_n needs n >= 4, got {n}")));
        }
        let mut edges = vec![(0, 2), (1, 2)];
        edges.extend((3..n).map(|i| (i - 1, i)));
        Tree::new(n, edges)
    }

    /// Type E: a triple point with branches of 1, 2 and n-4 vertices.
    ///
    /// Labels follow the usual picture: `0 - 1 - 3 - 4 - ... - (n-1)` with `2`
    /// hanging off the triple point `3`.
    pub fn dynkin_e(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidArgument(format!("E_n needs n >= 5, got {n}")));
        }
        let mut edges = vec![(0, 1), (1, 3), (2, 3)];
        edges.extend((4..n).map(|i| (i - 1, i)));
        Tree::new(n, edges)
    }

    /// Builds a tree from a Prüfer sequence of length `n - 2`.
    pub fn from_prufer(n: usize, seq: &[usize]) -> Result<Self> {
        if n < 2 {
            return Ok(Tree::single());
        }
        if seq.len() != n - 2 || seq.iter().any(|&x| x >= n) {
            return Err(Error::InvalidArgument("bad Prüfer sequence".into()));
        }
        let mut degree = vec![1usize; n];
        for &x in seq {
            degree[x] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &x in seq {
            let leaf = (0..n).find(|&i| degree[i] == 1).expect("a leaf always exists");
            edges.push((leaf, x));
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
        edges.push((rest[0], rest[1]));
        Tree::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.degree(v) <= 1)
    }

    pub fn is_path(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) <= 2)
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Parent array for the tree rooted at `root` (`parent[root] == root`) and
    /// the BFS order used to build it.
    pub(crate) fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(root);
        let mut parent = vec![usize::MAX; self.n];
        parent[root] = root;
        for &u in &order {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                }
            }
        }
        (parent, order)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tree {
        Tree::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling preserves trees")
    }

    /// Returns a tree with one extra vertex `n` attached to `v`.
    pub fn with_leaf(&self, v: usize) -> Tree {
        let mut edges = self.edges.clone();
        edges.push((v, self.n));
        Tree::new(self.n + 1, edges).expect("adding a leaf preserves trees")
    }

    /// Induced forest on the complement of `removed`.
    pub fn remove_vertices(&self, removed: &[usize]) -> Forest {
        let mut keep = vec![true; self.n];
        for &v in removed {
            keep[v] = false;
        }
        self.induced(&keep)
    }

    /// Induced forest on the vertices flagged in `keep`.
    pub fn induced(&self, keep: &[bool]) -> Forest {
        let mut comp_of = vec![usize::MAX; self.n];
        let mut components = Vec::new();
        let mut labels = Vec::new();
        for start in 0..self.n {
            if !keep[start] || comp_of[start] != usize::MAX {
                continue;
            }
            let cid = components.len();
            let mut verts = vec![start];
            comp_of[start] = cid;
            let mut i = 0;
            while i < verts.len() {
                let u = verts[i];
                i += 1;
                for &w in &self.adj[u] {
                    if keep[w] && comp_of[w] == usize::MAX {
                        comp_of[w] = cid;
                        verts.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let local = |g: usize| verts.binary_search(&g).expect("vertex in component");
            let edges: Vec<(usize, usize)> = self
                .edges
                .iter()
                .filter(|&&(u, v)| comp_of[u] == cid && comp_of[v] == cid && keep[u] && keep[v])
                .map(|&(u, v)| (local(u), local(v)))
                .collect();
            components.push(Tree::new(verts.len(), edges).expect("induced connected subgraph of a tree"));
            labels.push(verts);
        }
        Forest { components, labels }
    }

    /// Subtree rooted at `child` when the edge to `parent` is cut: the
    /// component of `child` in `T \ {parent}`.
    pub fn branch_vertices(&self, parent: usize, child: usize) -> Vec<usize> {
        let mut out = vec![child];
        let mut stack = vec![(child, parent)];
        while let Some((u, from)) = stack.pop() {
            for &w in &self.adj[u] {
                if w != from {
                    out.push(w);
                    stack.push((w, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_edge_list(&self, one_based: bool) -> String {
        let off = usize::from(one_based);
        let mut s = String::new();
        for &(u, v) in &self.edges {
            s.push_str(&format!("{} {}\n", u + off, v + off));
        }
        s
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({}; {:?})", self.n, self.edges)
    }
}

/// Parses an edge list with one `u v` pair per line. Blank lines and lines
/// starting with `#` are skipped. The vertex count is the largest label plus
/// one (after shifting when `one_based`).
pub fn parse_edge_list(text: &str, one_based: bool) -> Result<Tree> {
    let mut edges = Vec::new();
    let mut max = None::<usize>;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = it
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: expected two vertices", lineno + 1)))?;
            let x: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad vertex {tok:?}", lineno + 1)))?;
            if one_based {
                x.checked_sub(1)
                    .ok_or_else(|| Error::Parse(format!("line {}: vertex 0 in 1-based input", lineno + 1)))
            } else {
                Ok(x)
            }
        };
        let u = next()?;
        let v = next()?;
        max = Some(max.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    match max {
        None => Ok(Tree::single()),
        Some(m) => Tree::new(m + 1, edges),
    }
}

/// A disjoint union of trees. `labels[c][i]` is the label, in the parent
/// graph, of local vertex `i` of component `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    pub components: Vec<Tree>,
    pub labels: Vec<Vec<usize>>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest { components: Vec::new(), labels: Vec::new() }
    }

    pub fn from_tree(t: Tree) -> Self {
        let labels = vec![(0..t.n()).collect()];
        Forest { components: vec![t], labels }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(Tree::n).sum()
    }

    /// `(component, local index)` of a parent label, if present.
    pub fn locate(&self, label: usize) -> Option<(usize, usize)> {
        self.labels
            .iter()
            .enumerate()
            .find_map(|(c, l)| l.binary_search(&label).ok().map(|i| (c, i)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tree, &[usize])> {
        self.components.iter().zip(self.labels.iter().map(Vec::as_slice))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_trees() {
        assert!(matches!(Tree::new(3, [(0, 1), (1, 0)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::new(3, [(0, 0), (1, 2)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::new(4, [(0, 1), (2, 3), (3, 2)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::new(4, [(0, 1), (1, 2), (2, 0)]), Err(Error::NotATree(_))));
        assert!(matches!(Tree::new(0, []), Err(Error::NotATree(_))));
    }

    #[test]
    fn remove_middle_of_path3() {
        let f = Tree::path(3).remove_vertices(&[1]);
        assert_eq!(f.len(), 2);
        assert!(f.components.iter().all(|c| c.n() == 1));
        assert_eq!(f.labels, vec![vec![0], vec![2]]);
    }

    #[test]
    fn remove_end_of_path7() {
        let f = Tree::path(7).remove_vertices(&[0]);
        assert_eq!(f.len(), 1);
        assert_eq!(f.components[0], Tree::path(6));
        assert_eq!(f.labels[0], vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn d4_remove_center() {
        let d4 = Tree::dynkin_d(4).unwrap();
        assert_eq!(d4.degree(2), 3);
        let f = d4.remove_vertices(&[2]);
        assert_eq!(f.len(), 3);
        assert_eq!(f.vertex_count(), 3);
    }

    #[test]
    fn e_family_shape() {
        let e6 = Tree::dynkin_e(6).unwrap();
        let mut degs: Vec<usize> = (0..6).map(|v| e6.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 2, 2, 3]);
        // branch lengths from the triple point: 1, 2, n - 4
        let mut lens: Vec<usize> = e6.neighbors(3).iter().map(|&c| e6.branch_vertices(3, c).len()).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![1, 2, 2]);
    }

    #[test]
    fn edge_list_parsing() {
        let t = parse_edge_list("1 2\n2 3\n# comment\n\n", true).unwrap();
        assert_eq!(t, Tree::path(3));
        let t = parse_edge_list("0 1\n1 2\n", false).unwrap();
        assert_eq!(t, Tree::path(3));
        assert!(matches!(parse_edge_list("0 1\n1 x\n", false), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("0 1\n", true), Err(Error::Parse(_))));
    }

    #[test]
    fn prufer_decodes() {
        let t = Tree::from_prufer(4, &[0, 0]).unwrap();
        assert_eq!(t.degree(0), 3);
    }
}
