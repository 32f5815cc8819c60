//! Coefficient calculus on exchange relations: jumps, normalization onto a
//! maximum matching, ranks and the genericity condition.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::coloring::{canonical_coloring, red_green_components, Color, Coloring, Component};
use crate::counting::{Mode, PhiAssignment};
use crate::error::{Error, Result};
use crate::fq::FqContext;
use crate::graph::Tree;
use crate::sets::{admissible_sets, maximum_matching, AdmissibleSet, Matching};

/// Laurent monomial with coefficient 1: symbol (a vertex) to exponent.
pub type Monomial = BTreeMap<usize, i64>;

/// One monomial coefficient per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientState {
    pub coeff: Vec<Monomial>,
}

impl CoefficientState {
    /// All coefficients equal to 1.
    pub fn trivial(n: usize) -> Self {
        CoefficientState { coeff: vec![Monomial::new(); n] }
    }

    /// Vertex `i` carries its own symbol `a_i`.
    pub fn symbolic(n: usize) -> Self {
        Self::on(n, 0..n)
    }

    /// The symbol `a_i` on each listed vertex, 1 elsewhere.
    pub fn on(n: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::trivial(n);
        for v in vertices {
            s.coeff[v].insert(v, 1);
        }
        s
    }

    pub fn is_trivial_at(&self, v: usize) -> bool {
        self.coeff[v].is_empty()
    }

    /// Vertices with a nontrivial coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeff.len()).filter(|&v| !self.is_trivial_at(v)).collect()
    }

    /// Every symbol occurring anywhere.
    pub fn symbols(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.coeff.iter().flat_map(|m| m.keys().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Values of the coefficients for symbol values `values[symbol]`.
    pub fn evaluate(&self, values: &[u64], ctx: &FqContext) -> Vec<u64> {
        self.coeff
            .iter()
            .map(|m| m.iter().fold(1, |acc, (&s, &e)| ctx.mul(acc, ctx.pow_signed(values[s], e))))
            .collect()
    }

    /// Tabular rendering: one line per vertex.
    pub fn table(&self, offset: usize) -> String {
        let mut out = String::new();
        for (v, m) in self.coeff.iter().enumerate() {
            out.push_str(&format!("{}: {}\n", v + offset, render_monomial(m, offset)));
        }
        out
    }
}

pub fn render_monomial(m: &Monomial, offset: usize) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(&s, &e)| if e == 1 { format!("a{}", s + offset) } else { format!("a{}^{}", s + offset, e) })
        .collect::<Vec<_>>()
        .join(" ")
}

fn divide(target: &mut Monomial, by: &Monomial) {
    for (&s, &e) in by {
        let x = target.entry(s).or_insert(0);
        *x -= e;
        if *x == 0 {
            target.remove(&s);
        }
    }
}

/// Which kind of jump moves `u` over its neighbor `v`, if allowed.
pub fn jump_allowed(t: &Tree, c: &Coloring, u: usize, v: usize) -> Result<()> {
    let reject = |reason: &str| Err(Error::DisallowedJump { u, v, reason: reason.into() });
    if u >= t.n() || v >= t.n() || !t.has_edge(u, v) {
        return reject("not an edge");
    }
    match (c.color(u), c.color(v)) {
        (Color::Red, Color::Green) | (Color::Green, Color::Red) => Ok(()),
        (Color::Orange, Color::Orange) if c.partner(u) == Some(v) => Ok(()),
        (Color::Orange, Color::Orange) => reject("orange vertices may only jump over their domino partner"),
        _ => reject("only red over green, green over red, or orange over its partner"),
    }
}

/// Moves the coefficient of `u` across `v`: `u` becomes trivial and every
/// other neighbor of `v` is divided by the old coefficient of `u`.
pub fn jump(s: &CoefficientState, t: &Tree, c: &Coloring, u: usize, v: usize) -> Result<CoefficientState> {
    jump_allowed(t, c, u, v)?;
    let mut out = s.clone();
    let old = std::mem::take(&mut out.coeff[u]);
    for &w in t.neighbors(v) {
        if w != u {
            divide(&mut out.coeff[w], &old);
        }
    }
    Ok(out)
}

/// The same move on field values.
pub fn jump_values(alpha: &[u64], t: &Tree, c: &Coloring, u: usize, v: usize, ctx: &FqContext) -> Result<Vec<u64>> {
    jump_allowed(t, c, u, v)?;
    let mut out = alpha.to_vec();
    let inv = ctx.inv(alpha[u]).ok_or(Error::ZeroAlpha(u))?;
    out[u] = 1;
    for &w in t.neighbors(v) {
        if w != u {
            out[w] = ctx.mul(out[w], inv);
        }
    }
    Ok(out)
}

/// The auxiliary graph: `u -> w` whenever `u - v` is a domino and `v - w`
/// another edge. Returned as sorted adjacency lists.
pub fn auxiliary_graph(t: &Tree, m: &Matching) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); t.n()];
    for &(a, b) in m.edges() {
        for (u, v) in [(a, b), (b, a)] {
            out[u].extend(t.neighbors(v).iter().copied().filter(|&w| w != u));
        }
    }
    for l in &mut out {
        l.sort_unstable();
    }
    out
}

/// Linear extension used when normalizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// Among available vertices, take the smallest.
    Smallest,
    /// Among available vertices, take the largest.
    Largest,
    /// Among available vertices, take a random one.
    Random(u64),
}

/// A topological order of the auxiliary graph; errors if it has a cycle.
pub fn linear_extension(graph: &[Vec<usize>], how: Extension) -> Result<Vec<usize>> {
    let n = graph.len();
    let mut indeg = vec![0usize; n];
    for l in graph {
        for &w in l {
            indeg[w] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut rng = match how {
        Extension::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    while !ready.is_empty() {
        let i = match how {
            Extension::Smallest => (0..ready.len()).min_by_key(|&i| ready[i]).expect("nonempty"),
            Extension::Largest => (0..ready.len()).max_by_key(|&i| ready[i]).expect("nonempty"),
            Extension::Random(_) => rng.as_mut().expect("seeded").gen_range(0..ready.len()),
        };
        let u = ready.swap_remove(i);
        order.push(u);
        for &w in &graph[u] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Invariant("auxiliary graph has a directed cycle".into()));
    }
    Ok(order)
}

pub fn normalize_to_matching(s: &CoefficientState, t: &Tree, c: &Coloring, m: &Matching) -> Result<CoefficientState> {
    normalize_with(s, t, c, m, Extension::Smallest)
}

/// Jumps every covered vertex over its partner, following a linear
/// extension of the auxiliary graph. The result is supported on the
/// vertices left uncovered by `m`.
pub fn normalize_with(
    s: &CoefficientState,
    t: &Tree,
    c: &Coloring,
    m: &Matching,
    how: Extension,
) -> Result<CoefficientState> {
    if !m.is_matching_of(t) {
        return Err(Error::InvalidArgument("matching uses a non-edge".into()));
    }
    let expected = maximum_matching(t).len();
    if m.len() != expected {
        return Err(Error::NotMaximum { got: m.len(), expected });
    }
    let order = linear_extension(&auxiliary_graph(t, m), how)?;
    let mut state = s.clone();
    for u in order {
        if let Some(v) = m.partner(u) {
            if !state.is_trivial_at(u) {
                state = jump(&state, t, c, u, v)?;
            }
        }
    }
    Ok(state)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRank {
    pub index: usize,
    pub dimension: usize,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub components: Vec<ComponentRank>,
    /// Total dimension of generic components.
    pub rank: usize,
    /// Total dimension of versal components.
    pub versal_rank: usize,
}

pub fn rank_profile(t: &Tree, phi: &PhiAssignment) -> Result<RankProfile> {
    let c = canonical_coloring(t);
    let p = red_green_components(t, &c);
    let mut components = Vec::new();
    let (mut rank, mut versal_rank) = (0, 0);
    for comp in &p.components {
        let mode = phi.get(comp.index()).ok_or_else(|| Error::Phi(format!("no mode for component {}", comp.index())))?;
        let dimension = comp.dimension(&c);
        match mode {
            Mode::Generic => rank += dimension,
            Mode::Versal => versal_rank += dimension,
        }
        components.push(ComponentRank { index: comp.index(), dimension, mode });
    }
    if let Some((k, _)) = phi.iter().find(|(k, _)| p.by_index(*k).is_none()) {
        return Err(Error::Phi(format!("{k} is not the index of a red-green component")));
    }
    Ok(RankProfile { components, rank, versal_rank })
}

/// Sign patterns for one admissible set: the stored orientation with every
/// combination of flips of its parts other than the first.
fn orientations(s: &AdmissibleSet) -> impl Iterator<Item = Vec<i8>> + '_ {
    let parts = s.part_count();
    (0u32..1 << parts.saturating_sub(1)).map(move |flips| {
        s.signs
            .iter()
            .zip(&s.parts)
            .map(|(&sg, &p)| if p > 0 && flips >> (p - 1) & 1 == 1 { -sg } else { sg })
            .collect()
    })
}

/// Whether the alternating product over `s` avoids `(-1)^{|S|}` for every
/// relative orientation of its parts.
pub fn set_condition_holds(s: &AdmissibleSet, signs: &[i8], alpha: &[u64], ctx: &FqContext) -> bool {
    let target = if s.len() % 2 == 0 { 1 } else { ctx.q() - 1 };
    let base = AdmissibleSet { signs: signs.to_vec(), ..s.clone() };
    let all: Vec<Vec<i8>> = orientations(&base).collect();
    all.iter().all(|sg| {
        let prod = s
            .members
            .iter()
            .zip(sg)
            .fold(1, |acc, (&v, &e)| ctx.mul(acc, ctx.pow_signed(alpha[v], e as i64)));
        prod != target
    })
}

/// Precomputed admissible sets of one component, for repeated checks.
#[derive(Clone, Debug)]
pub struct GenericityChecker {
    pub component: Component,
    pub sets: Vec<AdmissibleSet>,
}

impl GenericityChecker {
    pub fn new(t: &Tree, c: &Coloring, comp: &Component) -> Result<Self> {
        Ok(GenericityChecker { component: comp.clone(), sets: admissible_sets(t, c, comp)? })
    }

    /// `alpha` holds one value per vertex of the tree.
    pub fn check(&self, alpha: &[u64], ctx: &FqContext, c: &Coloring) -> Result<bool> {
        for v in self.component.reds(c) {
            if alpha[v] % ctx.q() == 0 {
                return Err(Error::ZeroAlpha(v));
            }
        }
        Ok(self.sets.iter().all(|s| set_condition_holds(s, &s.signs, alpha, ctx)))
    }
}

/// For every admissible set of the component, the alternating product of
/// `alpha` differs from `(-1)^{|S|}` in the prime field.
pub fn genericity_check(t: &Tree, c: &Coloring, comp: &Component, alpha: &[u64], ctx: &FqContext) -> Result<bool> {
    GenericityChecker::new(t, c, comp)?.check(alpha, ctx, c)
}

/// Symbolic version: every alternating product of the coefficients of
/// `state` is a non-constant monomial, so generic values exist over all
/// large enough fields.
pub fn formal_genericity(t: &Tree, c: &Coloring, comp: &Component, state: &CoefficientState) -> Result<bool> {
    for s in admissible_sets(t, c, comp)? {
        for signs in orientations(&s) {
            let mut prod = Monomial::new();
            for (&v, &e) in s.members.iter().zip(&signs) {
                let m: Monomial = state.coeff[v].iter().map(|(&k, &x)| (k, -x * e as i64)).collect();
                divide(&mut prod, &m);
            }
            if prod.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> FqContext {
        FqContext::new(q).unwrap()
    }

    #[test]
    fn jump_examples() {
        let p2 = Tree::path(2);
        let c = canonical_coloring(&p2);
        let s = CoefficientState::on(2, [0]);
        assert_eq!(jump(&s, &p2, &c, 0, 1).unwrap(), CoefficientState::trivial(2));

        let p3 = Tree::path(3);
        let c = canonical_coloring(&p3);
        let s = CoefficientState::on(3, [0]);
        let j = jump(&s, &p3, &c, 0, 1).unwrap();
        assert!(j.is_trivial_at(0));
        assert_eq!(j.coeff[2], Monomial::from([(0, -1)]));
        assert!(j.is_trivial_at(1));

        let t = CoefficientState::on(3, [2]);
        assert_eq!(jump(&t, &p3, &c, 0, 1).unwrap(), t);
    }

    #[test]
    fn disallowed_jumps() {
        let p4 = Tree::path(4);
        let c = canonical_coloring(&p4);
        let s = CoefficientState::symbolic(4);
        assert!(jump(&s, &p4, &c, 0, 1).is_ok());
        assert!(matches!(jump(&s, &p4, &c, 1, 2), Err(Error::DisallowedJump { .. })));
        assert!(matches!(jump(&s, &p4, &c, 0, 2), Err(Error::DisallowedJump { .. })));
    }

    #[test]
    fn normalization_examples() {
        let p4 = Tree::path(4);
        let c = canonical_coloring(&p4);
        let m = maximum_matching(&p4);
        let out = normalize_to_matching(&CoefficientState::symbolic(4), &p4, &c, &m).unwrap();
        assert!(out.support().is_empty());

        let p3 = Tree::path(3);
        let c = canonical_coloring(&p3);
        let m = Matching::new([(1, 2)]).unwrap();
        let a = normalize_with(&CoefficientState::symbolic(3), &p3, &c, &m, Extension::Smallest).unwrap();
        let b = normalize_with(&CoefficientState::symbolic(3), &p3, &c, &m, Extension::Largest).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.support(), vec![0]);
        // a_0 a_2^{-1}: the red end keeps its symbol, the other red end jumped over 1
        assert_eq!(a.coeff[0], Monomial::from([(0, 1), (2, -1)]));

        let already = CoefficientState::on(3, [0]);
        assert_eq!(normalize_to_matching(&already, &p3, &c, &m).unwrap(), already);

        let small = Matching::new([]).unwrap();
        assert!(matches!(normalize_to_matching(&already, &p3, &c, &small), Err(Error::NotMaximum { .. })));
    }

    #[test]
    fn ranks() {
        let p7 = Tree::path(7);
        let r = rank_profile(&p7, &PhiAssignment::uniform(&p7, Mode::Generic)).unwrap();
        assert_eq!((r.rank, r.versal_rank), (1, 0));
        let p4 = Tree::path(4);
        let r = rank_profile(&p4, &PhiAssignment::empty()).unwrap();
        assert_eq!((r.rank, r.versal_rank), (0, 0));
        let d4 = Tree::dynkin_d(4).unwrap();
        assert_eq!(rank_profile(&d4, &PhiAssignment::uniform(&d4, Mode::Generic)).unwrap().rank, 2);
        assert!(rank_profile(&d4, &PhiAssignment::empty()).is_err());
    }

    #[test]
    fn genericity_examples() {
        let t = Tree::single();
        let c = canonical_coloring(&t);
        let comp = &red_green_components(&t, &c).components[0];
        assert!(genericity_check(&t, &c, comp, &[1], &ctx(3)).unwrap());
        assert!(!genericity_check(&t, &c, comp, &[2], &ctx(3)).unwrap());
        assert!(matches!(genericity_check(&t, &c, comp, &[0], &ctx(3)), Err(Error::ZeroAlpha(0))));

        let p3 = Tree::path(3);
        let c = canonical_coloring(&p3);
        let comp = &red_green_components(&p3, &c).components[0];
        assert!(genericity_check(&p3, &c, comp, &[2, 1, 1], &ctx(5)).unwrap());
        assert!(!genericity_check(&p3, &c, comp, &[3, 1, 3], &ctx(5)).unwrap());
    }

    #[test]
    fn formal_check_after_normalization() {
        let d4 = Tree::dynkin_d(4).unwrap();
        let c = canonical_coloring(&d4);
        let comp = &red_green_components(&d4, &c).components[0];
        let m = maximum_matching(&d4);
        let s = normalize_to_matching(&CoefficientState::symbolic(4), &d4, &c, &m).unwrap();
        assert!(formal_genericity(&d4, &c, comp, &s).unwrap());
        assert!(!formal_genericity(&d4, &c, comp, &CoefficientState::trivial(4)).unwrap());
    }
}
