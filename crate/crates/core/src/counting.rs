//! Point-count polynomials of trees: the memoized recursion, closed forms for
//! the A/D/E families, the independent-set sum, the orange/unimodal chain and
//! the coincidence census.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use dashmap::DashMap;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_key, unlabeled_key, CanonicalKey};
use crate::coloring::{canonical_coloring, classify, red_green_components, Color, Coloring, TreeKind};
use crate::enumerate::enumerate_free_trees;
use crate::error::{Error, Result};
use crate::graph::{Forest, Tree};
use crate::graph6::emit_graph6;
use crate::poly::CountPolynomial;
use crate::sets::independent_sets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    Generic,
    Versal,
}

impl Mode {
    fn code(self) -> u8 {
        match self {
            Mode::Generic => 1,
            Mode::Versal => 2,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Generic => "generic",
            Mode::Versal => "versal",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "generic" | "g" => Ok(Mode::Generic),
            "versal" | "v" => Ok(Mode::Versal),
            other => Err(Error::Parse(format!("unknown mode '{other}' (expected generic or versal)"))),
        }
    }
}

/// A mode for every red-green component, keyed by the component's smallest
/// vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PhiAssignment {
    modes: BTreeMap<usize, Mode>,
}

/// Largest number of components for which all assignments are listed.
pub const MAX_ASSIGNMENT_COMPONENTS: usize = 16;

impl PhiAssignment {
    pub fn new(modes: BTreeMap<usize, Mode>) -> Self {
        PhiAssignment { modes }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn uniform(t: &Tree, mode: Mode) -> Self {
        let c = canonical_coloring(t);
        let modes = red_green_components(t, &c).components.iter().map(|k| (k.index(), mode)).collect();
        PhiAssignment { modes }
    }

    /// Every assignment over the components of `t`, in binary counting
    /// order with Generic before Versal.
    pub fn all(t: &Tree) -> Result<Vec<Self>> {
        let c = canonical_coloring(t);
        let idx: Vec<usize> = red_green_components(t, &c).components.iter().map(|k| k.index()).collect();
        if idx.len() > MAX_ASSIGNMENT_COMPONENTS {
            return Err(Error::SizeGuard {
                what: "components for assignment enumeration",
                limit: MAX_ASSIGNMENT_COMPONENTS,
                got: idx.len(),
            });
        }
        Ok((0u32..1 << idx.len())
            .map(|bits| {
                let modes = idx
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (k, if bits >> i & 1 == 1 { Mode::Versal } else { Mode::Generic }))
                    .collect();
                PhiAssignment { modes }
            })
            .collect())
    }

    pub fn get(&self, index: usize) -> Option<Mode> {
        self.modes.get(&index).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Mode)> + '_ {
        self.modes.iter().map(|(&k, &m)| (k, m))
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Per-vertex decoration codes: 0 for orange vertices, otherwise the code
    /// of the component's mode. Every component must be assigned and every
    /// key must name a component.
    pub fn decorate(&self, t: &Tree) -> Result<Vec<u8>> {
        self.decorate_with_offset(t, &(0..t.n()).collect::<Vec<_>>())
    }

    fn decorate_with_offset(&self, t: &Tree, global: &[usize]) -> Result<Vec<u8>> {
        let c = canonical_coloring(t);
        let p = red_green_components(t, &c);
        let mut labels = vec![0u8; t.n()];
        for comp in &p.components {
            let key = global[comp.index()];
            let mode = self.get(key).ok_or_else(|| Error::Phi(format!("no mode for component {key}")))?;
            for &v in &comp.vertices {
                labels[v] = mode.code();
            }
        }
        Ok(labels)
    }

    fn check_keys(&self, known: &HashSet<usize>) -> Result<()> {
        match self.modes.keys().find(|k| !known.contains(k)) {
            Some(k) => Err(Error::Phi(format!("{k} is not the index of a red-green component"))),
            None => Ok(()),
        }
    }

    /// Sum of dimensions of the components carrying `mode`.
    pub fn rank_of(&self, t: &Tree, mode: Mode) -> Result<usize> {
        let c = canonical_coloring(t);
        let p = red_green_components(t, &c);
        let mut total = 0;
        for comp in &p.components {
            let m = self.get(comp.index()).ok_or_else(|| Error::Phi(format!("no mode for component {}", comp.index())))?;
            if m == mode {
                total += comp.dimension(&c);
            }
        }
        Ok(total)
    }
}

/// A user-facing mode specification, resolved against a tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    Uniform(Mode),
    PerComponent(BTreeMap<usize, Mode>),
}

impl PhiSpec {
    /// Accepts `generic`, `versal`, or `i=mode,j=mode,...` (possibly empty).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if !text.contains('=') && !text.is_empty() {
            return Ok(PhiSpec::Uniform(text.parse()?));
        }
        let mut map = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, m) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected index=mode, got '{item}'")))?;
            let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad component index '{k}'")))?;
            if map.insert(k, m.parse()?).is_some() {
                return Err(Error::Parse(format!("component {k} listed twice")));
            }
        }
        Ok(PhiSpec::PerComponent(map))
    }

    pub fn resolve(&self, t: &Tree) -> Result<PhiAssignment> {
        match self {
            PhiSpec::Uniform(m) => Ok(PhiAssignment::uniform(t, *m)),
            PhiSpec::PerComponent(map) => {
                let c = canonical_coloring(t);
                let p = red_green_components(t, &c);
                if p.is_empty() && !map.is_empty() {
                    return Err(Error::Phi("tree is orange and has no red-green components".into()));
                }
                let phi = PhiAssignment::new(map.clone());
                phi.check_keys(&p.components.iter().map(|k| k.index()).collect())?;
                for comp in &p.components {
                    if phi.get(comp.index()).is_none() {
                        return Err(Error::Phi(format!("no mode for component {}", comp.index())));
                    }
                }
                Ok(phi)
            }
        }
    }
}

/// Memo table for the recursion, keyed by decorated canonical form.
pub trait Memo {
    fn get(&self, key: &CanonicalKey) -> Option<CountPolynomial>;
    fn put(&self, key: CanonicalKey, value: CountPolynomial);
    fn entries(&self) -> usize;
}

/// Disables memoization.
pub struct NoMemo;

impl Memo for NoMemo {
    fn get(&self, _: &CanonicalKey) -> Option<CountPolynomial> {
        None
    }
    fn put(&self, _: CanonicalKey, _: CountPolynomial) {}
    fn entries(&self) -> usize {
        0
    }
}

/// Single-owner memo, one per worker.
#[derive(Default)]
pub struct LocalMemo(RefCell<HashMap<CanonicalKey, CountPolynomial>>);

impl Memo for LocalMemo {
    fn get(&self, key: &CanonicalKey) -> Option<CountPolynomial> {
        self.0.borrow().get(key).cloned()
    }
    fn put(&self, key: CanonicalKey, value: CountPolynomial) {
        self.0.borrow_mut().insert(key, value);
    }
    fn entries(&self) -> usize {
        self.0.borrow().len()
    }
}

/// Concurrent memo shared by all workers.
#[derive(Default)]
pub struct SharedMemo(DashMap<CanonicalKey, CountPolynomial>);

impl Memo for SharedMemo {
    fn get(&self, key: &CanonicalKey) -> Option<CountPolynomial> {
        self.0.get(key).map(|e| e.value().clone())
    }
    fn put(&self, key: CanonicalKey, value: CountPolynomial) {
        self.0.insert(key, value);
    }
    fn entries(&self) -> usize {
        self.0.len()
    }
}

const GENERIC: u8 = 1;
const VERSAL: u8 = 2;

/// Evaluates the recursion. Leaves and dominoes are chosen by the balance
/// rule (smallest largest leftover piece) unless a seed requests random
/// choices.
pub struct Counter<'m> {
    memo: &'m dyn Memo,
    rng: Option<RefCell<StdRng>>,
}

impl<'m> Counter<'m> {
    pub fn new(memo: &'m dyn Memo) -> Self {
        Counter { memo, rng: None }
    }

    pub fn randomized(memo: &'m dyn Memo, seed: u64) -> Self {
        Counter { memo, rng: Some(RefCell::new(StdRng::seed_from_u64(seed))) }
    }

    pub fn tree(&self, t: &Tree, phi: &PhiAssignment) -> Result<CountPolynomial> {
        let c = canonical_coloring(t);
        let p = red_green_components(t, &c);
        phi.check_keys(&p.components.iter().map(|k| k.index()).collect())?;
        let labels = phi.decorate(t)?;
        self.decorated(t, &labels)
    }

    /// Forest version; component indices are the forest's global labels.
    pub fn forest(&self, f: &Forest, phi: &PhiAssignment) -> Result<CountPolynomial> {
        let mut known = HashSet::new();
        let mut out = CountPolynomial::one();
        for (t, global) in f.iter() {
            let c = canonical_coloring(t);
            known.extend(red_green_components(t, &c).components.iter().map(|k| global[k.index()]));
            let labels = phi.decorate_with_offset(t, global)?;
            out = &out * &self.decorated(t, &labels)?;
        }
        phi.check_keys(&known)?;
        Ok(out)
    }

    fn pick<T: Copy>(&self, options: &[T], score: impl Fn(T) -> usize) -> T {
        match &self.rng {
            Some(rng) => *options.choose(&mut *rng.borrow_mut()).expect("nonempty choice"),
            None => *options.iter().min_by_key(|&&o| score(o)).expect("nonempty choice"),
        }
    }

    fn product(&self, pieces: &[(Tree, Vec<u8>)]) -> Result<CountPolynomial> {
        pieces.iter().try_fold(CountPolynomial::one(), |acc, (t, l)| Ok(&acc * &self.decorated(t, l)?))
    }

    fn decorated(&self, t: &Tree, labels: &[u8]) -> Result<CountPolynomial> {
        let key = canonical_key(t, labels);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p);
        }
        let c = canonical_coloring(t);
        let q = CountPolynomial::monomial(1);
        let qm1 = CountPolynomial::q_minus_one();
        let result = if t.n() == 1 {
            match labels[0] {
                GENERIC => qm1.clone(),
                VERSAL => CountPolynomial::new(vec![1, -1, 1]),
                _ => return Err(Error::Phi("isolated vertex without a mode".into())),
            }
        } else if c.count(Color::Red) > 0 {
            let leaves: Vec<usize> = t.leaves().filter(|&v| c.color(v) == Color::Red).collect();
            let v = self.pick(&leaves, |v| largest_piece(t, &[v, t.neighbors(v)[0]]));
            let u = t.neighbors(v)[0];
            let factor = match labels[v] {
                GENERIC => qm1.clone(),
                VERSAL => qm1.pow(2),
                _ => return Err(Error::Phi(format!("red vertex {v} without a mode"))),
            };
            let without_leaf = self.product(&induced_pieces(t, labels, &[v])?)?;
            let without_pair = self.product(&induced_pieces(t, labels, &[u, v])?)?;
            &(&factor * &without_leaf) + &(&q * &without_pair)
        } else {
            let dominoes = c.dominoes.clone();
            let (u, v) = self.pick(&dominoes, |(u, v)| largest_piece(t, &[u, v]));
            self.orange(t, u, v)?
        };
        let expected = t.n() + versal_rank(t, &c, labels);
        if !result.is_monic() || result.degree() != Some(expected) {
            return Err(Error::Invariant(format!(
                "count {result} is not monic of degree {expected} for {}",
                t.to_edge_list(false).replace('\n', " ")
            )));
        }
        self.memo.put(key, result.clone());
        Ok(result)
    }

    fn orange(&self, t: &Tree, u: usize, v: usize) -> Result<CountPolynomial> {
        let f = t.remove_vertices(&[u, v]);
        let mut tu = CountPolynomial::one();
        let mut tv = CountPolynomial::one();
        let mut su = CountPolynomial::one();
        let mut sv = CountPolynomial::one();
        for (piece, global) in f.iter() {
            let (hub, tp, sp) = if let Some(x) = global.iter().position(|&g| t.has_edge(g, u)) {
                (x, &mut tu, &mut su)
            } else {
                let x = global.iter().position(|&g| t.has_edge(g, v)).expect("piece attached to the domino");
                (x, &mut tv, &mut sv)
            };
            let whole = self.decorated(piece, &vec![0; piece.n()])?;
            *tp = &*tp * &whole;
            for (s, _) in piece.remove_vertices(&[hub]).iter() {
                *sp = &*sp * &self.decorated(s, &versal_labels(s))?;
            }
        }
        let q = CountPolynomial::monomial(1);
        let both = &CountPolynomial::q_minus_one().pow(2) * &(&tu * &tv);
        Ok(&(&both + &(&q * &(&su * &tv))) + &(&q * &(&tu * &sv)))
    }
}

fn versal_rank(t: &Tree, c: &Coloring, labels: &[u8]) -> usize {
    red_green_components(t, c)
        .components
        .iter()
        .filter(|k| labels[k.index()] == VERSAL)
        .map(|k| k.dimension(c))
        .sum()
}

fn versal_labels(t: &Tree) -> Vec<u8> {
    let c = canonical_coloring(t);
    (0..t.n()).map(|v| if c.color(v) == Color::Orange { 0 } else { VERSAL }).collect()
}

fn largest_piece(t: &Tree, removed: &[usize]) -> usize {
    t.remove_vertices(removed).components.iter().map(Tree::n).max().unwrap_or(0)
}

/// Pieces of `t` minus `removed`, each decorated with the mode its vertices
/// carried in `t`. New red-green components must sit inside old ones.
fn induced_pieces(t: &Tree, labels: &[u8], removed: &[usize]) -> Result<Vec<(Tree, Vec<u8>)>> {
    let f = t.remove_vertices(removed);
    let mut out = Vec::with_capacity(f.len());
    for (piece, global) in f.iter() {
        let c = canonical_coloring(piece);
        let mut local = vec![0u8; piece.n()];
        for comp in red_green_components(piece, &c).components {
            let code = labels[global[comp.index()]];
            if code == 0 || comp.vertices.iter().any(|&x| labels[global[x]] != code) {
                return Err(Error::Phi("induced assignment is not well defined".into()));
            }
            for &x in &comp.vertices {
                local[x] = code;
            }
        }
        out.push((piece.clone(), local));
    }
    Ok(out)
}

pub fn count_polynomial(t: &Tree, phi: &PhiAssignment) -> Result<CountPolynomial> {
    Counter::new(&LocalMemo::default()).tree(t, phi)
}

pub fn count_forest_polynomial(f: &Forest, phi: &PhiAssignment) -> Result<CountPolynomial> {
    Counter::new(&LocalMemo::default()).forest(f, phi)
}

/// Expected shape of a family member's count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormMode {
    Orange,
    Generic,
    Versal,
}

impl From<Mode> for FormMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Generic => FormMode::Generic,
            Mode::Versal => FormMode::Versal,
        }
    }
}

/// Sum of `c q^k` terms.
fn qsum(terms: &[(i128, usize)]) -> CountPolynomial {
    terms.iter().fold(CountPolynomial::zero(), |acc, &(c, k)| &acc + &CountPolynomial::term(c, k))
}

fn mode_mismatch(family: &str, n: usize, mode: FormMode) -> Error {
    Error::InconsistentMode(format!("{family}_{n} has no {mode:?} count"))
}

pub fn closed_form_a(n: usize, mode: FormMode) -> Result<CountPolynomial> {
    if n == 0 {
        return Err(Error::InvalidArgument("A_n needs n >= 1".into()));
    }
    match (n % 2, mode) {
        (0, FormMode::Orange) => {
            CountPolynomial::q_pow_minus_one(n + 2).div_exact(&CountPolynomial::q_pow_minus_one(2))
        }
        (1, FormMode::Versal) => CountPolynomial::q_pow_plus_one(n + 2).div_exact(&qsum(&[(1, 1), (1, 0)])),
        (1, FormMode::Generic) => (&CountPolynomial::q_pow_minus_one((n + 1) / 2)
            * &CountPolynomial::q_pow_minus_one((n + 3) / 2))
            .div_exact(&CountPolynomial::q_pow_minus_one(2)),
        _ => Err(mode_mismatch("A", n, mode)),
    }
}

pub fn closed_form_d(n: usize, mode: FormMode) -> Result<CountPolynomial> {
    if n < 4 {
        return Err(Error::InvalidArgument("D_n needs n >= 4".into()));
    }
    match (n % 2, mode) {
        (0, FormMode::Versal) => qsum(&[(1, n + 3), (-1, n + 2), (1, n), (1, 3), (-1, 1), (1, 0)])
            .div_exact(&qsum(&[(1, 1), (1, 0)])),
        (0, FormMode::Generic) => Ok(CountPolynomial::q_pow_minus_one(n / 2).pow(2)),
        (1, FormMode::Versal) => qsum(&[(1, n + 3), (-1, n + 2), (1, n), (-1, 3), (1, 1), (-1, 0)])
            .div_exact(&CountPolynomial::q_pow_minus_one(2)),
        (1, FormMode::Generic) => Ok(CountPolynomial::q_pow_minus_one(n)),
        _ => Err(mode_mismatch("D", n, mode)),
    }
}

pub fn closed_form_e(n: usize, mode: FormMode) -> Result<CountPolynomial> {
    if n < 5 {
        return Err(Error::InvalidArgument("E_n needs n >= 5".into()));
    }
    let hexagon = qsum(&[(1, 2), (-1, 1), (1, 0)]);
    match (n % 2, mode) {
        (0, FormMode::Orange) => {
            (&hexagon * &CountPolynomial::q_pow_minus_one(n - 1)).div_exact(&CountPolynomial::q_minus_one())
        }
        (1, FormMode::Versal) => Ok(&hexagon * &CountPolynomial::q_pow_plus_one(n - 1)),
        (1, FormMode::Generic) => qsum(&[
            (1, n + 1),
            (-1, n),
            (1, n - 1),
            (-1, (n + 3) / 2),
            (-1, (n - 1) / 2),
            (1, 2),
            (-1, 1),
            (1, 0),
        ])
        .div_exact(&CountPolynomial::q_minus_one()),
        _ => Err(mode_mismatch("E", n, mode)),
    }
}

/// Versal count as a sum over independent sets `S` of
/// `(q - 1)^(n + dim - 2|S|) q^|S|`.
pub fn versal_by_independent_sets(t: &Tree) -> Result<CountPolynomial> {
    let dim = canonical_coloring(t).dimension();
    let mut by_size: Vec<i128> = vec![0; t.n() + 1];
    for s in independent_sets(t)? {
        by_size[s.len()] += 1;
    }
    let qm1 = CountPolynomial::q_minus_one();
    let mut out = CountPolynomial::zero();
    for (s, &count) in by_size.iter().enumerate().filter(|(_, &c)| c > 0) {
        let e = (t.n() + dim).checked_sub(2 * s).ok_or_else(|| {
            Error::Invariant(format!("independent set of size {s} exceeds (n + dim) / 2"))
        })?;
        let term = &(&qm1.pow(e) * &CountPolynomial::monomial(s)) * &CountPolynomial::constant(count);
        out = &out + &term;
    }
    Ok(out)
}

/// Value at `q = 1` of the all-versal count.
pub fn euler_characteristic(t: &Tree) -> Result<i128> {
    count_polynomial(t, &PhiAssignment::uniform(t, Mode::Versal))?.eval(1)
}

/// Number of consecutive valency-2 vertices starting at the neighbor of leaf `v`.
pub fn branch_length(t: &Tree, v: usize) -> usize {
    let mut prev = v;
    let Some(&first) = t.neighbors(v).first() else { return 0 };
    let mut cur = first;
    let mut len = 0;
    while t.degree(cur) == 2 {
        len += 1;
        let next = t.neighbors(cur).iter().copied().find(|&w| w != prev).expect("valency two");
        prev = cur;
        cur = next;
        if len > t.n() {
            break;
        }
    }
    len
}

/// Count of an orange tree (or versal count of a unimodal one) using only
/// the leaf decomposition `N_T = N^versal_{T - v} + q N_{T - u - v}` and the
/// closed form of even paths.
pub fn orange_unimodal_chain(t: &Tree) -> Result<CountPolynomial> {
    Chain::default().eval(t)
}

#[derive(Default)]
struct Chain {
    memo: HashMap<CanonicalKey, CountPolynomial>,
    active: HashSet<CanonicalKey>,
}

impl Chain {
    fn eval(&mut self, t: &Tree) -> Result<CountPolynomial> {
        let kind = classify(t).kind;
        if kind == TreeKind::Other {
            return Err(Error::InvalidArgument("tree is neither orange nor unimodal".into()));
        }
        let key = unlabeled_key(t);
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        if !self.active.insert(key.clone()) {
            return Err(Error::Invariant("orange/unimodal chain revisits a tree".into()));
        }
        let q = CountPolynomial::monomial(1);
        let result = if kind == TreeKind::Orange {
            if t.is_path() {
                closed_form_a(t.n(), FormMode::Orange)?
            } else {
                let v = t.leaves().min_by_key(|&v| (branch_length(t, v), v)).expect("tree has leaves");
                let u = t.neighbors(v)[0];
                let rest = t.remove_vertices(&[v]).components.remove(0);
                let shorter = self.eval(&rest)?;
                let without_pair = self.forest(&t.remove_vertices(&[u, v]))?;
                &shorter + &(&q * &without_pair)
            }
        } else {
            let c = canonical_coloring(t);
            let w = (0..t.n())
                .filter(|&w| c.color(w) == Color::Red && t.degree(w) <= 1)
                .max_by_key(|&w| (branch_length(t, w), std::cmp::Reverse(w)))
                .expect("unimodal trees have a red leaf");
            let longer = self.eval(&t.with_leaf(w))?;
            let without = self.forest(&t.remove_vertices(&[w]))?;
            &longer - &(&q * &without)
        };
        self.active.remove(&key);
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn forest(&mut self, f: &Forest) -> Result<CountPolynomial> {
        f.components.iter().try_fold(CountPolynomial::one(), |acc, t| Ok(&acc * &self.eval(t)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CensusClass {
    Orange,
    UnimodalVersal,
    UnimodalGeneric,
}

impl FromStr for CensusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "orange" => Ok(CensusClass::Orange),
            "unimodalversal" | "versal" => Ok(CensusClass::UnimodalVersal),
            "unimodalgeneric" | "generic" => Ok(CensusClass::UnimodalGeneric),
            _ => Err(Error::Parse(format!("unknown census class '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemoMode {
    PerWorker,
    Shared,
}

/// Trees sharing one polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionClass {
    pub polynomial: CountPolynomial,
    pub graph6: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub class: CensusClass,
    pub tree_count: usize,
    pub distinct_polynomial_count: usize,
    pub collisions: Vec<CollisionClass>,
}

pub const MAX_CENSUS: usize = 14;

pub fn census(n: usize, class: CensusClass) -> Result<CensusReport> {
    census_with(n, class, MemoMode::Shared)
}

pub fn census_with(n: usize, class: CensusClass, memo: MemoMode) -> Result<CensusReport> {
    if n == 0 || n > MAX_CENSUS {
        return Err(Error::SizeGuard { what: "census tree size", limit: MAX_CENSUS, got: n });
    }
    let wanted = match class {
        CensusClass::Orange => TreeKind::Orange,
        _ => TreeKind::Unimodal,
    };
    let trees: Vec<Tree> = enumerate_free_trees(n)?.into_iter().filter(|t| classify(t).kind == wanted).collect();
    let phi_of = |t: &Tree| match class {
        CensusClass::Orange => PhiAssignment::empty(),
        CensusClass::UnimodalVersal => PhiAssignment::uniform(t, Mode::Versal),
        CensusClass::UnimodalGeneric => PhiAssignment::uniform(t, Mode::Generic),
    };
    let polys: Vec<CountPolynomial> = match memo {
        MemoMode::Shared => {
            let shared = SharedMemo::default();
            trees.par_iter().map(|t| Counter::new(&shared).tree(t, &phi_of(t))).collect::<Result<_>>()?
        }
        MemoMode::PerWorker => trees
            .par_iter()
            .map_init(LocalMemo::default, |m, t| Counter::new(m).tree(t, &phi_of(t)))
            .collect::<Result<_>>()?,
    };
    let mut buckets: BTreeMap<CountPolynomial, Vec<String>> = BTreeMap::new();
    for (t, p) in trees.iter().zip(polys) {
        buckets.entry(p).or_default().push(emit_graph6(t)?);
    }
    let distinct = buckets.len();
    let collisions = buckets
        .into_iter()
        .filter(|(_, g)| g.len() > 1)
        .map(|(polynomial, graph6)| CollisionClass { polynomial, graph6 })
        .collect();
    Ok(CensusReport { n, class, tree_count: trees.len(), distinct_polynomial_count: distinct, collisions })
}
