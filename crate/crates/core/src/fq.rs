//! Brute-force point counts of the exchange-relation schemes over prime
//! fields.
//!
//! A point is a pair `(x, x')` with `x_i x'_i = 1 + alpha_i prod_{j ~ i} x_j`
//! for every vertex. For fixed `x`, each vertex with `x_i != 0` determines
//! `x'_i`; a vertex with `x_i = 0` leaves `x'_i` free when the right side
//! vanishes and admits nothing otherwise.
//!
//! Counts for many parameter values are obtained in one sweep over `x`: the
//! set of parameters compatible with a given `x` is a box whose sides are
//! either a single value (where `x_p = 0`) or everything (where `x_p != 0`),
//! so summing box weights and then accumulating along each coordinate
//! gives the count at every parameter tuple.

use rayon::prelude::*;
use serde::Serialize;

use crate::coloring::{canonical_coloring, red_green_components, Coloring, RedGreenPartition};
use crate::counting::{count_polynomial, Mode, PhiAssignment};
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::groupoid::GenericityChecker;
use crate::sets::{maximum_matching, Matching};

/// Default cap on the number of elementary steps of an oracle job.
pub const WORK_LIMIT: u128 = 1_000_000_000;

/// Arithmetic modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FqContext {
    q: u64,
}

impl FqContext {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 || q > u32::MAX as u64 || (2..).take_while(|d| d * d <= q).any(|d| q % d == 0) {
            return Err(Error::InvalidArgument(format!("{q} is not a supported prime")));
        }
        Ok(FqContext { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a % self.q) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.q != 0).then(|| self.pow(a, self.q - 2))
    }

    /// `a^e` for any integer `e`; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a).expect("negative power of zero"), e.unsigned_abs())
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u64> {
        1..self.q
    }
}

/// Vertex order for the sweep (ascending degree, so hubs come last) and, for
/// each position, the vertices whose closed neighborhood is complete there.
struct SweepPlan {
    order: Vec<usize>,
    complete_at: Vec<Vec<usize>>,
}

impl SweepPlan {
    fn new(t: &Tree) -> Self {
        let n = t.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (t.degree(v), v));
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut complete_at = vec![Vec::new(); n];
        for v in 0..n {
            let last = t.neighbors(v).iter().map(|&w| pos[w]).chain([pos[v]]).max().expect("nonempty");
            complete_at[last].push(v);
        }
        SweepPlan { order, complete_at }
    }
}

/// Enumerates every `x` whose fixed-coefficient vertices are all satisfiable,
/// calling `leaf(x, zeros)` where `zeros` counts vertices with `x_i = 0`.
/// `alpha[i] = None` marks a free parameter; such a vertex with `x_i = 0`
/// needs a nonzero neighbor product.
fn sweep(
    t: &Tree,
    ctx: &FqContext,
    plan: &SweepPlan,
    alpha: &[Option<u64>],
    first: Option<u64>,
    leaf: &mut dyn FnMut(&[u64], u32),
) {
    let n = t.n();
    let mut x = vec![0u64; n];
    fn rec(
        k: usize,
        zeros: u32,
        t: &Tree,
        ctx: &FqContext,
        plan: &SweepPlan,
        alpha: &[Option<u64>],
        first: Option<u64>,
        x: &mut [u64],
        leaf: &mut dyn FnMut(&[u64], u32),
    ) {
        if k == plan.order.len() {
            leaf(x, zeros);
            return;
        }
        let v = plan.order[k];
        let values: Box<dyn Iterator<Item = u64>> = match (k, first) {
            (0, Some(a)) => Box::new(std::iter::once(a)),
            _ => Box::new(0..ctx.q()),
        };
        'value: for a in values {
            x[v] = a;
            let z = zeros + u32::from(a == 0);
            for &i in &plan.complete_at[k] {
                if x[i] != 0 {
                    continue;
                }
                let prod = t.neighbors(i).iter().fold(1, |acc, &j| ctx.mul(acc, x[j]));
                let ok = match alpha[i] {
                    Some(al) => ctx.add(1, ctx.mul(al, prod)) == 0,
                    None => prod != 0,
                };
                if !ok {
                    continue 'value;
                }
            }
            rec(k + 1, z, t, ctx, plan, alpha, first, x, leaf);
        }
        x[v] = 0;
    }
    rec(0, 0, t, ctx, plan, alpha, first, &mut x, leaf);
}

/// Number of points with every coefficient fixed (`alpha[i]` for vertex `i`).
pub fn count_fixed(t: &Tree, ctx: &FqContext, alpha: &[u64]) -> u128 {
    count_fixed_checked(t, ctx, alpha, false).expect("unchecked count")
}

/// As [`count_fixed`]; with `check_cover` it also asserts that no counted
/// point has both ends of an edge at zero.
pub fn count_fixed_checked(t: &Tree, ctx: &FqContext, alpha: &[u64], check_cover: bool) -> Result<u128> {
    let fixed: Vec<Option<u64>> = alpha.iter().map(|&a| Some(a % ctx.q())).collect();
    let plan = SweepPlan::new(t);
    let q = ctx.q() as u128;
    let mut total = 0u128;
    let mut bad = None;
    sweep(t, ctx, &plan, &fixed, None, &mut |x, zeros| {
        total += q.pow(zeros);
        if check_cover && bad.is_none() {
            bad = t.edges().iter().find(|&&(a, b)| x[a] == 0 && x[b] == 0).copied();
        }
    });
    if let Some((a, b)) = bad {
        return Err(Error::Invariant(format!("counted point vanishes on both ends of edge {a}-{b}")));
    }
    Ok(total)
}

/// Outcome of counting with generic parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointCount {
    Count(u128),
    /// No nonzero parameter tuple satisfies the genericity condition.
    NoGenericParameters,
}

/// Counts for every tuple of parameters placed on the red vertices left
/// uncovered by a fixed maximum matching.
pub struct ParameterTable {
    tree: Tree,
    ctx: FqContext,
    coloring: Coloring,
    partition: RedGreenPartition,
    matching: Matching,
    /// Parameter vertices, sorted.
    params: Vec<usize>,
    /// `table[idx]` with `idx = sum coord_p q^p`, coordinates in `1..q`.
    table: Vec<u128>,
}

fn oracle_work(t: &Tree, q: u64, params: usize) -> u128 {
    (q as u128).saturating_pow(t.n() as u32).saturating_add((q as u128).saturating_pow(params as u32))
}

impl ParameterTable {
    pub fn build(t: &Tree, ctx: &FqContext, force: bool) -> Result<Self> {
        let coloring = canonical_coloring(t);
        let partition = red_green_components(t, &coloring);
        let matching = maximum_matching(t);
        let params = matching.uncovered(t.n());
        let work = oracle_work(t, ctx.q(), params.len());
        if work > WORK_LIMIT && !force {
            return Err(Error::Budget(format!("oracle needs about {work} steps (limit {WORK_LIMIT})")));
        }
        let q = ctx.q();
        let size = (q as usize).pow(params.len() as u32);
        let mut alpha: Vec<Option<u64>> = vec![Some(1); t.n()];
        for &p in &params {
            alpha[p] = None;
        }
        let plan = SweepPlan::new(t);
        let partial = |x0: u64| {
            let mut table = vec![0u128; size];
            sweep(t, ctx, &plan, &alpha, Some(x0), &mut |x, zeros| {
                let mut idx = 0usize;
                let mut stride = 1usize;
                for &p in &params {
                    if x[p] == 0 {
                        let prod = t.neighbors(p).iter().fold(1, |acc, &j| ctx.mul(acc, x[j]));
                        let value = ctx.neg(ctx.inv(prod).expect("pruned zero product"));
                        idx += value as usize * stride;
                    }
                    stride *= q as usize;
                }
                table[idx] += (q as u128).pow(zeros);
            });
            table
        };
        let mut table = (0..q)
            .into_par_iter()
            .map(partial)
            .reduce(|| vec![0u128; size], |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            });
        // coordinate value 0 is the wildcard; fold it into every real value
        let mut stride = 1usize;
        for _ in &params {
            for idx in 0..size {
                let coord = idx / stride % q as usize;
                if coord != 0 {
                    table[idx] += table[idx - coord * stride];
                }
            }
            stride *= q as usize;
        }
        Ok(ParameterTable { tree: t.clone(), ctx: *ctx, coloring, partition, matching, params, table })
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    /// Count with the given parameter values (one per parameter vertex).
    pub fn count_at(&self, values: &[u64]) -> u128 {
        let q = self.ctx.q() as usize;
        let idx = values.iter().rev().fold(0usize, |acc, &v| acc * q + v as usize);
        self.table[idx]
    }

    pub fn count_points(&self, phi: &PhiAssignment) -> Result<PointCount> {
        count_over_parameters(&self.tree, &self.ctx, &self.coloring, &self.partition, &self.params, phi, |vals| {
            Ok(self.count_at(vals))
        })
    }
}

/// Shared driver: versal coordinates are summed, generic tuples are
/// filtered by the genericity condition and must all give the same total.
fn count_over_parameters(
    t: &Tree,
    ctx: &FqContext,
    coloring: &Coloring,
    partition: &RedGreenPartition,
    params: &[usize],
    phi: &PhiAssignment,
    mut count_at: impl FnMut(&[u64]) -> Result<u128>,
) -> Result<PointCount> {
    let mut modes = Vec::with_capacity(params.len());
    for &p in params {
        let comp = partition.component_of[p].ok_or_else(|| Error::Invariant(format!("parameter vertex {p} is orange")))?;
        let index = partition.components[comp].index();
        modes.push(phi.get(index).ok_or_else(|| Error::Phi(format!("no mode for component {index}")))?);
    }
    for (k, _) in phi.iter() {
        if partition.by_index(k).is_none() {
            return Err(Error::Phi(format!("{k} is not the index of a red-green component")));
        }
    }
    let checkers = partition
        .components
        .iter()
        .filter(|k| phi.get(k.index()) == Some(Mode::Generic))
        .map(|k| GenericityChecker::new(t, coloring, k))
        .collect::<Result<Vec<_>>>()?;
    let generic: Vec<usize> = (0..params.len()).filter(|&i| modes[i] == Mode::Generic).collect();
    let versal: Vec<usize> = (0..params.len()).filter(|&i| modes[i] == Mode::Versal).collect();
    let q = ctx.q();
    let mut values = vec![1u64; params.len()];
    let mut alpha = vec![1u64; t.n()];
    let mut found: Option<(u128, Vec<u64>)> = None;
    for g in tuples(q, generic.len()) {
        for (&i, &a) in generic.iter().zip(&g) {
            values[i] = a;
            alpha[params[i]] = a;
        }
        let mut ok = true;
        for ch in &checkers {
            if !ch.check(&alpha, ctx, coloring)? {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut total = 0u128;
        for v in tuples(q, versal.len()) {
            for (&i, &a) in versal.iter().zip(&v) {
                values[i] = a;
            }
            total += count_at(&values)?;
        }
        match &found {
            None => found = Some((total, g)),
            Some((prev, at)) if *prev != total => {
                return Err(Error::Invariant(format!(
                    "generic counts differ: {prev} at {at:?} but {total} at {g:?} (q = {q})"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(found.map_or(PointCount::NoGenericParameters, |(c, _)| PointCount::Count(c)))
}

/// All tuples in `(1..q)^k`, first coordinate fastest.
fn tuples(q: u64, k: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (q - 1).pow(k as u32);
    (0..total).map(move |mut i| {
        (0..k)
            .map(|_| {
                let d = i % (q - 1);
                i /= q - 1;
                d + 1
            })
            .collect()
    })
}

pub fn count_points(t: &Tree, phi: &PhiAssignment, ctx: &FqContext, force: bool) -> Result<PointCount> {
    ParameterTable::build(t, ctx, force)?.count_points(phi)
}

/// Literal route: one full `count_fixed` per parameter tuple.
pub fn count_points_naive(t: &Tree, phi: &PhiAssignment, ctx: &FqContext, force: bool) -> Result<PointCount> {
    let coloring = canonical_coloring(t);
    let partition = red_green_components(t, &coloring);
    let params = maximum_matching(t).uncovered(t.n());
    let q = ctx.q();
    let work = (q as u128).saturating_pow(t.n() as u32).saturating_mul((q as u128 - 1).saturating_pow(params.len() as u32));
    if work > WORK_LIMIT && !force {
        return Err(Error::Budget(format!("naive oracle needs about {work} steps (limit {WORK_LIMIT})")));
    }
    count_over_parameters(t, ctx, &coloring, &partition, &params, phi, |vals| {
        let mut alpha = vec![1u64; t.n()];
        for (&p, &a) in params.iter().zip(vals) {
            alpha[p] = a;
        }
        count_fixed_checked(t, ctx, &alpha, t.n() <= 5)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub q: u64,
    pub expected: i128,
    pub observed: Option<u128>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<PrimeCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn skipped(&self) -> Vec<u64> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Skipped).map(|c| c.q).collect()
    }
}

pub fn verify_polynomial(t: &Tree, phi: &PhiAssignment, primes: &[u64], force: bool) -> Result<VerifyReport> {
    let poly = count_polynomial(t, phi)?;
    let mut checks = Vec::new();
    for &q in primes {
        let ctx = FqContext::new(q)?;
        let table = ParameterTable::build(t, &ctx, force)?;
        checks.push(check_one(&poly.eval(q as i128)?, table.count_points(phi)?, q));
    }
    Ok(VerifyReport { checks })
}

/// Verifies every assignment of a tree against one table per prime.
pub fn verify_all_assignments(t: &Tree, primes: &[u64], force: bool) -> Result<Vec<(PhiAssignment, VerifyReport)>> {
    let phis = PhiAssignment::all(t)?;
    let polys = phis.iter().map(|phi| count_polynomial(t, phi)).collect::<Result<Vec<_>>>()?;
    let mut reports: Vec<VerifyReport> = phis.iter().map(|_| VerifyReport { checks: Vec::new() }).collect();
    for &q in primes {
        let ctx = FqContext::new(q)?;
        let table = ParameterTable::build(t, &ctx, force)?;
        for ((phi, poly), rep) in phis.iter().zip(&polys).zip(&mut reports) {
            rep.checks.push(check_one(&poly.eval(q as i128)?, table.count_points(phi)?, q));
        }
    }
    Ok(phis.into_iter().zip(reports).collect())
}

fn check_one(expected: &i128, observed: PointCount, q: u64) -> PrimeCheck {
    match observed {
        PointCount::Count(c) => PrimeCheck {
            q,
            expected: *expected,
            observed: Some(c),
            status: if i128::try_from(c).ok() == Some(*expected) { CheckStatus::Pass } else { CheckStatus::Fail },
        },
        PointCount::NoGenericParameters => {
            PrimeCheck { q, expected: *expected, observed: None, status: CheckStatus::Skipped }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> FqContext {
        FqContext::new(q).unwrap()
    }

    #[test]
    fn field() {
        assert!(FqContext::new(4).is_err());
        assert!(FqContext::new(1).is_err());
        let f = ctx(7);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.pow_signed(3, -1), 5);
        assert_eq!(f.neg(1), 6);
    }

    #[test]
    fn fixed_counts() {
        assert_eq!(count_fixed(&Tree::single(), &ctx(2), &[1]), 3);
        assert_eq!(count_fixed(&Tree::single(), &ctx(3), &[1]), 2);
        assert_eq!(count_fixed(&Tree::path(2), &ctx(2), &[1, 1]), 5);
        assert!(count_fixed_checked(&Tree::path(4), &ctx(3), &[1, 1, 1, 1], true).is_ok());
    }

    #[test]
    fn point_counts() {
        let t = Tree::single();
        let versal = PhiAssignment::uniform(&t, Mode::Versal);
        let generic = PhiAssignment::uniform(&t, Mode::Generic);
        assert_eq!(count_points(&t, &versal, &ctx(2), false).unwrap(), PointCount::Count(3));
        assert_eq!(count_points(&t, &generic, &ctx(2), false).unwrap(), PointCount::NoGenericParameters);
        let p3 = Tree::path(3);
        let g = PhiAssignment::uniform(&p3, Mode::Generic);
        assert_eq!(count_points(&p3, &g, &ctx(5), false).unwrap(), PointCount::Count(124));
        assert_eq!(count_points_naive(&p3, &g, &ctx(5), false).unwrap(), PointCount::Count(124));
    }

    #[test]
    fn table_matches_naive() {
        let d4 = Tree::dynkin_d(4).unwrap();
        for phi in PhiAssignment::all(&d4).unwrap() {
            for q in [3, 5] {
                let a = count_points(&d4, &phi, &ctx(q), false).unwrap();
                let b = count_points_naive(&d4, &phi, &ctx(q), false).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn verification() {
        let p2 = Tree::path(2);
        let r = verify_polynomial(&p2, &PhiAssignment::empty(), &[2, 3, 5], false).unwrap();
        assert!(r.passed() && r.skipped().is_empty());
        let t = Tree::single();
        let r = verify_polynomial(&t, &PhiAssignment::uniform(&t, Mode::Generic), &[2], false).unwrap();
        assert_eq!(r.skipped(), vec![2]);
        let d4 = Tree::dynkin_d(4).unwrap();
        let r = verify_polynomial(&d4, &PhiAssignment::uniform(&d4, Mode::Generic), &[5], false).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks[0].observed, Some(576));
    }

    #[test]
    fn budget_guard() {
        let t = Tree::path(12);
        assert!(matches!(ParameterTable::build(&t, &ctx(7), false), Err(Error::Budget(_))));
    }
}
