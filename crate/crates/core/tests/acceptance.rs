//! Acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use treecount_core::canon::canonical_tree;
use treecount_core::coloring::*;
use treecount_core::counting::*;
use treecount_core::enumerate::{enumerate_free_trees, trees_up_to};
use treecount_core::fq::{verify_all_assignments, CheckStatus, FqContext};
use treecount_core::graph::Tree;
use treecount_core::graph6::{emit_graph6, parse_graph6};
use treecount_core::groupoid::*;
use treecount_core::poly::{reciprocity_report, CountPolynomial};
use treecount_core::sets::{all_maximum_matchings, count_maximum_independent_sets};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(took)
}

fn closed_forms() -> Check {
    let start = Instant::now();
    let mut compared = 0;
    let modes = [FormMode::Orange, FormMode::Generic, FormMode::Versal];
    let mut check = |name: &str, n: usize, t: Tree, form: fn(usize, FormMode) -> treecount_core::error::Result<CountPolynomial>| {
        for mode in modes {
            let Ok(expected) = form(n, mode) else { continue };
            let phi = match mode {
                FormMode::Orange => PhiAssignment::empty(),
                FormMode::Generic => PhiAssignment::uniform(&t, Mode::Generic),
                FormMode::Versal => PhiAssignment::uniform(&t, Mode::Versal),
            };
            let got = count_polynomial(&t, &phi).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{name}_{n} {mode:?}: {got} vs {expected}"))?;
            compared += 1;
        }
        Ok::<(), String>(())
    };
    for n in 1..=12 {
        check("A", n, Tree::path(n), closed_form_a)?;
    }
    for n in 4..=12 {
        check("D", n, Tree::dynkin_d(n).unwrap(), closed_form_d)?;
    }
    for n in 5..=12 {
        check("E", n, Tree::dynkin_e(n).unwrap(), closed_form_e)?;
    }
    ensure(compared == 48, || format!("only {compared} family/mode pairs compared"))?;
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{compared} family/mode pairs equal, {took:.2?}"))
}

fn oracle_concordance() -> Check {
    let start = Instant::now();
    let primes = [2u64, 3, 5, 7];
    let trees = trees_up_to(7).map_err(|e| e.to_string())?;
    ensure(trees.len() == 25, || format!("{} trees", trees.len()))?;
    let (mut assignments, mut passes, mut skips) = (0, 0, 0);
    for t in &trees {
        let reports = verify_all_assignments(t, &primes, false).map_err(|e| e.to_string())?;
        for (phi, r) in reports {
            assignments += 1;
            let g6 = emit_graph6(t).unwrap();
            ensure(r.passed(), || format!("{g6} {phi:?}: {:?}", r.checks))?;
            for c in &r.checks {
                match c.status {
                    CheckStatus::Pass => passes += 1,
                    CheckStatus::Skipped => {
                        skips += 1;
                        ensure(phi.iter().any(|(_, m)| m == Mode::Generic), || format!("{g6}: skip without generic part"))?;
                        ensure(
                            r.checks.iter().any(|d| d.q >= 3 && d.status == CheckStatus::Pass),
                            || format!("{g6} {phi:?}: skipped at q={} with no pass at q >= 3", c.q),
                        )?;
                    }
                    CheckStatus::Fail => unreachable!(),
                }
            }
        }
    }
    let took = within(start, Duration::from_secs(15 * 60))?;
    Ok(format!("25 trees, {assignments} assignments, {passes} exact checks, {skips} skips each backed by a pass at q >= 3, {took:.2?}"))
}

fn coloring_agreement() -> Check {
    let trees = trees_up_to(10).map_err(|e| e.to_string())?;
    ensure(trees.len() == 201, || format!("{} trees", trees.len()))?;
    for t in &trees {
        let c = canonical_coloring(t);
        let covers = coloring_by_vertex_covers(t).map_err(|e| e.to_string())?;
        let matchings = coloring_by_matchings(t).map_err(|e| e.to_string())?;
        ensure(c.colors == covers.colors && c == matchings, || format!("{} disagrees", emit_graph6(t).unwrap()))?;
    }
    Ok(format!("{} trees, zero mismatches", trees.len()))
}

fn dimension_nullity() -> Check {
    let trees = trees_up_to(10).map_err(|e| e.to_string())?;
    for t in &trees {
        ensure(dimension(t) == adjacency_nullity(t), || emit_graph6(t).unwrap())?;
    }
    Ok(format!("{} trees", trees.len()))
}

fn euler_characteristic_check() -> Check {
    let trees = trees_up_to(12).map_err(|e| e.to_string())?;
    for t in &trees {
        let e = euler_characteristic(t).map_err(|e| e.to_string())?;
        ensure(e == count_maximum_independent_sets(t) as i128, || emit_graph6(t).unwrap())?;
    }
    Ok(format!("{} trees", trees.len()))
}

fn independent_set_formula() -> Check {
    let trees = trees_up_to(12).map_err(|e| e.to_string())?;
    for t in &trees {
        let a = versal_by_independent_sets(t).map_err(|e| e.to_string())?;
        let b = count_polynomial(t, &PhiAssignment::uniform(t, Mode::Versal)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{}: {a} vs {b}", emit_graph6(t).unwrap()))?;
    }
    Ok(format!("{} trees", trees.len()))
}

fn reciprocity() -> Check {
    let mut cases = 0;
    for t in &trees_up_to(9).map_err(|e| e.to_string())? {
        for phi in PhiAssignment::all(t).map_err(|e| e.to_string())? {
            let p = count_polynomial(t, &phi).map_err(|e| e.to_string())?;
            let rank = rank_profile(t, &phi).map_err(|e| e.to_string())?.rank;
            let r = reciprocity_report(&p, rank).map_err(|e| e.to_string())?;
            ensure(r.divisible && r.reciprocal, || format!("{} {phi:?}: {p}", emit_graph6(t).unwrap()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} tree/assignment pairs, zero failures"))
}

fn same_class(report: &CensusReport, pair: [&str; 2]) -> std::result::Result<(), String> {
    let canon: Vec<String> = pair
        .iter()
        .map(|s| emit_graph6(&canonical_tree(&parse_graph6(s).map_err(|e| e.to_string())?)).map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    ensure(
        report.collisions.iter().any(|c| canon.iter().all(|g| c.graph6.contains(g))),
        || format!("{} / {} not reported as a collision", pair[0], pair[1]),
    )
}

fn census_regression() -> Check {
    let orange_distinct = [1, 1, 2, 5, 13, 41, 138];
    let orange_trees = [1, 1, 2, 5, 15, 49, 180];
    let mut orange_time = Duration::ZERO;
    for (i, n) in (2..=14).step_by(2).enumerate() {
        let start = Instant::now();
        let r = census(n, CensusClass::Orange).map_err(|e| e.to_string())?;
        if n == 14 {
            orange_time = within(start, Duration::from_secs(20 * 60))?;
        }
        ensure(
            (r.tree_count, r.distinct_polynomial_count) == (orange_trees[i], orange_distinct[i]),
            || format!("orange n={n}: {} trees, {} polynomials", r.tree_count, r.distinct_polynomial_count),
        )?;
    }
    let versal_distinct = [1, 1, 2, 6, 19, 65];
    let versal_trees = [1, 1, 2, 6, 20, 76];
    for (i, n) in (1..=11).step_by(2).enumerate() {
        let r = census(n, CensusClass::UnimodalVersal).map_err(|e| e.to_string())?;
        ensure(
            (r.tree_count, r.distinct_polynomial_count) == (versal_trees[i], versal_distinct[i]),
            || format!("unimodal versal n={n}: {} trees, {} polynomials", r.tree_count, r.distinct_polynomial_count),
        )?;
    }
    let generic_distinct = [1, 1, 2, 5, 13];
    for (i, n) in (1..=9).step_by(2).enumerate() {
        let r = census(n, CensusClass::UnimodalGeneric).map_err(|e| e.to_string())?;
        ensure(r.distinct_polynomial_count == generic_distinct[i], || {
            format!("unimodal generic n={n}: {} polynomials", r.distinct_polynomial_count)
        })?;
    }
    let seven = census(7, CensusClass::UnimodalGeneric).map_err(|e| e.to_string())?;
    let a7 = emit_graph6(&canonical_tree(&Tree::path(7))).unwrap();
    let e7 = emit_graph6(&canonical_tree(&Tree::dynkin_e(7).unwrap())).unwrap();
    ensure(
        seven.collisions.len() == 1 && seven.collisions[0].graph6.contains(&a7) && seven.collisions[0].graph6.contains(&e7),
        || format!("7-vertex generic collisions: {:?}", seven.collisions),
    )?;
    let ten = census(10, CensusClass::Orange).map_err(|e| e.to_string())?;
    let orange_pairs = [["IhGGOC@?G", "IhC_GCA?G"], ["IhGGOCA?G", "IhGH?C@?G"]];
    for pair in orange_pairs {
        same_class(&ten, pair)?;
    }
    ensure(ten.collisions.len() == 2, || format!("{} orange collisions at 10", ten.collisions.len()))?;
    let nine = census(9, CensusClass::UnimodalVersal).map_err(|e| e.to_string())?;
    same_class(&nine, ["HhCGOCA", "HhGGGG@"])?;
    ensure(nine.collisions.len() == 1, || format!("{} versal collisions at 9", nine.collisions.len()))?;
    Ok(format!(
        "orange 1,1,2,5,13,41,138; versal 1,1,2,6,19,65; generic 1,1,2,5,13; A7/E7 collide; \
         pairs IhGGOC@?G/IhC_GCA?G and IhGGOCA?G/IhGH?C@?G at 10, HhCGOCA/HhGGGG@ at 9; 14-vertex orange census {orange_time:.2?}"
    ))
}

fn groupoid_suites() -> Check {
    let trees = trees_up_to(9).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(2024);
    let (mut normalizations, mut jumps_checked) = (0, 0);
    for t in &trees {
        let c = canonical_coloring(t);
        let start = CoefficientState::symbolic(t.n());
        let g6 = emit_graph6(t).unwrap();
        for m in all_maximum_matchings(t).map_err(|e| e.to_string())? {
            let base = normalize_with(&start, t, &c, &m, Extension::Smallest).map_err(|e| e.to_string())?;
            ensure(base.support() == m.uncovered(t.n()), || format!("{g6}: support {:?}", base.support()))?;
            ensure(base.symbols().iter().all(|&s| c.color(s) == Color::Red), || format!("{g6}: non-red symbol"))?;
            for how in [Extension::Largest, Extension::Random(rng.gen())] {
                let other = normalize_with(&start, t, &c, &m, how).map_err(|e| e.to_string())?;
                ensure(other == base, || format!("{g6}: {how:?} differs"))?;
            }
            ensure(normalize_to_matching(&base, t, &c, &m).map_err(|e| e.to_string())? == base, || format!("{g6}: not idempotent"))?;
            normalizations += 1;
        }
        let jumps: Vec<(usize, usize)> = t
            .edges()
            .iter()
            .flat_map(|&(a, b)| [(a, b), (b, a)])
            .filter(|&(u, v)| jump_allowed(t, &c, u, v).is_ok())
            .collect();
        if jumps.is_empty() {
            continue;
        }
        let checkers: Vec<GenericityChecker> = red_green_components(t, &c)
            .components
            .iter()
            .map(|k| GenericityChecker::new(t, &c, k))
            .collect::<treecount_core::error::Result<_>>()
            .map_err(|e| e.to_string())?;
        for q in [5u64, 7] {
            let ctx = FqContext::new(q).unwrap();
            let mut alpha: Vec<u64> = (0..t.n()).map(|_| rng.gen_range(1..q)).collect();
            for _ in 0..8 {
                let (u, v) = jumps[rng.gen_range(0..jumps.len())];
                let next = jump_values(&alpha, t, &c, u, v, &ctx).map_err(|e| e.to_string())?;
                for ch in &checkers {
                    let before = ch.check(&alpha, &ctx, &c).map_err(|e| e.to_string())?;
                    let after = ch.check(&next, &ctx, &c).map_err(|e| e.to_string())?;
                    ensure(before == after, || format!("{g6}: jump {u} over {v} changes genericity at q={q}"))?;
                }
                alpha = next;
                jumps_checked += 1;
            }
        }
    }
    Ok(format!("{} trees, {normalizations} normalizations, {jumps_checked} random jumps", trees.len()))
}

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, fn() -> Check); 9] = [
        ("closed-form concordance", closed_forms),
        ("oracle concordance", oracle_concordance),
        ("coloring triple agreement", coloring_agreement),
        ("dimension equals nullity", dimension_nullity),
        ("euler characteristic", euler_characteristic_check),
        ("independent-set formula", independent_set_formula),
        ("reciprocity", reciprocity),
        ("census regression", census_regression),
        ("groupoid properties", groupoid_suites),
    ];
    assert_eq!(enumerate_free_trees(10).map(|v| v.len()).ok(), Some(106));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("criterion 10: OUT OF SCOPE cohomological point counts are not implemented and not tested");
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
