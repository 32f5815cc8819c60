//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{canonical_coloring, red_green_components};
use crate::counting::{
    census, orange_unimodal_chain, versal_by_independent_sets, CensusClass, Counter, LocalMemo, NoMemo,
    PhiAssignment, PhiSpec,
};
use crate::enumerate::trees_up_to;
use crate::error::{Error, Result};
use crate::fq::{count_points_naive, CheckStatus, FqContext, ParameterTable, PointCount, VerifyReport};
use crate::graph::{parse_edge_list, Tree};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::groupoid::{normalize_with, rank_profile, CoefficientState, Extension};
use crate::poly::CountPolynomial;
use crate::sets::{admissible_sets, all_maximum_matchings, independent_sets, maximum_matching, Matching};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

const DEFAULT_MAX_N: usize = 62;
const DEFAULT_VERIFY_N: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "treecount", version, about = "Canonical tree colorings and point-count polynomials")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized choices (leaf order, linear extensions).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Run jobs that exceed the work budget.
    #[arg(long, global = true)]
    pub force: bool,
    /// Largest accepted tree; also the sweep bound for `verify` without input.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Input {
    /// Tree as a graph6 record.
    #[arg(long, conflicts_with_all = ["edges", "family"])]
    pub graph6: Option<String>,
    /// File with one edge `u v` per line.
    #[arg(long, conflicts_with = "family")]
    pub edges: Option<PathBuf>,
    /// Vertices in the edge file are numbered from 1.
    #[arg(long, requires = "edges")]
    pub one_based: bool,
    /// Named family (vertices reported from 1).
    #[arg(long, value_enum, ignore_case = true, requires = "n")]
    pub family: Option<Family>,
    /// Family size.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Factored,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recursion,
    Chain,
    IndependentSets,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Colors, dominoes, dimension and red-green components.
    Color {
        #[command(flatten)]
        input: Input,
    },
    /// Matchings, independent sets and admissible sets.
    Sets {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        matchings: bool,
        #[arg(long)]
        independent: bool,
        #[arg(long)]
        admissible: bool,
        #[arg(long)]
        count_only: bool,
    },
    /// Normalized coefficient table for a maximum matching.
    Normalize {
        #[command(flatten)]
        input: Input,
        /// Dominoes as `u-v,u-v,...`; defaults to a greedy maximum matching.
        #[arg(long)]
        matching: Option<String>,
    },
    /// Point-count polynomial.
    Count {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "generic")]
        phi: String,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, value_enum, default_value = "recursion")]
        method: Method,
    },
    /// Brute-force point count over a prime field.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "generic")]
        phi: String,
        /// One full count per parameter tuple instead of the parameter table.
        #[arg(long)]
        naive: bool,
    },
    /// Compare polynomials with brute-force counts.
    Verify {
        #[command(flatten)]
        input: Input,
        /// A mode specification, or `all` for every assignment.
        #[arg(long, default_value = "all")]
        phi: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
    /// Trees of one size grouped by polynomial.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        class: String,
        #[arg(long)]
        list_collisions: bool,
    },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Graph6(_)
        | Error::NotATree(_)
        | Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::Phi(_)
        | Error::InconsistentMode(_)
        | Error::NotRed(_)
        | Error::NotRedGreen(..)
        | Error::DisallowedJump { .. }
        | Error::NotMaximum { .. }
        | Error::ZeroAlpha(_) => EXIT_PARSE,
        Error::SizeGuard { .. } | Error::Budget(_) => EXIT_GUARD,
        Error::InexactDivision(_) | Error::Invariant(_) => EXIT_FAILURE,
    }
}

/// Parses arguments and runs; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// A tree plus the offset used when echoing vertex labels.
struct Loaded {
    tree: Tree,
    offset: usize,
}

impl Loaded {
    fn label(&self, v: usize) -> usize {
        v + self.offset
    }

    fn labels(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.label(v)).collect()
    }

    fn pair(&self, (u, v): (usize, usize)) -> String {
        format!("{}-{}", self.label(u), self.label(v))
    }

    /// Shifts component indices from user numbering to internal numbering.
    fn phi(&self, text: &str) -> Result<PhiAssignment> {
        let spec = match PhiSpec::parse(text)? {
            PhiSpec::PerComponent(map) => PhiSpec::PerComponent(
                map.into_iter()
                    .map(|(k, m)| {
                        k.checked_sub(self.offset)
                            .map(|k| (k, m))
                            .ok_or_else(|| Error::Phi(format!("component index {k} below {}", self.offset)))
                    })
                    .collect::<Result<_>>()?,
            ),
            other => other,
        };
        spec.resolve(&self.tree)
    }

    fn phi_json(&self, phi: &PhiAssignment) -> Value {
        Value::Object(phi.iter().map(|(k, m)| (self.label(k).to_string(), json!(m.to_string()))).collect())
    }
}

fn load(input: &Input, max_n: usize) -> Result<Loaded> {
    let (tree, offset) = match (&input.graph6, &input.edges, input.family) {
        (Some(g), None, None) => (parse_graph6(g)?, 0),
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            (parse_edge_list(&text, input.one_based)?, usize::from(input.one_based))
        }
        (None, None, Some(f)) => {
            let n = input.n.ok_or_else(|| Error::Parse("--family needs --n".into()))?;
            if n > max_n {
                return Err(Error::SizeGuard { what: "tree size", limit: max_n, got: n });
            }
            let t = match f {
                Family::A if n >= 1 => Tree::path(n),
                Family::A => return Err(Error::InvalidArgument("A_n needs n >= 1".into())),
                Family::D => Tree::dynkin_d(n)?,
                Family::E => Tree::dynkin_e(n)?,
            };
            (t, 1)
        }
        (None, None, None) => return Err(Error::Parse("one of --graph6, --edges or --family is required".into())),
        _ => return Err(Error::Parse("give exactly one input source".into())),
    };
    if tree.n() > max_n {
        return Err(Error::SizeGuard { what: "tree size", limit: max_n, got: tree.n() });
    }
    Ok(Loaded { tree, offset })
}

fn has_input(input: &Input) -> bool {
    input.graph6.is_some() || input.edges.is_some() || input.family.is_some()
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn emit(value: Value) -> String {
    let mut v = value;
    v["timestamp"] = json!(timestamp());
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let max_n = cli.max_n.unwrap_or(DEFAULT_MAX_N);
    match &cli.command {
        Command::Color { input } => color(cli, &load(input, max_n)?),
        Command::Sets { input, matchings, independent, admissible, count_only } => {
            let all = !(*matchings || *independent || *admissible);
            sets(cli, &load(input, max_n)?, all || *matchings, all || *independent, all || *admissible, *count_only)
        }
        Command::Normalize { input, matching } => normalize(cli, &load(input, max_n)?, matching.as_deref()),
        Command::Count { input, phi, format, method } => count(cli, &load(input, max_n)?, phi, *format, *method),
        Command::Oracle { input, q, phi, naive } => oracle(cli, &load(input, max_n)?, *q, phi, *naive),
        Command::Verify { input, phi, primes } => {
            if has_input(input) {
                verify_one(cli, &load(input, max_n)?, phi, primes)
            } else {
                verify_sweep(cli, cli.max_n.unwrap_or(DEFAULT_VERIFY_N), primes)
            }
        }
        Command::Census { n, class, list_collisions } => census_cmd(cli, *n, class, *list_collisions),
    }
}

fn color(cli: &Cli, l: &Loaded) -> Result<(i32, String)> {
    let t = &l.tree;
    let c = canonical_coloring(t);
    c.check_local_characterization(t)?;
    let p = red_green_components(t, &c);
    if cli.json {
        let comps: Vec<Value> = p
            .components
            .iter()
            .map(|k| json!({"index": l.label(k.index()), "vertices": l.labels(&k.vertices), "dimension": k.dimension(&c)}))
            .collect();
        return Ok((
            EXIT_OK,
            emit(json!({
                "graph6": emit_graph6(t)?,
                "colors": (0..t.n()).map(|v| c.color(v).to_string()).collect::<Vec<_>>(),
                "dominoes": c.dominoes.iter().map(|&(u, v)| [l.label(u), l.label(v)]).collect::<Vec<_>>(),
                "dimension": c.dimension(),
                "components": comps,
            })),
        ));
    }
    let mut out = String::new();
    for v in 0..t.n() {
        writeln!(out, "vertex {}: {}", l.label(v), c.color(v)).ok();
    }
    let dom: Vec<String> = c.dominoes.iter().map(|&d| l.pair(d)).collect();
    writeln!(out, "dominoes: {}", if dom.is_empty() { "none".into() } else { dom.join(", ") }).ok();
    writeln!(out, "dimension: {}", c.dimension()).ok();
    for k in &p.components {
        writeln!(out, "component {}: vertices {:?}, dimension {}", l.label(k.index()), l.labels(&k.vertices), k.dimension(&c))
            .ok();
    }
    Ok((EXIT_OK, out))
}

fn sets(cli: &Cli, l: &Loaded, matchings: bool, independent: bool, admissible: bool, count_only: bool) -> Result<(i32, String)> {
    let t = &l.tree;
    let c = canonical_coloring(t);
    let mut report = serde_json::Map::new();
    let mut out = String::new();
    if matchings {
        let all = all_maximum_matchings(t)?;
        let rendered: Vec<Vec<String>> =
            all.iter().map(|m| m.edges().iter().map(|&e| l.pair(e)).collect()).collect();
        writeln!(out, "maximum matchings: {} (size {})", all.len(), maximum_matching(t).len()).ok();
        if !count_only {
            for m in &rendered {
                writeln!(out, "  {{{}}}", m.join(", ")).ok();
            }
        }
        report.insert("maximum_matching_size".into(), json!(maximum_matching(t).len()));
        report.insert("maximum_matching_count".into(), json!(all.len()));
        if !count_only {
            report.insert("maximum_matchings".into(), json!(rendered));
        }
    }
    if independent {
        let mut count = 0usize;
        let mut listed = Vec::new();
        for s in independent_sets(t)? {
            count += 1;
            if !count_only {
                listed.push(l.labels(&s));
            }
        }
        let vc = crate::sets::count_maximum_independent_sets(t);
        writeln!(out, "independent sets: {count}").ok();
        writeln!(out, "maximum independent sets: {vc}").ok();
        for s in &listed {
            writeln!(out, "  {s:?}").ok();
        }
        report.insert("independent_set_count".into(), json!(count));
        report.insert("maximum_independent_set_count".into(), json!(vc.to_string()));
        if !count_only {
            report.insert("independent_sets".into(), json!(listed));
        }
    }
    if admissible {
        let mut comps = Vec::new();
        for k in &red_green_components(t, &c).components {
            let sets = admissible_sets(t, &c, k)?;
            writeln!(out, "component {}: {} admissible sets", l.label(k.index()), sets.len()).ok();
            let rendered: Vec<Value> = sets
                .iter()
                .map(|s| json!({"members": l.labels(&s.members), "signs": s.signs}))
                .collect();
            if !count_only {
                for s in &sets {
                    let terms: Vec<String> = s
                        .members
                        .iter()
                        .zip(&s.signs)
                        .map(|(&v, &g)| format!("{}{}", if g > 0 { "+" } else { "-" }, l.label(v)))
                        .collect();
                    writeln!(out, "  {{{}}}", terms.join(" ")).ok();
                }
            }
            let mut entry = json!({"index": l.label(k.index()), "count": sets.len()});
            if !count_only {
                entry["sets"] = json!(rendered);
            }
            comps.push(entry);
        }
        report.insert("admissible".into(), json!(comps));
    }
    if cli.json {
        return Ok((EXIT_OK, emit(Value::Object(report))));
    }
    Ok((EXIT_OK, out))
}

fn parse_matching(l: &Loaded, text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = item.split_once('-').ok_or_else(|| Error::Parse(format!("expected u-v, got '{item}'")))?;
        let num = |s: &str| -> Result<usize> {
            let x: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad vertex '{s}'")))?;
            x.checked_sub(l.offset).ok_or_else(|| Error::Parse(format!("vertex {x} below {}", l.offset)))
        };
        edges.push((num(a)?, num(b)?));
    }
    let m = Matching::new(edges)?;
    if !m.is_matching_of(&l.tree) {
        return Err(Error::InvalidArgument("matching uses a non-edge".into()));
    }
    Ok(m)
}

fn normalize(cli: &Cli, l: &Loaded, matching: Option<&str>) -> Result<(i32, String)> {
    let t = &l.tree;
    let c = canonical_coloring(t);
    let m = match matching {
        Some(text) => parse_matching(l, text)?,
        None => maximum_matching(t),
    };
    let how = cli.seed.map_or(Extension::Smallest, Extension::Random);
    let state = normalize_with(&CoefficientState::symbolic(t.n()), t, &c, &m, how)?;
    if cli.json {
        let table: Vec<Value> = state
            .coeff
            .iter()
            .map(|mono| Value::Object(mono.iter().map(|(&s, &e)| (format!("a{}", l.label(s)), json!(e))).collect()))
            .collect();
        return Ok((
            EXIT_OK,
            emit(json!({
                "matching": m.edges().iter().map(|&(u, v)| [l.label(u), l.label(v)]).collect::<Vec<_>>(),
                "support": l.labels(&state.support()),
                "exponents": table,
            })),
        ));
    }
    let dom: Vec<String> = m.edges().iter().map(|&e| l.pair(e)).collect();
    let mut out = format!("matching: {}\n", dom.join(", "));
    out.push_str(&state.table(l.offset));
    Ok((EXIT_OK, out))
}

fn count(cli: &Cli, l: &Loaded, phi_text: &str, format: Format, method: Method) -> Result<(i32, String)> {
    let t = &l.tree;
    let phi = l.phi(phi_text)?;
    let profile = rank_profile(t, &phi)?;
    let poly: CountPolynomial = match method {
        Method::Recursion => match cli.seed {
            Some(seed) => Counter::randomized(&NoMemo, seed).tree(t, &phi)?,
            None => Counter::new(&LocalMemo::default()).tree(t, &phi)?,
        },
        Method::Chain => {
            if phi.iter().any(|(_, m)| m != crate::counting::Mode::Versal) {
                return Err(Error::Phi("the chain computes orange and versal counts only".into()));
            }
            orange_unimodal_chain(t)?
        }
        Method::IndependentSets => {
            if phi.iter().any(|(_, m)| m != crate::counting::Mode::Versal) {
                return Err(Error::Phi("the independent-set sum computes versal counts only".into()));
            }
            versal_by_independent_sets(t)?
        }
    };
    if cli.json || format == Format::Json {
        return Ok((
            EXIT_OK,
            emit(json!({
                "coeffs": poly.coeffs().iter().map(|c| json!(i64::try_from(*c).ok().map_or_else(|| json!(c.to_string()), |x| json!(x)))).collect::<Vec<_>>(),
                "degree": poly.degree(),
                "rank": profile.rank,
                "versal_rank": profile.versal_rank,
                "polynomial": poly.to_string(),
                "factored": poly.factored(),
                "graph6": emit_graph6(t)?,
                "phi": l.phi_json(&phi),
            })),
        ));
    }
    let text = match format {
        Format::Factored => poly.factored(),
        _ => poly.to_string(),
    };
    Ok((EXIT_OK, format!("{text}\n")))
}

fn oracle(cli: &Cli, l: &Loaded, q: u64, phi_text: &str, naive: bool) -> Result<(i32, String)> {
    let t = &l.tree;
    let ctx = FqContext::new(q)?;
    let phi = l.phi(phi_text)?;
    let result = if naive {
        count_points_naive(t, &phi, &ctx, cli.force)?
    } else {
        ParameterTable::build(t, &ctx, cli.force)?.count_points(&phi)?
    };
    let (value, text) = match result {
        PointCount::Count(c) => (json!(c.to_string()), c.to_string()),
        PointCount::NoGenericParameters => (Value::Null, "no generic parameters".to_string()),
    };
    if cli.json {
        return Ok((EXIT_OK, emit(json!({"q": q, "count": value, "phi": l.phi_json(&phi), "graph6": emit_graph6(t)?}))));
    }
    Ok((EXIT_OK, format!("{text}\n")))
}

fn report_json(l: Option<&Loaded>, t: &Tree, phi: &PhiAssignment, r: &VerifyReport) -> Value {
    let phi_json = match l {
        Some(l) => l.phi_json(phi),
        None => Value::Object(phi.iter().map(|(k, m)| (k.to_string(), json!(m.to_string()))).collect()),
    };
    json!({
        "graph6": emit_graph6(t).unwrap_or_default(),
        "phi": phi_json,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "q": c.q,
            "expected": c.expected.to_string(),
            "observed": c.observed.map(|x| x.to_string()),
            "status": format!("{:?}", c.status),
        })).collect::<Vec<_>>(),
    })
}

fn render_report(r: &VerifyReport) -> String {
    r.checks
        .iter()
        .map(|c| match c.status {
            CheckStatus::Pass => format!("q={} ok", c.q),
            CheckStatus::Skipped => format!("q={} skipped (no generic parameters)", c.q),
            CheckStatus::Fail => format!("q={} MISMATCH expected {} got {}", c.q, c.expected, c.observed.unwrap_or(0)),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn verify_one(cli: &Cli, l: &Loaded, phi_text: &str, primes: &[u64]) -> Result<(i32, String)> {
    let t = &l.tree;
    let phis = if phi_text.trim() == "all" { PhiAssignment::all(t)? } else { vec![l.phi(phi_text)?] };
    let mut ok = true;
    let mut out = String::new();
    let mut entries = Vec::new();
    for phi in &phis {
        let r = crate::fq::verify_polynomial(t, phi, primes, cli.force)?;
        ok &= r.passed();
        writeln!(out, "{} {}: {}", if r.passed() { "PASS" } else { "FAIL" }, render_phi(l, phi), render_report(&r)).ok();
        entries.push(report_json(Some(l), t, phi, &r));
    }
    let code = if ok { EXIT_OK } else { EXIT_MISMATCH };
    if cli.json {
        return Ok((code, emit(json!({"passed": ok, "reports": entries}))));
    }
    writeln!(out, "{}", if ok { "PASS" } else { "FAIL" }).ok();
    Ok((code, out))
}

fn render_phi(l: &Loaded, phi: &PhiAssignment) -> String {
    if phi.is_empty() {
        return "orange".into();
    }
    phi.iter().map(|(k, m)| format!("{}={m}", l.label(k))).collect::<Vec<_>>().join(",")
}

fn verify_sweep(cli: &Cli, max_n: usize, primes: &[u64]) -> Result<(i32, String)> {
    let mut ok = true;
    let mut total = 0usize;
    let mut skipped = 0usize;
    let mut out = String::new();
    let mut entries = Vec::new();
    for t in trees_up_to(max_n)? {
        let l = Loaded { tree: t.clone(), offset: 0 };
        for (phi, r) in crate::fq::verify_all_assignments(&t, primes, cli.force)? {
            total += 1;
            skipped += r.skipped().len();
            if !r.passed() {
                ok = false;
                writeln!(out, "FAIL {} {}: {}", emit_graph6(&t)?, render_phi(&l, &phi), render_report(&r)).ok();
            }
            entries.push(report_json(None, &t, &phi, &r));
        }
    }
    let code = if ok { EXIT_OK } else { EXIT_MISMATCH };
    if cli.json {
        return Ok((code, emit(json!({"passed": ok, "assignments": total, "skipped_checks": skipped, "reports": entries}))));
    }
    writeln!(out, "{} trees up to {max_n} vertices: {total} assignments, {skipped} skipped checks", if ok { "PASS" } else { "FAIL" })
        .ok();
    Ok((code, out))
}

fn census_cmd(cli: &Cli, n: usize, class: &str, list: bool) -> Result<(i32, String)> {
    let class: CensusClass = class.parse()?;
    let r = census(n, class)?;
    if cli.json {
        let mut v = serde_json::to_value(&r).expect("serializable");
        if !list {
            v.as_object_mut().expect("object").remove("collisions");
        }
        return Ok((EXIT_OK, emit(v)));
    }
    let mut out = format!(
        "{:?} trees on {n} vertices: {} trees, {} distinct polynomials\n",
        r.class, r.tree_count, r.distinct_polynomial_count
    );
    if list {
        for c in &r.collisions {
            writeln!(out, "  {}: {}", c.polynomial, c.graph6.join(" ")).ok();
        }
    }
    Ok((EXIT_OK, out))
}

/// Caps the global worker pool from `TREECOUNT_THREADS`.
pub fn configure_threads() {
    if let Some(n) = std::env::var("TREECOUNT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("treecount").chain(args.iter().copied()))
    }

    #[test]
    fn count_family() {
        let o = go(&["count", "--family", "a", "--n", "2"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "q^2 + 1\n");
    }

    #[test]
    fn color_single() {
        let o = go(&["color", "--graph6", "@"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("vertex 0: Red"));
    }

    #[test]
    fn verify_d4() {
        let o = go(&["verify", "--family", "d", "--n", "4", "--phi", "generic", "--primes", "3,5"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.trim_end().ends_with("PASS"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["color", "--graph6", "Ih"]).code, EXIT_PARSE);
        assert_eq!(go(&["color", "--graph6", "Bw"]).code, EXIT_PARSE);
        assert_eq!(go(&["color"]).code, EXIT_PARSE);
        assert_eq!(go(&["census", "--n", "15", "--class", "orange"]).code, EXIT_GUARD);
        assert_eq!(go(&["color", "--family", "a", "--n", "9", "--max-n", "8"]).code, EXIT_GUARD);
        assert_eq!(go(&["oracle", "--family", "a", "--n", "14", "--q", "7"]).code, EXIT_GUARD);
        assert_eq!(go(&["nonsense"]).code, EXIT_PARSE);
    }
}
