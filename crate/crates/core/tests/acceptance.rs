//! End-to-end acceptance checks, one line of output per criterion.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lpakt_core::corpus::{self, RandomGraphParams};
use lpakt_core::cskl::strongly_graded_via_cskl;
use lpakt_core::graph::Graph;
use lpakt_core::intlin::{snf, IntMatrix};
use lpakt_core::ktheory::{compute_k0, compute_kgr, verify_exact_sequence};
use lpakt_core::lpa::{verify_strongly_graded, Lpa, LpaElement, PathMonomial};
use lpakt_core::monoid::{monoid_equal, one_step_expansions, replay, MonoidElement, MonoidVerdict};
use lpakt_core::report::{example_report, to_sorted_json};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail}; {took:.2?}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg()) }
}

fn k0_is_z_with_unit_three(g: &Graph) -> bool {
    let k = compute_k0(g);
    k.presentation.free_rank == 1 && k.presentation.torsion.is_empty() && k.unit == vec![BigInt::from(3)]
}

fn criterion_1() -> Outcome {
    let mut parts = Vec::new();
    for (name, g) in [("path graph", corpus::path_graph()), ("edge then 2-cycle", corpus::edge_then_cycle())] {
        let start = Instant::now();
        ensure(k0_is_z_with_unit_three(&g), || format!("{name}: got {}", compute_k0(&g)))?;
        parts.push(within(Duration::from_secs(1), start, format!("{name} (Z, 3)"))?);
    }
    Ok(parts.join(", "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (e, f) = (corpus::loop_and_cycle(), corpus::two_loops_and_cycle());
    ensure(compute_k0(&e).is_trivial() && compute_k0(&f).is_trivial(), || "K0 not trivial".into())?;
    let me = compute_kgr(&e).map_err(|x| x.to_string())?;
    ensure(me.eventual_rank() == 2 && me.b().is_unimodular(), || format!("E: rank {}, B {}", me.eventual_rank(), me.b()))?;
    let mf = compute_kgr(&f).map_err(|x| x.to_string())?;
    ensure(mf.eventual_rank() == 1 && *mf.restricted() == IntMatrix::from_rows(&[&[2]]), || {
        format!("F: rank {}, restricted {}", mf.eventual_rank(), mf.restricted())
    })?;
    within(Duration::from_secs(1), start, format!("E: {}, F: {}", me.describe(), mf.describe()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let graphs = corpus::random_corpus(3, 200, &RandomGraphParams::default());
    let mut with_sinks = 0;
    for (i, g) in graphs.iter().enumerate() {
        let got = strongly_graded_via_cskl(g).strongly_graded();
        ensure(got == !g.has_sinks(), || format!("graph #{i}: cskl verdict {got}\n{}", g.to_text()))?;
        with_sinks += usize::from(g.has_sinks());
    }
    let small = RandomGraphParams { max_vertices: 3, sink_free: true, ..RandomGraphParams::default() };
    let mut symbolic: Vec<Graph> = graphs.iter().filter(|g| !g.has_sinks() && g.vertex_count() <= 3).cloned().collect();
    symbolic.extend(corpus::random_corpus(31, 100, &small));
    for g in &symbolic {
        let r = verify_strongly_graded(g, 1).map_err(|x| x.to_string())?;
        ensure(r.passed, || format!("no certificate at n = 1 for\n{}", g.to_text()))?;
    }
    within(
        Duration::from_secs(60),
        start,
        format!("{} graphs ({with_sinks} with sinks), {} symbolic", graphs.len(), symbolic.len()),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let params = RandomGraphParams { sink_free: true, ..RandomGraphParams::default() };
    let graphs = corpus::random_corpus(4, 100, &params);
    for (i, g) in graphs.iter().enumerate() {
        let r = verify_exact_sequence(g, 500, i as u64).map_err(|x| x.to_string())?;
        ensure(r.passed(), || format!("graph #{i} failed: {r:?}\n{}", g.to_text()))?;
    }
    within(Duration::from_secs(120), start, format!("{} sink-free graphs, all four clauses", graphs.len()))
}

fn random_path_from<R: Rng>(g: &Graph, mut v: usize, len: usize, rng: &mut R) -> Vec<usize> {
    let mut p = Vec::new();
    for _ in 0..len {
        let out = g.out_edges(v);
        if out.is_empty() {
            break;
        }
        let e = out[rng.random_range(0..out.len())];
        p.push(e);
        v = g.dst(e);
    }
    p
}

fn random_path_into<R: Rng>(g: &Graph, mut v: usize, len: usize, rng: &mut R) -> Vec<usize> {
    let mut p = Vec::new();
    for _ in 0..len {
        let inc = g.in_edges(v);
        if inc.is_empty() {
            break;
        }
        let e = inc[rng.random_range(0..inc.len())];
        p.insert(0, e);
        v = g.src(e);
    }
    p
}

fn random_monomial<R: Rng>(lpa: &Lpa, rng: &mut R) -> LpaElement {
    let g = lpa.graph();
    let u = rng.random_range(0..g.vertex_count());
    let alpha = random_path_from(g, u, rng.random_range(0..=2), rng);
    let r = alpha.last().map_or(u, |&e| g.dst(e));
    let beta = random_path_into(g, r, rng.random_range(0..=2), rng);
    lpa.from_monomial(PathMonomial::new(g, alpha, beta, r).expect("composable"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let params = RandomGraphParams { max_vertices: 3, ..RandomGraphParams::default() };
    let graphs = corpus::random_corpus(5, 20, &params);
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut products = 0;
    for (gi, g) in graphs.iter().enumerate() {
        let lpa = Lpa::new(g);
        // CK1 and CK2
        for e in 0..g.edge_count() {
            ensure(lpa.mul(&lpa.ghost(e), &lpa.edge(e)) == lpa.vertex(g.dst(e)), || format!("graph #{gi}: e*e"))?;
            for &f in g.out_edges(g.src(e)) {
                if f != e {
                    ensure(lpa.mul(&lpa.ghost(e), &lpa.edge(f)).is_zero(), || format!("graph #{gi}: e*f"))?;
                }
            }
        }
        for v in g.regular_indices() {
            let sum = g.out_edges(v).iter().fold(lpa.zero(), |acc, &e| acc.add(&lpa.mul(&lpa.edge(e), &lpa.ghost(e))));
            ensure(sum == lpa.vertex(v), || format!("graph #{gi}: CK2 at {}", g.vertex_name(v)))?;
        }
        // two random rewriting orders against the monomial product
        for _ in 0..200 {
            let (x, y) = (random_monomial(&lpa, &mut rng), random_monomial(&lpa, &mut rng));
            let direct = lpa.mul(&x, &y);
            let r1 = lpa.mul_by_rewriting(&x, &y, &mut rng);
            let r2 = lpa.mul_by_rewriting(&x, &y, &mut rng);
            ensure(direct == r1 && r1 == r2, || {
                format!("graph #{gi}: {} · {}: {} / {} / {}", lpa.to_text(&x), lpa.to_text(&y), lpa.to_text(&direct), lpa.to_text(&r1), lpa.to_text(&r2))
            })?;
            products += 1;
        }
    }
    within(Duration::from_secs(60), start, format!("{products} products on {} graphs", graphs.len()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let graphs = corpus::random_corpus(6, 50, &RandomGraphParams::default());
    let (mut equal, mut distinct, mut open, mut steps) = (0, 0, 0, 0);
    for (gi, g) in graphs.iter().enumerate() {
        let k0 = compute_k0(g);
        let n = g.vertex_count();
        let class = |p: &MonoidElement| k0.class_of(p).expect("dimension");
        for u in 0..n {
            let p = MonoidElement::vertex(n, u);
            for q in one_step_expansions(g, &p).map_err(|e| e.to_string())? {
                ensure(class(&p) == class(&q), || format!("graph #{gi}: expansion of {} changes the class", g.vertex_name(u)))?;
                for r in one_step_expansions(g, &q).map_err(|e| e.to_string())? {
                    ensure(class(&q) == class(&r), || format!("graph #{gi}: second expansion changes the class"))?;
                    steps += 1;
                }
                steps += 1;
            }
            for v in 0..n {
                let q = MonoidElement::vertex(n, v);
                match monoid_equal(g, &p, &q, 12, 100_000).map_err(|e| e.to_string())? {
                    MonoidVerdict::Equal { witness, left_path, right_path } => {
                        ensure(class(&p) == class(&q), || format!("graph #{gi}: equal but classes differ"))?;
                        let ends = (replay(g, &p, &left_path), replay(g, &q, &right_path));
                        ensure(ends == (Ok(witness.clone()), Ok(witness)), || format!("graph #{gi}: witness does not replay"))?;
                        equal += 1;
                    }
                    MonoidVerdict::ProvenDistinct { .. } => distinct += 1,
                    MonoidVerdict::NotEqualWithinBudget { .. } => open += 1,
                }
            }
        }
    }
    within(
        Duration::from_secs(30),
        start,
        format!("{equal} equal, {distinct} distinct, {open} open pairs; {steps} steps preserve the class"),
    )
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// gcd of all `k × k` minors.
fn minor_gcd(a: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut g = 0i128;
    for rows in subsets(r, k) {
        for cols in subsets(c, k) {
            let m: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..500 {
        let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let a = IntMatrix::from_rows(&refs);
        let s = snf(&a);
        let fail = |what: &str| format!("matrix #{t} {a}: {what}");
        ensure(&(&s.u * &a) * &s.v == s.d, || fail("U A V != D"))?;
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), || fail("not unimodular"))?;
        ensure(s.d.is_diagonal(), || fail("D not diagonal"))?;
        ensure(&s.u * &s.u_inv == IntMatrix::identity(r) && &s.v * &s.v_inv == IntMatrix::identity(c), || fail("inverses"))?;
        let k = s.rank();
        ensure(s.diag.iter().take(k).all(|d| d.is_positive()), || fail("nonpositive invariant factor"))?;
        ensure(s.diag.windows(2).take(k.saturating_sub(1)).all(|w| w[1].is_multiple_of(&w[0])), || fail("divisibility"))?;
        let ai: Vec<Vec<i128>> = rows.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
        let mut prod = BigInt::one();
        for j in 1..=r.min(c) {
            let g = minor_gcd(&ai, j);
            if j <= k {
                prod *= &s.diag[j - 1];
                ensure(prod.to_i128() == Some(g), || fail(&format!("d1..d{j} = {prod}, minor gcd {g}")))?;
            } else {
                ensure(g == 0, || fail("minors beyond the rank are nonzero"))?;
            }
        }
        ensure(s.diag.iter().skip(k).all(Zero::is_zero), || fail("rank"))?;
    }
    within(Duration::from_secs(30), start, "500 matrices".into())
}

/// The `lpakt` binary next to this test's directory, when it has been built.
fn cli_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let bin = dir.join(format!("lpakt{}", std::env::consts::EXE_SUFFIX));
    bin.is_file().then_some(bin)
}

fn criterion_8() -> Outcome {
    let report = example_report();
    ensure(report.passed, || format!("failed assertions: {:?}", report.failures()))?;
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden/paper_examples.json");
    let expected = std::fs::read(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
    ensure((to_sorted_json(&report, false) + "\n").into_bytes() == expected, || "report differs from the golden file".into())?;
    let Some(bin) = cli_binary() else {
        return Ok(format!("{} assertions, library report matches the golden file; CLI binary not built", report.assertions.len()));
    };
    let out = Command::new(&bin).args(["paper-examples", "--format", "json"]).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {}", out.status))?;
    ensure(out.stdout == expected, || "CLI output differs from the golden file".into())?;
    Ok(format!("{} assertions, exit 0, CLI output byte-matches the golden file", report.assertions.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("path and edge-then-cycle graphs: K0 = (Z, 3)", criterion_1),
        ("loop-cycle and two-loops graphs: trivial K0, Z^2 and Z[1/2]", criterion_2),
        ("strong grading iff no sinks", criterion_3),
        ("exact sequence on random sink-free graphs", criterion_4),
        ("rewriting soundness and confluence", criterion_5),
        ("monoid and K0 consistency", criterion_6),
        ("Smith normal form against minor oracle", criterion_7),
        ("paper-examples report and golden file", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
