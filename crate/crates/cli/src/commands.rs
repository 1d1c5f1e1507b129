use std::collections::BTreeMap;
use std::path::Path;

use lpakt_core::corpus::{random_corpus, RandomGraphParams};
use lpakt_core::cskl::{realize, strongly_graded_via_cskl, CsklStrongReport, CsklVerdict, FullnessVerdict};
use lpakt_core::graph::{parse_graph, Graph};
use lpakt_core::ktheory::{compute_k0, compute_kgr, verify_exact_sequence, ExactnessReport, KtError};
use lpakt_core::lpa::{verify_strongly_graded, Lpa};
use lpakt_core::monoid::{monoid_equal, MonoidElement, MonoidStep, MonoidVerdict, DEFAULT_DEPTH, DEFAULT_FRONTIER};
use lpakt_core::report::{example_report as build_example_report, graph_report, to_sorted_json, KgrSummary, DEFAULT_SAMPLES};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::Format;

/// Result of a command that ran to completion.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub passed: bool,
    pub failures: Vec<Value>,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, passed: true, failures: Vec::new() }
    }

    fn checked(text: String, json: Value, failures: Vec<Value>) -> Output {
        Output { text, json, passed: failures.is_empty(), failures }
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => println!("{}", self.text),
            Format::Json => println!("{}", to_sorted_json(&self.json, false)),
        }
        for f in &self.failures {
            eprintln!("{}", to_sorted_json(&json!({ "failure": f }), false));
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparsable command input.
    Usage(String),
    /// Unreadable or malformed graph file.
    File(String),
    /// The computation does not apply to this input.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::File(_) => 3,
            CliError::Failed(_) => 1,
        }
    }

    pub fn print(&self, format: Format) {
        let (kind, msg) = match self {
            CliError::Usage(m) => ("usage", m),
            CliError::File(m) => ("file", m),
            CliError::Failed(m) => ("failed", m),
        };
        match format {
            Format::Text => eprintln!("error: {msg}"),
            Format::Json => eprintln!("{}", to_sorted_json(&json!({ "error": { "kind": kind, "message": msg } }), false)),
        }
    }
}

impl From<KtError> for CliError {
    fn from(e: KtError) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub fn load(path: Option<&Path>) -> Result<Graph, CliError> {
    let path = path.ok_or_else(|| CliError::Usage("--graph <PATH> is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::File(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::File(format!("{}: {e}", path.display())))
}

fn lines(parts: impl IntoIterator<Item = String>) -> String {
    parts.into_iter().collect::<Vec<_>>().join("\n")
}

fn mark(ok: bool) -> &'static str {
    if ok { "ok" } else { "FAILED" }
}

pub fn k0(g: &Graph) -> Result<Output, CliError> {
    let k = compute_k0(g);
    Ok(Output::ok(format!("K0 = {k}"), json!({ "k0": k.summary() })))
}

pub fn kgr(g: &Graph) -> Result<Output, CliError> {
    let m = compute_kgr(g)?;
    let s = KgrSummary::from(&m);
    let text = lines([
        format!("K0gr = {}", s.group),
        format!("B = {}", s.b),
        format!("eventual rank: {}", s.eventual_rank),
        format!("restricted matrix: {}", s.restricted),
        format!("unit: {}", m.unit()),
    ]);
    Ok(Output::ok(text, json!({ "kgr": s })))
}

fn verdict_line(r: &CsklStrongReport) -> String {
    match r.verdict {
        CsklVerdict::StronglyGraded => "strongly graded".to_string(),
        CsklVerdict::NotStronglyGraded => {
            format!("not strongly graded; sink: {}", r.obstruction.as_deref().unwrap_or("?"))
        }
        CsklVerdict::Undecided => "undecided within budget".to_string(),
    }
}

fn strong_json(r: &CsklStrongReport) -> Value {
    json!({ "value": r.strongly_graded(), "certificate": r })
}

pub fn strong(g: &Graph, nmax: Option<u32>) -> Result<Output, CliError> {
    let r = strongly_graded_via_cskl(g);
    let mut text = vec![verdict_line(&r)];
    let mut out = json!({ "stronglyGraded": strong_json(&r) });
    let mut failures = Vec::new();
    if let Some(n) = nmax {
        let sym = verify_strongly_graded(g, n).map_err(|e| CliError::Usage(e.to_string()))?;
        text.push(format!("symbolic check for n = 1..{n}: {}", if sym.passed { "certified" } else { "no certificate" }));
        if r.verdict != CsklVerdict::Undecided && sym.passed != r.strongly_graded() {
            failures.push(json!({ "check": "symbolic agrees with realization", "symbolic": sym.passed }));
        }
        out["symbolic"] = serde_json::to_value(&sym).expect("serializable");
    }
    Ok(Output::checked(lines(text), out, failures))
}

fn path_text(path: &[MonoidStep]) -> String {
    if path.is_empty() {
        return "(none)".into();
    }
    path.iter().map(|s| format!("{}@{}", s.vertex, s.step)).collect::<Vec<_>>().join(" ")
}

pub fn monoid_eq(g: &Graph, p: &str, q: &str, depth: Option<u64>, budget: Option<u64>) -> Result<Output, CliError> {
    let parse = |s: &str| MonoidElement::parse(g, s).map_err(|e| CliError::Usage(e.to_string()));
    let (a, b) = (parse(p)?, parse(q)?);
    let depth = depth.map_or(DEFAULT_DEPTH, |d| d as usize);
    let cap = budget.map_or(DEFAULT_FRONTIER, |b| b as usize);
    let v = monoid_equal(g, &a, &b, depth, cap).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match &v {
        MonoidVerdict::Equal { witness, left_path, right_path } => lines([
            format!("equal; common expansion {}", witness.display(g)),
            format!("left steps: {}", path_text(left_path)),
            format!("right steps: {}", path_text(right_path)),
        ]),
        MonoidVerdict::NotEqualWithinBudget { explored } => {
            format!("not equal within budget ({explored} elements explored)")
        }
        MonoidVerdict::ProvenDistinct { reason } => format!("distinct: {reason}"),
    };
    let out = json!({ "p": a.display(g).to_string(), "q": b.display(g).to_string(), "monoid": v });
    Ok(Output::ok(text, out))
}

pub fn lpa_eval(g: &Graph, terms: &[String]) -> Result<Output, CliError> {
    let lpa = Lpa::new(g);
    let mut acc: Option<lpakt_core::LpaElement> = None;
    for t in terms {
        let x = lpa.parse(t).map_err(|e| CliError::Usage(e.to_string()))?;
        acc = Some(match acc {
            Some(a) => lpa.mul(&a, &x),
            None => x,
        });
    }
    let r = acc.expect("at least one term");
    let text = lpa.to_text(&r);
    Ok(Output::ok(text.clone(), json!({ "result": text, "degrees": r.degrees(), "terms": r.term_count() })))
}

fn parse_choice(g: &Graph, choose: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for c in choose {
        let (v, e) = c.split_once('=').ok_or_else(|| CliError::Usage(format!("--choose expects VERTEX=EDGE, got {c:?}")))?;
        if g.vertex_ix(v.trim()).is_none() {
            return Err(CliError::Usage(format!("--choose: unknown vertex {v:?}")));
        }
        map.insert(v.trim().to_string(), e.trim().to_string());
    }
    Ok(map)
}

pub fn cskl_realize(g: &Graph, choose: &[String]) -> Result<Output, CliError> {
    let choice = parse_choice(g, choose)?;
    let (core, removed) = g.desource_with_steps();
    if core.vertex_count() == 0 {
        return Err(CliError::Failed("no vertices remain after removing sources".into()));
    }
    let choice: BTreeMap<String, String> = choice.into_iter().filter(|(v, _)| core.vertex_ix(v).is_some()).collect();
    let real = realize(&core, Some(&choice)).map_err(|e| CliError::Usage(e.to_string()))?;
    let lpa = real.lpa();
    let chosen: BTreeMap<&str, &str> = real
        .chosen_edges()
        .iter()
        .enumerate()
        .map(|(v, &e)| (core.vertex_name(v), core.edge(e).id.as_str()))
        .collect();
    let rules = real.check_rules();
    let (tp, tm, p) = (lpa.to_text(real.t_plus()), lpa.to_text(real.t_minus()), lpa.to_text(&real.p()));
    let mut text = Vec::new();
    if !removed.is_empty() {
        text.push(format!("removed sources: {}", removed.join(", ")));
    }
    text.extend([
        format!("t+ = {tp}"),
        format!("t- = {tm}"),
        format!("p = t+ t- = {p}"),
        format!("t- t+ = 1: {}", mark(rules.t_minus_t_plus_is_one)),
        format!("t+ t- = p: {}", mark(rules.t_plus_t_minus_is_p)),
        format!("r t- = t- phi(r): {} ({} samples)", mark(rules.r_t_minus), rules.samples),
        format!("t+ r = phi(r) t+: {} ({} samples)", mark(rules.t_plus_r), rules.samples),
    ]);
    let failures = if rules.passed() { Vec::new() } else { vec![json!({ "check": "defining rules", "rules": rules })] };
    let out = json!({
        "realization": {
            "removedSources": removed,
            "chosen": chosen,
            "tPlus": tp,
            "tMinus": tm,
            "p": p,
            "rules": rules,
        }
    });
    Ok(Output::checked(lines(text), out, failures))
}

pub fn cskl_check_strong(g: &Graph) -> Result<Output, CliError> {
    let r = strongly_graded_via_cskl(g);
    let mut text = vec![verdict_line(&r)];
    if !r.removed_sources.is_empty() {
        text.push(format!("removed sources: {}", r.removed_sources.join(", ")));
    }
    if let (Some(tp), Some(p)) = (&r.t_plus, &r.p) {
        text.push(format!("t+ = {tp}"));
        text.push(format!("p = {p}"));
    }
    match &r.fullness {
        Some(FullnessVerdict::Full { certificate }) => {
            text.push("1 = sum of c mu p mu*:".to_string());
            for t in certificate {
                text.push(format!("  {} ({}) p ({})", t.coefficient, t.left, t.right));
            }
            text.push(format!("certificate verified: {}", r.certificate_verified == Some(true)));
        }
        Some(FullnessVerdict::NotFull { sink }) => text.push(format!("p vanishes on the sink {sink}")),
        Some(FullnessVerdict::UnknownWithinBudget { explored }) => {
            text.push(format!("no certificate after {explored} candidates"))
        }
        None => {}
    }
    Ok(Output::ok(lines(text), json!({ "stronglyGraded": strong_json(&r) })))
}

fn exactness_lines(r: &ExactnessReport) -> Vec<String> {
    vec![
        format!("U phi = 0 on {} samples: {}", r.u_phi_zero.samples, mark(r.u_phi_zero.passed)),
        format!("U surjective on generators: {}", mark(r.u_surjective.passed)),
        format!("coker phi matches K0: {}", mark(r.cokernel_matches.passed)),
        format!("shift relation, {} pairs: {}", r.shift_relation.checked, mark(r.shift_relation.passed)),
    ]
}

pub fn verify_exact(g: &Graph, budget: Option<u64>, seed: u64) -> Result<Output, CliError> {
    let samples = budget.map_or(DEFAULT_SAMPLES, |b| b as usize);
    let r = verify_exact_sequence(g, samples, seed)?;
    let failures = if r.passed() { Vec::new() } else { vec![json!({ "check": "exact sequence", "report": r })] };
    Ok(Output::checked(lines(exactness_lines(&r)), json!({ "exactness": r }), failures))
}

/// Graph count of `verify-all` without `--graph`.
const VERIFY_ALL_GRAPHS: usize = 50;

fn verify_one(name: &str, g: &Graph, seed: u64) -> (Value, Vec<Value>) {
    let report = graph_report(g, DEFAULT_SAMPLES, seed);
    let mut failures = Vec::new();
    let strong = report.strongly_graded.value;
    let undecided = report.strongly_graded.certificate.verdict == CsklVerdict::Undecided;
    if undecided || strong == g.has_sinks() {
        failures.push(json!({ "graph": name, "check": "strongly graded iff no sinks", "value": strong }));
    }
    if report.exactness.as_ref().is_some_and(|r| !r.passed()) {
        failures.push(json!({ "graph": name, "check": "exact sequence" }));
    }
    if !g.has_sinks() && g.vertex_count() <= 3 {
        let sym = verify_strongly_graded(g, 1).expect("nmax in range");
        if !sym.passed {
            failures.push(json!({ "graph": name, "check": "symbolic certificate at n = 1" }));
        }
    }
    let graph: Value = serde_json::from_str(&g.to_json()).expect("graph JSON");
    let entry = json!({ "name": name, "graph": graph, "report": report, "passed": failures.is_empty() });
    (entry, failures)
}

pub fn verify_all(g: Option<Graph>, budget: Option<u64>, seed: u64) -> Result<Output, CliError> {
    let graphs: Vec<(String, Graph)> = match g {
        Some(g) => vec![("input".to_string(), g)],
        None => {
            let count = budget.map_or(VERIFY_ALL_GRAPHS, |b| b as usize);
            random_corpus(seed, count, &RandomGraphParams::default())
                .into_iter()
                .enumerate()
                .map(|(i, g)| (format!("g{:03}", i + 1), g))
                .collect()
        }
    };
    let mut results: Vec<(String, Value, Vec<Value>)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, (name, g))| {
            let (entry, failures) = verify_one(name, g, seed.wrapping_add(i as u64));
            (name.clone(), entry, failures)
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let failed = results.iter().filter(|r| !r.2.is_empty()).count();
    let text = lines(
        results
            .iter()
            .map(|(name, _, f)| format!("{} {name}", if f.is_empty() { "PASS" } else { "FAIL" }))
            .chain([format!("{} of {} graphs passed", results.len() - failed, results.len())]),
    );
    let failures: Vec<Value> = results.iter().flat_map(|r| r.2.clone()).collect();
    let out = json!({
        "seed": seed,
        "passed": failures.is_empty(),
        "graphs": results.into_iter().map(|r| r.1).collect::<Vec<_>>(),
    });
    Ok(Output::checked(text, out, failures))
}

pub fn example_report() -> Output {
    let r = build_example_report();
    let mut text: Vec<String> = r
        .assertions
        .iter()
        .map(|a| {
            if a.passed {
                format!("PASS {}: {}", a.name, a.actual)
            } else {
                format!("FAIL {}: expected {}, got {}", a.name, a.expected, a.actual)
            }
        })
        .collect();
    let failed = r.failures().len();
    text.push(format!("{} of {} assertions passed", r.assertions.len() - failed, r.assertions.len()));
    let failures = r.failures().into_iter().map(|a| serde_json::to_value(a).expect("serializable")).collect();
    Output::checked(lines(text), serde_json::to_value(&r).expect("serializable"), failures)
}
