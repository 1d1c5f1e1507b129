//! Per-graph JSON reports and the built-in example report.

use serde::Serialize;
use serde_json::Value;

use crate::corpus::example_graphs;
use crate::cskl::{strongly_graded_via_cskl, CsklStrongReport};
use crate::graph::Graph;
use crate::intlin::IntMatrix;
use crate::ktheory::{
    compute_k0, compute_kgr, k0_pair_isomorphic, verify_exact_sequence, ExactnessReport, K0Summary, KgrModule,
};

/// Samples used for the `U ∘ φ = 0` clause.
pub const DEFAULT_SAMPLES: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KgrSummary {
    #[serde(rename = "B", serialize_with = "crate::json::matrix")]
    pub b: IntMatrix,
    pub eventual_rank: usize,
    #[serde(serialize_with = "crate::json::matrix")]
    pub restricted: IntMatrix,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub unit: Vec<num_bigint::BigInt>,
    pub group: String,
}

impl From<&KgrModule> for KgrSummary {
    fn from(m: &KgrModule) -> Self {
        KgrSummary {
            b: m.b().clone(),
            eventual_rank: m.eventual_rank(),
            restricted: m.restricted().clone(),
            unit: m.unit().vector,
            group: m.describe(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StronglyGraded {
    pub value: bool,
    pub certificate: CsklStrongReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphReport {
    pub k0: K0Summary,
    pub kgr: Option<KgrSummary>,
    pub exactness: Option<ExactnessReport>,
    pub strongly_graded: StronglyGraded,
}

/// All invariants of `g`; the graded parts are `None` when `g` has sinks.
pub fn graph_report(g: &Graph, samples: usize, seed: u64) -> GraphReport {
    let kgr = compute_kgr(g).ok();
    let certificate = strongly_graded_via_cskl(g);
    GraphReport {
        k0: compute_k0(g).summary(),
        kgr: kgr.as_ref().map(KgrSummary::from),
        exactness: kgr.is_some().then(|| verify_exact_sequence(g, samples, seed).expect("sink-free")),
        strongly_graded: StronglyGraded { value: certificate.strongly_graded(), certificate },
    }
}

/// Serializes with object keys sorted.
pub fn to_sorted_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable report");
    if pretty {
        serde_json::to_string_pretty(&v).expect("serializable report")
    } else {
        serde_json::to_string(&v).expect("serializable report")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleEntry {
    pub name: String,
    pub graph: Value,
    pub report: GraphReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExamplesReport {
    pub passed: bool,
    pub assertions: Vec<Assertion>,
    pub examples: Vec<ExampleEntry>,
}

impl ExamplesReport {
    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.passed).collect()
    }
}

/// Seed for the randomized clauses of the built-in report.
pub const EXAMPLES_SEED: u64 = 0;

/// Reports on the built-in corpus and checks the expected values.
pub fn example_report() -> ExamplesReport {
    let graphs = example_graphs();
    let find = |name: &str| &graphs.iter().find(|g| g.name == name).expect("built-in graph").graph;
    let mut assertions = Vec::new();
    let mut check = |name: &str, expected: &str, actual: String| {
        assertions.push(Assertion {
            name: name.to_string(),
            expected: expected.to_string(),
            passed: actual == expected,
            actual,
        });
    };

    for (name, expected) in [
        ("edge-cycle", "(Z, 3)"),
        ("path3", "(Z, 3)"),
        ("loop-cycle", "(0, 0)"),
        ("two-loops", "(0, 0)"),
        ("rose1", "(Z, 1)"),
        ("rose2", "(0, 0)"),
    ] {
        check(&format!("{name} K0 with unit"), expected, compute_k0(find(name)).to_string());
    }
    for (name, expected) in
        [("edge-cycle", "Z^2"), ("loop-cycle", "Z^2"), ("two-loops", "Z[1/2]"), ("rose1", "Z"), ("rose2", "Z[1/2]")]
    {
        check(&format!("{name} graded K0"), expected, compute_kgr(find(name)).map_or_else(|e| e.to_string(), |m| m.describe()));
    }
    let e = compute_kgr(find("loop-cycle")).expect("sink-free");
    check("loop-cycle |det B|", "1", e.b().det().magnitude().to_string());
    let f = compute_kgr(find("two-loops")).expect("sink-free");
    check("two-loops restricted matrix", "[[2]]", f.restricted().to_string());
    for (name, expected) in
        [("edge-cycle", "true"), ("path3", "false"), ("loop-cycle", "true"), ("two-loops", "true"), ("rose1", "true"), ("rose2", "true")]
    {
        check(&format!("{name} strongly graded"), expected, strongly_graded_via_cskl(find(name)).strongly_graded().to_string());
    }
    check(
        "path3 obstruction",
        "v3",
        strongly_graded_via_cskl(find("path3")).obstruction.unwrap_or_default(),
    );
    for name in ["edge-cycle", "loop-cycle", "two-loops", "rose1", "rose2"] {
        let r = verify_exact_sequence(find(name), DEFAULT_SAMPLES, EXAMPLES_SEED).expect("sink-free");
        check(&format!("{name} exact sequence"), "true", r.passed().to_string());
    }
    let label = |a: &str, b: &str| {
        let v = k0_pair_isomorphic(&compute_k0(find(a)), &compute_k0(find(b)));
        if v.is_yes() { "isomorphic" } else if v.is_no() { "not isomorphic" } else { "undecided" }.to_string()
    };
    check("edge-cycle vs path3 K0 pairs", "isomorphic", label("edge-cycle", "path3"));
    check("loop-cycle vs two-loops K0 pairs", "isomorphic", label("loop-cycle", "two-loops"));
    check("loop-cycle vs two-loops graded K0", "different", if e.describe() == f.describe() { "same" } else { "different" }.into());

    let examples = graphs
        .iter()
        .map(|g| ExampleEntry {
            name: g.name.to_string(),
            graph: serde_json::from_str(&g.graph.to_json()).expect("graph JSON"),
            report: graph_report(&g.graph, DEFAULT_SAMPLES, EXAMPLES_SEED),
        })
        .collect();
    ExamplesReport { passed: assertions.iter().all(|a| a.passed), assertions, examples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::path_graph;

    #[test]
    fn path_graph_report() {
        let r = graph_report(&path_graph(), 10, 0);
        assert_eq!(to_sorted_json(&serde_json::json!({ "k0": r.k0 }), false), r#"{"k0":{"freeRank":1,"torsion":[],"unit":[3]}}"#);
        assert!(r.kgr.is_none());
        assert!(!r.strongly_graded.value);
    }

    #[test]
    fn examples_pass() {
        let r = example_report();
        assert!(r.failures().is_empty(), "{:?}", r.failures());
    }

    #[test]
    fn sorted_keys() {
        let s = to_sorted_json(&serde_json::json!({"b": 1, "a": {"d": 2, "c": 3}}), false);
        assert_eq!(s, r#"{"a":{"c":3,"d":2},"b":1}"#);
    }
}
