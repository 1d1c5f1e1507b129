//! Inputs shared by the benchmarks.

use lpakt_core::corpus::{self, random_corpus, RandomGraphParams};
use lpakt_core::Graph;

/// Named graphs, from one vertex up to a six-vertex ring.
pub fn named_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("rose2", corpus::rose(2)),
        ("loop-cycle", corpus::loop_and_cycle()),
        ("two-loops", corpus::two_loops_and_cycle()),
        ("edge-cycle", corpus::edge_then_cycle()),
        ("ring6", ring(6)),
    ]
}

/// `v1 → v2 → … → vn → v1` with a loop at `v1`.
pub fn ring(n: usize) -> Graph {
    let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String)> =
        (0..n).map(|i| (format!("e{}", i + 1), names[i].clone(), names[(i + 1) % n].clone())).collect();
    edges.push(("l".into(), names[0].clone(), names[0].clone()));
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let es: Vec<(&str, &str, &str)> = edges.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    Graph::from_names(&vs, &es).expect("ring graph")
}

/// Seeded sink-free graphs with at most four vertices.
pub fn sink_free_corpus(count: usize) -> Vec<Graph> {
    random_corpus(17, count, &RandomGraphParams { sink_free: true, ..RandomGraphParams::default() })
}
