//! Named example graphs and seeded random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeSpec, Graph};

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: &'static str,
    pub graph: Graph,
}

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::from_names(vertices, edges).expect("well-formed built-in graph")
}

/// `v1 → v2 → v3`.
pub fn path_graph() -> Graph {
    build(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")])
}

/// `v1 → v2` followed by the 2-cycle `v2 ⇄ v3`.
pub fn edge_then_cycle() -> Graph {
    build(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3"), ("f3", "v3", "v2")])
}

/// A loop at `v1` and a 2-cycle `v1 ⇄ v2`; `Nᵗ = [[1,1],[1,0]]`.
pub fn loop_and_cycle() -> Graph {
    build(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1")])
}

/// Loops at both vertices and a 2-cycle; `Nᵗ = [[1,1],[1,1]]`.
pub fn two_loops_and_cycle() -> Graph {
    build(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v2"), ("d", "v2", "v1")])
}

/// One vertex with `k` loops.
pub fn rose(k: usize) -> Graph {
    let names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "v", "v")).collect();
    build(&["v"], &edges)
}

/// The built-in example corpus, in report order.
pub fn example_graphs() -> Vec<NamedGraph> {
    vec![
        NamedGraph { name: "edge-cycle", graph: edge_then_cycle() },
        NamedGraph { name: "path3", graph: path_graph() },
        NamedGraph { name: "loop-cycle", graph: loop_and_cycle() },
        NamedGraph { name: "two-loops", graph: two_loops_and_cycle() },
        NamedGraph { name: "rose1", graph: rose(1) },
        NamedGraph { name: "rose2", graph: rose(2) },
    ]
}

pub fn example_graph(name: &str) -> Option<Graph> {
    example_graphs().into_iter().find(|g| g.name == name).map(|g| g.graph)
}

/// Shape of random graphs: up to `max_vertices` vertices, up to
/// `max_parallel` edges per ordered pair, each pair empty with probability
/// `empty_pair`.
#[derive(Clone, Copy, Debug)]
pub struct RandomGraphParams {
    pub max_vertices: usize,
    pub max_parallel: usize,
    pub empty_pair: f64,
    /// Add an out-edge to every vertex lacking one.
    pub sink_free: bool,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams { max_vertices: 4, max_parallel: 3, empty_pair: 0.65, sink_free: false }
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, params: &RandomGraphParams) -> Graph {
    let n = rng.random_range(1..=params.max_vertices);
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let k = if rng.random_bool(params.empty_pair) { 0 } else { rng.random_range(1..=params.max_parallel) };
            pairs.extend(std::iter::repeat_n((u, v), k));
        }
    }
    if params.sink_free {
        for u in 0..n {
            if !pairs.iter().any(|&(s, _)| s == u) {
                pairs.push((u, rng.random_range(0..n)));
            }
        }
        pairs.sort_unstable();
    }
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| EdgeSpec::new(format!("e{}", i + 1), vertices[u].clone(), vertices[v].clone()))
        .collect();
    Graph::new(vertices, edges).expect("random graph is well formed")
}

/// `count` graphs drawn from `seed`.
pub fn random_corpus(seed: u64, count: usize, params: &RandomGraphParams) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_names_are_unique() {
        let names: Vec<&str> = example_graphs().iter().map(|g| g.name).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert_eq!(example_graph("rose2").unwrap().edge_count(), 2);
    }

    #[test]
    fn random_graphs_respect_bounds() {
        let params = RandomGraphParams::default();
        for g in random_corpus(3, 100, &params) {
            assert!((1..=4).contains(&g.vertex_count()));
            for u in 0..g.vertex_count() {
                for v in 0..g.vertex_count() {
                    let k = g.out_edges(u).iter().filter(|&&e| g.dst(e) == v).count();
                    assert!(k <= 3);
                }
            }
        }
        let sink_free = RandomGraphParams { sink_free: true, ..params };
        assert!(random_corpus(4, 100, &sink_free).iter().all(|g| !g.has_sinks()));
    }

    #[test]
    fn seeded_corpus_is_reproducible() {
        let p = RandomGraphParams::default();
        assert_eq!(random_corpus(9, 20, &p), random_corpus(9, 20, &p));
    }
}
