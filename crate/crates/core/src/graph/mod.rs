//! Finite directed multigraphs.
//!
//! Vertex order is the order in which vertices were declared and fixes the
//! row/column indexing of every matrix derived from a graph. Loops and
//! parallel edges are allowed.

mod io;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::intlin::IntMatrix;

pub use io::parse_graph;

/// Maximum number of vertices accepted by [`Graph::new`].
pub const MAX_VERTICES: usize = 64;
/// Maximum number of edges accepted by [`Graph::new`].
pub const MAX_EDGES: usize = 4096;

/// Where in an input a problem was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    /// 1-based line (and optional 1-based column) of a text or JSON document.
    Line { line: usize, column: Option<usize> },
    /// Element `index` of the JSON array `field`.
    Element { field: &'static str, index: usize },
    /// Constructed programmatically.
    Unknown,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Position::Line { line, column: Some(c) } => write!(f, "line {line}, column {c}"),
            Position::Line { line, column: None } => write!(f, "line {line}"),
            Position::Element { field, index } => write!(f, "{field}[{index}]"),
            Position::Unknown => write!(f, "<input>"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: Position, message: String },
    #[error("duplicate vertex identifier {id:?} at {position}")]
    DuplicateVertex { id: String, position: Position },
    #[error("duplicate edge identifier {id:?} at {position}")]
    DuplicateEdge { id: String, position: Position },
    #[error("dangling endpoint: edge {edge:?} refers to unknown vertex {vertex:?} at {position}")]
    DanglingEndpoint { edge: String, vertex: String, position: Position },
    #[error("graph too large: {vertices} vertices, {edges} edges (limits {MAX_VERTICES} and {MAX_EDGES})")]
    TooLarge { vertices: usize, edges: usize },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} is not a source")]
    NotASource(String),
}

/// A directed edge `src -> dst`, endpoints given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// An immutable finite directed multigraph.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

/// An edge given by names, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, src: impl Into<String>, dst: impl Into<String>) -> Self {
        EdgeSpec { id: id.into(), src: src.into(), dst: dst.into() }
    }
}

impl Graph {
    /// Builds and validates a graph. Positions in errors are array indices.
    pub fn new(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> Result<Graph, GraphError> {
        let vpos: Vec<Position> = (0..vertices.len())
            .map(|index| Position::Element { field: "vertices", index })
            .collect();
        let epos: Vec<Position> = (0..edges.len())
            .map(|index| Position::Element { field: "edges", index })
            .collect();
        Self::with_positions(vertices, edges, &vpos, &epos)
    }

    pub(crate) fn with_positions(
        vertices: Vec<String>,
        edges: Vec<EdgeSpec>,
        vertex_pos: &[Position],
        edge_pos: &[Position],
    ) -> Result<Graph, GraphError> {
        if vertices.len() > MAX_VERTICES || edges.len() > MAX_EDGES {
            return Err(GraphError::TooLarge { vertices: vertices.len(), edges: edges.len() });
        }
        let pos = |list: &[Position], i: usize| list.get(i).cloned().unwrap_or(Position::Unknown);

        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex { id: v.clone(), position: pos(vertex_pos, i) });
            }
        }

        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut resolved = Vec::with_capacity(edges.len());
        for (i, spec) in edges.into_iter().enumerate() {
            let lookup = |name: &str| {
                vertex_index.get(name).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: spec.id.clone(),
                    vertex: name.to_string(),
                    position: pos(edge_pos, i),
                })
            };
            let src = lookup(&spec.src)?;
            let dst = lookup(&spec.dst)?;
            if edge_index.insert(spec.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge { id: spec.id, position: pos(edge_pos, i) });
            }
            resolved.push(Edge { id: spec.id, src, dst });
        }

        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in resolved.iter().enumerate() {
            out_edges[e.src].push(i);
            in_edges[e.dst].push(i);
        }

        Ok(Graph { vertices, edges: resolved, vertex_index, edge_index, out_edges, in_edges })
    }

    /// Convenience constructor from string slices.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Graph, GraphError> {
        Graph::new(
            vertices.iter().map(|v| v.to_string()).collect(),
            edges.iter().map(|&(id, s, d)| EdgeSpec::new(id, s, d)).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertex_ix(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_ix(&self, name: &str) -> Option<usize> {
        self.edge_index.get(name).copied()
    }

    /// Source vertex of edge `e`.
    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    /// Range vertex of edge `e`.
    pub fn dst(&self, e: usize) -> usize {
        self.edges[e].dst
    }

    /// Edges leaving `v`, in file order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// Edges entering `v`, in file order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out_edges[v].is_empty()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.in_edges[v].is_empty()
    }

    /// A vertex is regular when it emits at least one edge.
    pub fn is_regular(&self, v: usize) -> bool {
        !self.is_sink(v)
    }

    /// Indices of the vertices emitting no edge, in vertex order.
    pub fn sink_indices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_sink(v)).collect()
    }

    /// Indices of the vertices receiving no edge, in vertex order.
    pub fn source_indices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn regular_indices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_regular(v)).collect()
    }

    pub fn sinks(&self) -> Vec<&str> {
        self.sink_indices().into_iter().map(|v| self.vertex_name(v)).collect()
    }

    pub fn sources(&self) -> Vec<&str> {
        self.source_indices().into_iter().map(|v| self.vertex_name(v)).collect()
    }

    pub fn has_sinks(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_sink(v))
    }

    pub fn has_sources(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.is_source(v))
    }

    /// Deletes source `u` together with every edge it emits.
    pub fn remove_source(&self, u: &str) -> Result<Graph, GraphError> {
        let ui = self.vertex_ix(u).ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
        if !self.is_source(ui) {
            return Err(GraphError::NotASource(u.to_string()));
        }
        let vertices = self.vertices.iter().filter(|v| v.as_str() != u).cloned().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.src != ui)
            .map(|e| EdgeSpec::new(e.id.clone(), self.vertices[e.src].clone(), self.vertices[e.dst].clone()))
            .collect();
        // Sub-multigraph of a valid graph: cannot fail.
        Ok(Graph::new(vertices, edges).expect("subgraph of a valid graph"))
    }

    /// Repeatedly removes sources until none remain.
    pub fn desource(&self) -> Graph {
        self.desource_with_steps().0
    }

    /// Like [`Graph::desource`], also returning the removed vertices in the
    /// order they were removed (lowest vertex index first at each round).
    pub fn desource_with_steps(&self) -> (Graph, Vec<String>) {
        let mut g = self.clone();
        let mut removed = Vec::new();
        while let Some(&u) = g.source_indices().first() {
            let name = g.vertex_name(u).to_string();
            g = g.remove_source(&name).expect("source index is a source");
            removed.push(name);
        }
        (g, removed)
    }

    /// Entry `(i, j)` counts the edges from vertex `i` to vertex `j`.
    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for e in &self.edges {
            let entry = m.get(e.src, e.dst) + BigInt::from(1);
            m.set(e.src, e.dst, entry);
        }
        m
    }

    /// Canonical JSON serialization (the format accepted by [`parse_graph`]).
    pub fn to_json(&self) -> String {
        io::to_json(self)
    }

    /// Compact line-oriented serialization.
    pub fn to_text(&self) -> String {
        io::to_text(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_names(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")]).unwrap()
    }

    fn rose1() -> Graph {
        Graph::from_names(&["v"], &[("e", "v", "v")]).unwrap()
    }

    fn loop_cycle() -> Graph {
        Graph::from_names(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1")]).unwrap()
    }

    fn two_loops() -> Graph {
        Graph::from_names(
            &["v1", "v2"],
            &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1"), ("d", "v2", "v2")],
        )
        .unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn sinks_and_sources() {
        assert_eq!(path3().sinks(), vec!["v3"]);
        assert_eq!(path3().sources(), vec!["v1"]);
        assert!(rose1().sinks().is_empty());
        assert!(rose1().sources().is_empty());
        assert!(loop_cycle().sources().is_empty());

        let lonely = Graph::from_names(&["v"], &[]).unwrap();
        assert_eq!(lonely.sinks(), vec!["v"]);
        assert_eq!(lonely.sources(), vec!["v"]);
    }

    #[test]
    fn remove_source_cases() {
        let g = path3().remove_source("v1").unwrap();
        assert_eq!(g, Graph::from_names(&["v2", "v3"], &[("f2", "v2", "v3")]).unwrap());

        let h = Graph::from_names(&["u", "v"], &[("a", "u", "v"), ("l", "v", "v")]).unwrap();
        assert_eq!(h.remove_source("u").unwrap(), Graph::from_names(&["v"], &[("l", "v", "v")]).unwrap());

        assert_eq!(path3().remove_source("v2"), Err(GraphError::NotASource("v2".into())));
        assert_eq!(path3().remove_source("zz"), Err(GraphError::UnknownVertex("zz".into())));
    }

    #[test]
    fn desource_cases() {
        let (g, steps) = path3().desource_with_steps();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(steps, vec!["v1", "v2", "v3"]);
        assert_eq!(rose1().desource(), rose1());
        let h = Graph::from_names(&["u", "v"], &[("a", "u", "v"), ("l", "v", "v")]).unwrap();
        assert_eq!(h.desource(), Graph::from_names(&["v"], &[("l", "v", "v")]).unwrap());
    }

    #[test]
    fn adjacency_matrices() {
        assert_eq!(loop_cycle().adjacency(), m(&[&[1, 1], &[1, 0]]));
        assert_eq!(two_loops().adjacency(), m(&[&[1, 1], &[1, 1]]));
        assert_eq!(rose1().adjacency(), m(&[&[1]]));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Graph::from_names(&["v", "v"], &[]),
            Err(GraphError::DuplicateVertex { .. })
        ));
        assert!(matches!(
            Graph::from_names(&["v"], &[("e", "v", "v"), ("e", "v", "v")]),
            Err(GraphError::DuplicateEdge { .. })
        ));
        let names: Vec<String> = (0..=MAX_VERTICES).map(|i| format!("v{i}")).collect();
        assert!(matches!(Graph::new(names, vec![]), Err(GraphError::TooLarge { .. })));
    }
}
