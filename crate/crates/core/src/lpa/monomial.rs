use std::cmp::Ordering;

use serde::Serialize;

use crate::graph::Graph;

/// `αβ*` with `r(α) = r(β) = anchor`; a bare vertex when both paths are empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathMonomial {
    pub(crate) alpha: Vec<usize>,
    pub(crate) beta: Vec<usize>,
    pub(crate) anchor: usize,
}

impl PathMonomial {
    pub fn vertex(v: usize) -> Self {
        PathMonomial { alpha: vec![], beta: vec![], anchor: v }
    }

    pub fn edge(g: &Graph, e: usize) -> Self {
        PathMonomial { alpha: vec![e], beta: vec![], anchor: g.dst(e) }
    }

    pub fn ghost(g: &Graph, e: usize) -> Self {
        PathMonomial { alpha: vec![], beta: vec![e], anchor: g.dst(e) }
    }

    /// Checks composability and matching ranges. `anchor` is only consulted
    /// when both paths are empty.
    pub fn new(g: &Graph, alpha: Vec<usize>, beta: Vec<usize>, anchor: usize) -> Option<Self> {
        let range = |p: &[usize]| p.last().map(|&e| g.dst(e));
        let composable = |p: &[usize]| p.iter().all(|&e| e < g.edge_count()) && p.windows(2).all(|w| g.dst(w[0]) == g.src(w[1]));
        if !composable(&alpha) || !composable(&beta) {
            return None;
        }
        let anchor = match (range(&alpha), range(&beta)) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) if anchor < g.vertex_count() => anchor,
            (None, None) => return None,
        };
        Some(PathMonomial { alpha, beta, anchor })
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    /// Total path length `|α| + |β|`.
    pub fn length(&self) -> usize {
        self.alpha.len() + self.beta.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.alpha.is_empty() && self.beta.is_empty()
    }

    /// The vertex `u` with `u · αβ* = αβ*`.
    pub fn left_vertex(&self, g: &Graph) -> usize {
        self.alpha.first().map_or(self.anchor, |&e| g.src(e))
    }

    /// The vertex `u` with `αβ* · u = αβ*`.
    pub fn right_vertex(&self, g: &Graph) -> usize {
        self.beta.first().map_or(self.anchor, |&e| g.src(e))
    }

    /// `(αβ*)* = βα*`.
    pub fn star(&self) -> Self {
        PathMonomial { alpha: self.beta.clone(), beta: self.alpha.clone(), anchor: self.anchor }
    }

    pub fn to_text(&self, g: &Graph) -> String {
        if self.is_vertex() {
            return g.vertex_name(self.anchor).to_string();
        }
        let mut parts: Vec<String> = self.alpha.iter().map(|&e| g.edge(e).id.clone()).collect();
        parts.extend(self.beta.iter().rev().map(|&e| format!("{}*", g.edge(e).id)));
        parts.join(" ")
    }
}

impl Ord for PathMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), &self.alpha, &self.beta, self.anchor).cmp(&(other.degree(), &other.alpha, &other.beta, other.anchor))
    }
}

impl PartialOrd for PathMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
