//! The graph monoid `M_E`: vertex multisets modulo `v = Σ_{s(e)=v} r(e)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::ktheory::compute_k0;

pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_FRONTIER: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("dimension mismatch: graph has {expected} vertices, element has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("depth budget is zero but the elements differ")]
    ZeroBudget,
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("step {step}: vertex {vertex:?} cannot be expanded")]
    BadStep { step: usize, vertex: String },
}

/// A multiset of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MonoidElement(pub Vec<u64>);

impl MonoidElement {
    pub fn zero(n: usize) -> Self {
        MonoidElement(vec![0; n])
    }

    /// The generator `[v]`.
    pub fn vertex(n: usize, v: usize) -> Self {
        let mut c = vec![0; n];
        c[v] = 1;
        MonoidElement(c)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MonoidElement) -> MonoidElement {
        MonoidElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_int_vector(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Parses `v1 + 2 v3` style sums of vertex names.
    pub fn parse(g: &Graph, text: &str) -> Result<MonoidElement, MonoidError> {
        let mut c = vec![0; g.vertex_count()];
        let text = text.trim();
        if text.is_empty() || text == "0" {
            return Ok(MonoidElement(c));
        }
        for term in text.split('+') {
            let term = term.trim();
            let (k, name) = match term.split_once(|ch: char| ch.is_whitespace() || ch == '*') {
                Some((k, rest)) if k.parse::<u64>().is_ok() => (k.parse().unwrap(), rest.trim()),
                _ => (1, term),
            };
            let v = g.vertex_ix(name).ok_or_else(|| MonoidError::UnknownVertex(name.to_string()))?;
            c[v] += k;
        }
        Ok(MonoidElement(c))
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        DisplayIn { p: self, g }
    }
}

struct DisplayIn<'a> {
    p: &'a MonoidElement,
    g: &'a Graph,
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .p
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| {
                let name = self.g.vertex_name(v);
                if c == 1 { name.to_string() } else { format!("{c} {name}") }
            })
            .collect();
        if terms.is_empty() { write!(f, "0") } else { write!(f, "{}", terms.join(" + ")) }
    }
}

fn check_dim(g: &Graph, p: &MonoidElement) -> Result<(), MonoidError> {
    if p.len() != g.vertex_count() {
        return Err(MonoidError::DimensionMismatch { expected: g.vertex_count(), got: p.len() });
    }
    Ok(())
}

/// Replaces one copy of the regular vertex `v` by the ranges of its out-edges.
pub fn expand(g: &Graph, p: &MonoidElement, v: usize) -> Option<MonoidElement> {
    if p.0[v] == 0 || !g.is_regular(v) {
        return None;
    }
    let mut c = p.0.clone();
    c[v] -= 1;
    for &e in g.out_edges(v) {
        c[g.dst(e)] += 1;
    }
    Some(MonoidElement(c))
}

/// All `q` with `p →₁ q`, one per regular vertex present in `p`, in vertex order.
pub fn one_step_expansions(g: &Graph, p: &MonoidElement) -> Result<Vec<MonoidElement>, MonoidError> {
    Ok(expansions_with_vertex(g, p)?.into_iter().map(|(_, q)| q).collect())
}

fn expansions_with_vertex(g: &Graph, p: &MonoidElement) -> Result<Vec<(usize, MonoidElement)>, MonoidError> {
    check_dim(g, p)?;
    Ok((0..g.vertex_count()).filter_map(|v| expand(g, p, v).map(|q| (v, q))).collect())
}

/// One recorded `→₁` step: the vertex expanded and its position in the path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidStep {
    pub vertex: String,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MonoidVerdict {
    Equal { witness: MonoidElement, left_path: Vec<MonoidStep>, right_path: Vec<MonoidStep> },
    NotEqualWithinBudget { explored: usize },
    ProvenDistinct { reason: String },
}

impl MonoidVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, MonoidVerdict::Equal { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            MonoidVerdict::Equal { .. } => "equal",
            MonoidVerdict::NotEqualWithinBudget { .. } => "not-equal-within-budget",
            MonoidVerdict::ProvenDistinct { .. } => "proven-distinct",
        }
    }
}

/// Applies recorded steps to `p`.
pub fn replay(g: &Graph, p: &MonoidElement, path: &[MonoidStep]) -> Result<MonoidElement, MonoidError> {
    check_dim(g, p)?;
    let mut cur = p.clone();
    for (i, s) in path.iter().enumerate() {
        let v = g.vertex_ix(&s.vertex).ok_or_else(|| MonoidError::UnknownVertex(s.vertex.clone()))?;
        cur = expand(g, &cur, v).filter(|_| s.step == i).ok_or(MonoidError::BadStep {
            step: i,
            vertex: s.vertex.clone(),
        })?;
    }
    Ok(cur)
}

/// Successor set of one side, with back-pointers for path recovery.
struct Side {
    parent: HashMap<MonoidElement, Option<(MonoidElement, usize)>>,
    frontier: Vec<MonoidElement>,
}

impl Side {
    fn new(p: &MonoidElement) -> Self {
        Side { parent: HashMap::from([(p.clone(), None)]), frontier: vec![p.clone()] }
    }

    fn grow(&mut self, g: &Graph, cap: usize) -> Result<bool, MonoidError> {
        let mut next = Vec::new();
        for p in std::mem::take(&mut self.frontier) {
            for (v, q) in expansions_with_vertex(g, &p)? {
                if !self.parent.contains_key(&q) {
                    self.parent.insert(q.clone(), Some((p.clone(), v)));
                    next.push(q);
                    if self.parent.len() > cap {
                        self.frontier = next;
                        return Ok(false);
                    }
                }
            }
        }
        self.frontier = next;
        Ok(true)
    }

    fn path_to(&self, g: &Graph, s: &MonoidElement) -> Vec<MonoidStep> {
        let mut rev = Vec::new();
        let mut cur = s.clone();
        while let Some(Some((prev, v))) = self.parent.get(&cur) {
            rev.push(*v);
            cur = prev.clone();
        }
        rev.iter()
            .rev()
            .enumerate()
            .map(|(step, &v)| MonoidStep { vertex: g.vertex_name(v).to_string(), step })
            .collect()
    }
}

/// Decides `p = q` in `M_E` by searching for a common successor, after first
/// comparing `K₀` classes.
///
/// `depth` bounds the total number of BFS layers over both sides and
/// `frontier_cap` the number of elements visited per side.
pub fn monoid_equal(
    g: &Graph,
    p: &MonoidElement,
    q: &MonoidElement,
    depth: usize,
    frontier_cap: usize,
) -> Result<MonoidVerdict, MonoidError> {
    check_dim(g, p)?;
    check_dim(g, q)?;
    if p == q {
        return Ok(MonoidVerdict::Equal { witness: p.clone(), left_path: vec![], right_path: vec![] });
    }
    if depth == 0 {
        return Err(MonoidError::ZeroBudget);
    }
    let k0 = compute_k0(g);
    let (cp, cq) = (k0.class_of(p).expect("checked"), k0.class_of(q).expect("checked"));
    if cp != cq {
        let show = |c: &[BigInt]| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        return Ok(MonoidVerdict::ProvenDistinct {
            reason: format!("K0 classes differ: ({}) vs ({}) in {}", show(&cp), show(&cq), k0.presentation),
        });
    }

    let (mut left, mut right) = (Side::new(p), Side::new(q));
    for _ in 0..depth {
        // grow the smaller frontier; a side with nothing left to expand is done
        let grow_left = match (left.frontier.is_empty(), right.frontier.is_empty()) {
            (true, true) => break,
            (true, false) => false,
            (false, true) => true,
            (false, false) => left.frontier.len() <= right.frontier.len(),
        };
        let (grown, other) = if grow_left { (&mut left, &right) } else { (&mut right, &left) };
        let within = grown.grow(g, frontier_cap)?;
        let meet = grown.frontier.iter().filter(|s| other.parent.contains_key(*s)).min().cloned();
        if let Some(s) = meet {
            return Ok(MonoidVerdict::Equal {
                left_path: left.path_to(g, &s),
                right_path: right.path_to(g, &s),
                witness: s,
            });
        }
        if !within {
            break;
        }
    }
    Ok(MonoidVerdict::NotEqualWithinBudget { explored: left.parent.len() + right.parent.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose2() -> Graph {
        Graph::from_names(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_names(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")]).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(one_step_expansions(&rose2(), &MonoidElement(vec![1])).unwrap(), vec![MonoidElement(vec![2])]);
        let g = path3();
        assert_eq!(
            one_step_expansions(&g, &MonoidElement(vec![1, 0, 0])).unwrap(),
            vec![MonoidElement(vec![0, 1, 0])]
        );
        assert!(one_step_expansions(&g, &MonoidElement::zero(3)).unwrap().is_empty());
        assert!(one_step_expansions(&g, &MonoidElement(vec![0, 0, 4])).unwrap().is_empty());
        assert!(matches!(
            one_step_expansions(&g, &MonoidElement(vec![1])),
            Err(MonoidError::DimensionMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn rose_v_equals_2v() {
        let g = rose2();
        let v = monoid_equal(&g, &MonoidElement(vec![1]), &MonoidElement(vec![2]), 12, 1000).unwrap();
        let MonoidVerdict::Equal { witness, left_path, right_path } = v else { panic!("{v:?}") };
        assert_eq!(witness, MonoidElement(vec![2]));
        assert_eq!(left_path.len(), 1);
        assert!(right_path.is_empty());
    }

    #[test]
    fn path_graph() {
        let g = path3();
        let v = monoid_equal(&g, &MonoidElement(vec![1, 0, 0]), &MonoidElement(vec![0, 0, 1]), 12, 1000).unwrap();
        let MonoidVerdict::Equal { witness, left_path, .. } = &v else { panic!("{v:?}") };
        assert_eq!(witness, &MonoidElement(vec![0, 0, 1]));
        assert_eq!(replay(&g, &MonoidElement(vec![1, 0, 0]), left_path).unwrap(), *witness);
        let d = monoid_equal(&g, &MonoidElement(vec![0, 0, 1]), &MonoidElement(vec![0, 0, 2]), 12, 1000).unwrap();
        assert_eq!(d.label(), "proven-distinct");
    }

    #[test]
    fn zero_budget() {
        let g = path3();
        let p = MonoidElement(vec![1, 0, 0]);
        assert_eq!(monoid_equal(&g, &p, &MonoidElement(vec![0, 1, 0]), 0, 10), Err(MonoidError::ZeroBudget));
        assert!(monoid_equal(&g, &p, &p, 0, 10).unwrap().is_equal());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        // v -> 3v -> 5v needs two layers
        let g = Graph::from_names(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")]).unwrap();
        let v = monoid_equal(&g, &MonoidElement(vec![1]), &MonoidElement(vec![5]), 1, 1000).unwrap();
        assert_eq!(v.label(), "not-equal-within-budget");
        assert!(monoid_equal(&g, &MonoidElement(vec![1]), &MonoidElement(vec![5]), 12, 1000).unwrap().is_equal());
    }

    #[test]
    fn parse_and_display() {
        let g = path3();
        let p = MonoidElement::parse(&g, "v1 + 2 v3").unwrap();
        assert_eq!(p, MonoidElement(vec![1, 0, 2]));
        assert_eq!(p.display(&g).to_string(), "v1 + 2 v3");
        assert!(MonoidElement::parse(&g, "v9").is_err());
    }
}
