//! The Leavitt path algebra `L(E)` over `ℚ` in the normal-form basis.
//!
//! Every vertex `v` that emits edges has a designated edge `e_v`, the last
//! edge leaving `v` in file order. Monomials `αβ*` are in normal form when
//! they do not end in the junction `e_v e_v*`; CK2 is applied as
//! `e_v e_v* → v − Σ_{e ≠ e_v, s(e) = v} e e*`.

mod element;
mod monomial;
mod rewrite;
mod span;
mod strong;
mod syntax;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::graph::Graph;

pub use element::LpaElement;
pub use monomial::PathMonomial;
pub use rewrite::{reduce_word, word_of, Letter};
pub use span::solve_span;
pub use strong::{
    verify_strongly_graded, verify_strongly_graded_with_bound, ProductTerm, SideReport, StrongDegreeReport,
    StrongGradingReport, VertexCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpaError {
    #[error("elements come from different graphs")]
    MixedGraphs,
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("nmax must be between 1 and 3, got {0}")]
    NMaxOutOfRange(u32),
    #[error("cannot parse term {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A graph together with its designated CK2 edges.
#[derive(Clone, Debug)]
pub struct Lpa {
    graph: Graph,
    special: Vec<Option<usize>>,
    id: u64,
}

impl Lpa {
    pub fn new(g: &Graph) -> Lpa {
        let special = (0..g.vertex_count()).map(|v| g.out_edges(v).last().copied()).collect();
        let mut h = DefaultHasher::new();
        g.to_text().hash(&mut h);
        Lpa { graph: g.clone(), special, id: h.finish() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The designated edge `e_v`, if `v` is regular.
    pub fn special_edge(&self, v: usize) -> Option<usize> {
        self.special[v]
    }

    pub fn zero(&self) -> LpaElement {
        LpaElement::zero_for(self.id)
    }

    pub fn scalar(&self, c: BigRational) -> LpaElement {
        self.identity().scale(&c)
    }

    pub fn vertex(&self, v: usize) -> LpaElement {
        LpaElement::monomial_for(self.id, PathMonomial::vertex(v))
    }

    pub fn edge(&self, e: usize) -> LpaElement {
        self.from_monomial(PathMonomial::edge(&self.graph, e))
    }

    pub fn ghost(&self, e: usize) -> LpaElement {
        self.from_monomial(PathMonomial::ghost(&self.graph, e))
    }

    /// `Σ_v v`; zero on the empty graph.
    pub fn identity(&self) -> LpaElement {
        let mut out = self.zero();
        for v in 0..self.graph.vertex_count() {
            out.add_term(PathMonomial::vertex(v), BigRational::one());
        }
        out
    }

    pub fn identity_element(&self) -> Result<LpaElement, LpaError> {
        if self.graph.vertex_count() == 0 {
            return Err(LpaError::EmptyGraph);
        }
        Ok(self.identity())
    }

    /// The element `αβ*`, normalized.
    pub fn from_monomial(&self, m: PathMonomial) -> LpaElement {
        let mut out = self.zero();
        for (n, s) in self.normalize(m) {
            out.add_term(n, BigRational::from_integer(s.into()));
        }
        out
    }

    pub fn owns(&self, a: &LpaElement) -> bool {
        a.graph == self.id
    }

    pub fn is_normal(&self, m: &PathMonomial) -> bool {
        match (m.alpha.last(), m.beta.last()) {
            (Some(&e), Some(&f)) => !(e == f && self.special[self.graph.src(e)] == Some(e)),
            _ => true,
        }
    }

    /// Rewrites trailing junctions `e_v e_v*` until the monomial is normal.
    pub(crate) fn normalize(&self, m: PathMonomial) -> Vec<(PathMonomial, i64)> {
        let mut out = Vec::new();
        let mut cur = m;
        loop {
            if self.is_normal(&cur) {
                out.push((cur, 1));
                return out;
            }
            let e = cur.alpha.pop().expect("junction");
            cur.beta.pop();
            let v = self.graph.src(e);
            for &f in self.graph.out_edges(v) {
                if f != e {
                    let mut alpha = cur.alpha.clone();
                    let mut beta = cur.beta.clone();
                    alpha.push(f);
                    beta.push(f);
                    out.push((PathMonomial { alpha, beta, anchor: self.graph.dst(f) }, -1));
                }
            }
            cur.anchor = v;
        }
    }

    /// `(αβ*)(γδ*)` as a signed sum of normal monomials.
    pub(crate) fn mul_monomials(&self, x: &PathMonomial, y: &PathMonomial) -> Vec<(PathMonomial, i64)> {
        let g = &self.graph;
        if x.right_vertex(g) != y.left_vertex(g) {
            return vec![];
        }
        let (beta, gamma) = (&x.beta, &y.alpha);
        let product = if gamma.starts_with(beta) {
            let mut alpha = x.alpha.clone();
            alpha.extend_from_slice(&gamma[beta.len()..]);
            PathMonomial { alpha, beta: y.beta.clone(), anchor: y.anchor }
        } else if beta.starts_with(gamma) {
            let mut b = y.beta.clone();
            b.extend_from_slice(&beta[gamma.len()..]);
            PathMonomial { alpha: x.alpha.clone(), beta: b, anchor: x.anchor }
        } else {
            return vec![];
        };
        self.normalize(product)
    }

    pub fn multiply(&self, a: &LpaElement, b: &LpaElement) -> Result<LpaElement, LpaError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(LpaError::MixedGraphs);
        }
        Ok(self.mul(a, b))
    }

    /// Product of two elements of this algebra.
    pub fn mul(&self, a: &LpaElement, b: &LpaElement) -> LpaElement {
        debug_assert!(self.owns(a) && self.owns(b));
        let mut out = self.zero();
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                let cd = c * d;
                for (m, s) in self.mul_monomials(x, y) {
                    out.add_term(m, &cd * BigRational::from_integer(s.into()));
                }
            }
        }
        out
    }

    /// `a₁ a₂ ⋯ a_k`; the identity for an empty list.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a LpaElement>) -> LpaElement {
        factors.into_iter().fold(self.identity(), |acc, f| self.mul(&acc, f))
    }

    pub fn to_text(&self, a: &LpaElement) -> String {
        a.fmt_with(|m| m.to_text(&self.graph))
    }

    pub fn parse(&self, text: &str) -> Result<LpaElement, LpaError> {
        syntax::parse(self, text)
    }

    /// All normal monomials `αβ*` with `|α| = la`, `|β| = lb` and left vertex `u`.
    pub fn monomials_from(&self, u: usize, la: usize, lb: usize) -> Vec<PathMonomial> {
        let g = &self.graph;
        let mut out = Vec::new();
        for alpha in paths_from(g, u, la) {
            let r = alpha.last().map_or(u, |&e| g.dst(e));
            for beta in paths_into(g, r, lb) {
                let m = PathMonomial { alpha: alpha.clone(), beta, anchor: r };
                if self.is_normal(&m) {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Paths of length exactly `len` starting at `u`, in edge-index order.
pub fn paths_from(g: &Graph, u: usize, len: usize) -> Vec<Vec<usize>> {
    let mut layer = vec![(vec![], u)];
    for _ in 0..len {
        layer = layer
            .into_iter()
            .flat_map(|(p, v)| {
                g.out_edges(v).iter().map(move |&e| {
                    let mut q = p.clone();
                    q.push(e);
                    (q, g.dst(e))
                })
            })
            .collect();
    }
    layer.into_iter().map(|(p, _)| p).collect()
}

/// Paths of length exactly `len` ending at `v`.
pub fn paths_into(g: &Graph, v: usize, len: usize) -> Vec<Vec<usize>> {
    let mut layer = vec![(vec![], v)];
    for _ in 0..len {
        layer = layer
            .into_iter()
            .flat_map(|(p, w)| {
                g.in_edges(w).iter().map(move |&e| {
                    let mut q = vec![e];
                    q.extend_from_slice(&p);
                    (q, g.src(e))
                })
            })
            .collect();
    }
    layer.into_iter().map(|(p, _)| p).collect()
}
