//! Corner skew Laurent polynomial rings `R[t₊, t₋, φ]` with `R = L(E)₀`,
//! built from a graph without sources by choosing one incoming edge per
//! vertex.

mod element;
mod full;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::lpa::{Lpa, LpaElement};

pub use element::CsklElement;
pub use full::{
    is_full_idempotent, strongly_graded_via_cskl, CsklStrongReport, CsklVerdict, FullnessTerm, FullnessVerdict,
    FULLNESS_BUDGET, FULLNESS_MAX_LENGTH,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CsklError {
    #[error("vertex {0:?} is a source; remove sources first")]
    HasSource(String),
    #[error("edge {edge:?} does not end at vertex {vertex:?}")]
    WrongRange { edge: String, vertex: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("t- t+ is not 1; the chosen edges are not a valid choice")]
    NotRightInverse,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not homogeneous of degree 0")]
    NotDegreeZero,
    #[error("elements come from different realizations")]
    MismatchedRealizations,
}

/// `L(E) = L(E)₀[t₊, t₋, φ]` with `t₊ = Σ eᵢ`, `t₋ = Σ eᵢ*` and
/// `φ(a) = t₊ a t₋`.
#[derive(Clone, Debug)]
pub struct CsklRealization {
    lpa: Lpa,
    chosen: Vec<usize>,
    t_plus: LpaElement,
    t_minus: LpaElement,
    id: u64,
}

/// Outcome of checking the four defining rules on sample coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RuleCheck {
    pub t_minus_t_plus_is_one: bool,
    pub t_plus_t_minus_is_p: bool,
    pub r_t_minus: bool,
    pub t_plus_r: bool,
    pub samples: usize,
}

impl RuleCheck {
    pub fn passed(&self) -> bool {
        self.t_minus_t_plus_is_one && self.t_plus_t_minus_is_p && self.r_t_minus && self.t_plus_r
    }
}

/// Builds the realization. `choice` maps vertex names to edge names; vertices
/// not listed use their first incoming edge in file order.
pub fn realize(g: &Graph, choice: Option<&BTreeMap<String, String>>) -> Result<CsklRealization, CsklError> {
    if let Some(s) = g.sources().first() {
        return Err(CsklError::HasSource(s.to_string()));
    }
    let mut chosen: Vec<usize> = (0..g.vertex_count()).map(|v| g.in_edges(v)[0]).collect();
    for (vname, ename) in choice.into_iter().flatten() {
        let v = g.vertex_ix(vname).ok_or_else(|| CsklError::UnknownVertex(vname.clone()))?;
        let e = g.edge_ix(ename).ok_or_else(|| CsklError::UnknownEdge(ename.clone()))?;
        if g.dst(e) != v {
            return Err(CsklError::WrongRange { edge: ename.clone(), vertex: vname.clone() });
        }
        chosen[v] = e;
    }
    let lpa = Lpa::new(g);
    let mut t_plus = lpa.zero();
    for &e in &chosen {
        t_plus = t_plus.add(&lpa.edge(e));
    }
    let t_minus = t_plus.star();
    if lpa.mul(&t_minus, &t_plus) != lpa.identity() {
        return Err(CsklError::NotRightInverse);
    }
    let mut h = DefaultHasher::new();
    g.to_text().hash(&mut h);
    chosen.hash(&mut h);
    Ok(CsklRealization { lpa, chosen, t_plus, t_minus, id: h.finish() })
}

impl CsklRealization {
    pub fn lpa(&self) -> &Lpa {
        &self.lpa
    }

    pub fn graph(&self) -> &Graph {
        self.lpa.graph()
    }

    /// The chosen edge `eᵢ` with `r(eᵢ) = vᵢ`, per vertex.
    pub fn chosen_edges(&self) -> &[usize] {
        &self.chosen
    }

    pub fn t_plus(&self) -> &LpaElement {
        &self.t_plus
    }

    pub fn t_minus(&self) -> &LpaElement {
        &self.t_minus
    }

    /// `φ(a) = t₊ a t₋`.
    pub fn phi(&self, a: &LpaElement) -> LpaElement {
        self.lpa.product([&self.t_plus, a, &self.t_minus])
    }

    pub fn phi_pow(&self, a: &LpaElement, k: u32) -> LpaElement {
        (0..k).fold(a.clone(), |x, _| self.phi(&x))
    }

    /// The inverse of `φ` on the corner `pRp`, `x ↦ t₋ x t₊`.
    pub fn phi_inverse(&self, x: &LpaElement) -> LpaElement {
        self.lpa.product([&self.t_minus, x, &self.t_plus])
    }

    /// `p = φ(1) = t₊ t₋`.
    pub fn p(&self) -> LpaElement {
        self.lpa.mul(&self.t_plus, &self.t_minus)
    }

    /// `pₖ = φᵏ(1)`.
    pub fn p_pow(&self, k: u32) -> LpaElement {
        self.phi_pow(&self.lpa.identity(), k)
    }

    pub fn t_plus_pow(&self, k: u32) -> LpaElement {
        self.lpa.product(std::iter::repeat_n(&self.t_plus, k as usize))
    }

    pub fn t_minus_pow(&self, k: u32) -> LpaElement {
        self.lpa.product(std::iter::repeat_n(&self.t_minus, k as usize))
    }

    /// Degree-0 normal monomials with both paths of length at most `max_len`.
    pub fn degree_zero_basis(&self, max_len: usize) -> Vec<LpaElement> {
        let g = self.graph();
        let mut out = Vec::new();
        for u in 0..g.vertex_count() {
            for l in 0..=max_len {
                out.extend(self.lpa.monomials_from(u, l, l).into_iter().map(|m| self.lpa.from_monomial(m)));
            }
        }
        out
    }

    /// Checks `t₋t₊ = 1`, `t₊t₋ = p`, `r t₋ = t₋ φ(r)` and `t₊ r = φ(r) t₊`
    /// in `L(E)` for degree-0 monomials of path length at most 2.
    pub fn check_rules(&self) -> RuleCheck {
        let lpa = &self.lpa;
        let samples = self.degree_zero_basis(1);
        let mut r_t_minus = true;
        let mut t_plus_r = true;
        for r in &samples {
            let fr = self.phi(r);
            r_t_minus &= lpa.mul(r, &self.t_minus) == lpa.mul(&self.t_minus, &fr);
            t_plus_r &= lpa.mul(&self.t_plus, r) == lpa.mul(&fr, &self.t_plus);
        }
        RuleCheck {
            t_minus_t_plus_is_one: lpa.mul(&self.t_minus, &self.t_plus) == lpa.identity(),
            t_plus_t_minus_is_p: lpa.mul(&self.t_plus, &self.t_minus) == self.p(),
            r_t_minus,
            t_plus_r,
            samples: samples.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_cycle() -> Graph {
        Graph::from_names(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1")]).unwrap()
    }

    #[test]
    fn single_loop() {
        let g = Graph::from_names(&["v"], &[("e", "v", "v")]).unwrap();
        let r = realize(&g, None).unwrap();
        assert_eq!(r.lpa().to_text(r.t_plus()), "e");
        assert_eq!(r.lpa().to_text(r.t_minus()), "e*");
        assert_eq!(r.p(), r.lpa().identity());
    }

    #[test]
    fn loop_cycle_default_choice() {
        let r = realize(&loop_cycle(), None).unwrap();
        assert_eq!(r.lpa().to_text(r.t_plus()), "a + b");
        assert_eq!(r.lpa().to_text(r.t_minus()), "a* + b*");
        // e*ᵢ eⱼ = δᵢⱼ r(eᵢ)
        let l = r.lpa();
        assert_eq!(l.mul(&l.ghost(0), &l.edge(0)), l.vertex(0));
        assert_eq!(l.mul(&l.ghost(1), &l.edge(1)), l.vertex(1));
        assert!(l.mul(&l.ghost(0), &l.edge(1)).is_zero());
        assert!(r.check_rules().passed());
        // p = a a* + b b* = v1 by CK2 at v1
        assert_eq!(r.p(), l.vertex(0));
    }

    #[test]
    fn explicit_choice() {
        let choice = BTreeMap::from([("v1".to_string(), "c".to_string())]);
        let r = realize(&loop_cycle(), Some(&choice)).unwrap();
        assert_eq!(r.chosen_edges(), &[2, 1]);
        assert!(r.check_rules().passed());
        let bad = BTreeMap::from([("v1".to_string(), "b".to_string())]);
        assert!(matches!(realize(&loop_cycle(), Some(&bad)), Err(CsklError::WrongRange { .. })));
    }

    #[test]
    fn sources_rejected() {
        let g = Graph::from_names(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")]).unwrap();
        assert_eq!(realize(&g, None).unwrap_err(), CsklError::HasSource("v1".into()));
    }
}
