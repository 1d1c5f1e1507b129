use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{realize, CsklError};
use crate::graph::Graph;
use crate::lpa::{solve_span, Lpa, LpaElement, PathMonomial};

/// Largest `|α| = |β|` of the monomials `μ = αβ*` used in `Σ c μ p μ*`.
pub const FULLNESS_MAX_LENGTH: usize = 2;
/// Largest number of candidate products examined.
pub const FULLNESS_BUDGET: usize = 10_000;

/// One summand `c · μ p μ*` of a fullness certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullnessTerm {
    pub coefficient: String,
    pub left: String,
    pub right: String,
    #[serde(skip)]
    pub(crate) parts: (BigRational, PathMonomial),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FullnessVerdict {
    /// `1 = Σ c · μ p μ*`, verified exactly.
    Full { certificate: Vec<FullnessTerm> },
    /// `p` acts as zero on the span of the sink `sink`, so neither does `RpR`.
    NotFull { sink: String },
    UnknownWithinBudget { explored: usize },
}

impl FullnessVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FullnessVerdict::Full { .. } => "full",
            FullnessVerdict::NotFull { .. } => "not-full",
            FullnessVerdict::UnknownWithinBudget { .. } => "unknown-within-budget",
        }
    }
}

/// Evaluates `Σ c · μ p μ*`.
pub(crate) fn evaluate_certificate(lpa: &Lpa, p: &LpaElement, terms: &[FullnessTerm]) -> LpaElement {
    let mut sum = lpa.zero();
    for t in terms {
        let (c, m) = &t.parts;
        let mu = lpa.from_monomial(m.clone());
        sum = sum.add(&lpa.product([&mu, p, &mu.star()]).scale(c));
    }
    sum
}

/// Decides whether the ideal of `L(E)₀` generated by the idempotent `p`
/// contains 1, searching for `1 = Σ c · μ p μ*` vertex by vertex.
pub fn is_full_idempotent(lpa: &Lpa, p: &LpaElement) -> Result<FullnessVerdict, CsklError> {
    if !lpa.owns(p) {
        return Err(CsklError::MismatchedRealizations);
    }
    if !p.is_homogeneous_of(0) {
        return Err(CsklError::NotDegreeZero);
    }
    if &lpa.mul(p, p) != p {
        return Err(CsklError::NotIdempotent);
    }
    let g = lpa.graph();
    let mut explored = 0;
    let mut certificate = Vec::new();
    let mut missing = Vec::new();
    for w in 0..g.vertex_count() {
        match vertex_certificate(lpa, p, w, &mut explored) {
            Some(terms) => certificate.extend(terms),
            None => missing.push(w),
        }
    }
    if missing.is_empty() {
        debug_assert_eq!(evaluate_certificate(lpa, p, &certificate), lpa.identity());
        return Ok(FullnessVerdict::Full { certificate });
    }
    let sink = (0..g.vertex_count())
        .find(|&w| g.is_sink(w) && p.coefficient(&PathMonomial::vertex(w)).is_zero());
    Ok(match sink {
        Some(w) => FullnessVerdict::NotFull { sink: g.vertex_name(w).to_string() },
        None => FullnessVerdict::UnknownWithinBudget { explored },
    })
}

fn vertex_certificate(lpa: &Lpa, p: &LpaElement, w: usize, explored: &mut usize) -> Option<Vec<FullnessTerm>> {
    let g = lpa.graph();
    let target = lpa.vertex(w);
    let mut monomials = Vec::new();
    let mut values = Vec::new();
    for l in 0..=FULLNESS_MAX_LENGTH {
        for m in lpa.monomials_from(w, l, l) {
            if *explored >= FULLNESS_BUDGET {
                return None;
            }
            *explored += 1;
            let mu = lpa.from_monomial(m.clone());
            let value = lpa.product([&mu, p, &mu.star()]);
            if !value.is_zero() {
                monomials.push(m);
                values.push(value);
            }
        }
        if let Some(c) = solve_span(&target, &values) {
            return Some(
                c.into_iter()
                    .zip(&monomials)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, m)| FullnessTerm {
                        coefficient: c.to_string(),
                        left: m.to_text(g),
                        right: m.star().to_text(g),
                        parts: (c, m.clone()),
                    })
                    .collect(),
            );
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CsklVerdict {
    StronglyGraded,
    NotStronglyGraded,
    Undecided,
}

/// Strong grading decided through `φ(1) = t₊t₋` on the source-free core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CsklStrongReport {
    pub verdict: CsklVerdict,
    /// Sources removed, in order, to reach the core.
    pub removed_sources: Vec<String>,
    pub core_vertices: Vec<String>,
    pub t_plus: Option<String>,
    pub p: Option<String>,
    pub fullness: Option<FullnessVerdict>,
    /// `Σ c · μ p μ* = 1` recomputed from the certificate.
    pub certificate_verified: Option<bool>,
    pub obstruction: Option<String>,
}

impl CsklStrongReport {
    pub fn strongly_graded(&self) -> bool {
        self.verdict == CsklVerdict::StronglyGraded
    }
}

/// Removing a source `u` leaves `L(E)` strongly graded exactly when the
/// smaller graph's algebra is, unless `u` is isolated; the source-free core
/// is then realized and `t₊t₋` tested for fullness.
pub fn strongly_graded_via_cskl(g: &Graph) -> CsklStrongReport {
    let (core, removed) = g.desource_with_steps();
    let mut report = CsklStrongReport {
        verdict: CsklVerdict::StronglyGraded,
        removed_sources: removed.clone(),
        core_vertices: core.vertices().to_vec(),
        t_plus: None,
        p: None,
        fullness: None,
        certificate_verified: None,
        obstruction: None,
    };
    // a removed source with no out-edges is an isolated sink of g
    if let Some(s) = removed.iter().find(|s| g.vertex_ix(s).is_some_and(|v| g.is_sink(v))) {
        report.verdict = CsklVerdict::NotStronglyGraded;
        report.obstruction = Some(s.clone());
        return report;
    }
    if core.vertex_count() == 0 {
        return report;
    }
    let real = realize(&core, None).expect("the core has no sources");
    let lpa = real.lpa();
    let p = real.p();
    report.t_plus = Some(lpa.to_text(real.t_plus()));
    report.p = Some(lpa.to_text(&p));
    let verdict = is_full_idempotent(lpa, &p).expect("t+ t- is a degree-0 idempotent");
    match &verdict {
        FullnessVerdict::Full { certificate } => {
            report.certificate_verified = Some(evaluate_certificate(lpa, &p, certificate) == lpa.identity());
            if report.certificate_verified != Some(true) {
                report.verdict = CsklVerdict::Undecided;
            }
        }
        FullnessVerdict::NotFull { sink } => {
            report.verdict = CsklVerdict::NotStronglyGraded;
            report.obstruction = Some(sink.clone());
        }
        FullnessVerdict::UnknownWithinBudget { .. } => report.verdict = CsklVerdict::Undecided,
    }
    report.fullness = Some(verdict);
    report
}
