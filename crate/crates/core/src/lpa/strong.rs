//! Symbolic certificates for `1 ∈ AₙA₋ₙ` and `1 ∈ A₋ₙAₙ`.
//!
//! For each vertex `w` the certificate is a sum of products `x·y` of
//! monomials of degrees `±n` adding up to `w`; summing over vertices gives 1.
//! On the `AₙA₋ₙ` side the products are `α·α*` over the paths of length `n`
//! leaving `w`. On the `A₋ₙAₙ` side they are `(βγ*)·(γβ*) = ββ*` over the
//! paths `β` of some length `L` leaving `w`, where `γ` is a path of length
//! `L + n` into `r(β)`.

use serde::Serialize;

use super::{paths_from, paths_into, Lpa, LpaError, PathMonomial};
use crate::graph::Graph;

/// One product `x·y` in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTerm {
    pub x: String,
    pub y: String,
    #[serde(skip)]
    pub(crate) monomials: (PathMonomial, PathMonomial),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCertificate {
    pub vertex: String,
    pub products: Vec<ProductTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub passed: bool,
    pub certificates: Vec<VertexCertificate>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrongDegreeReport {
    pub n: u32,
    /// `1 ∈ AₙA₋ₙ`.
    pub positive_negative: SideReport,
    /// `1 ∈ A₋ₙAₙ`.
    pub negative_positive: SideReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongGradingReport {
    pub passed: bool,
    pub degrees: Vec<StrongDegreeReport>,
    /// A sink when one exists; it admits no certificate since `w·Aₙ = 0`.
    pub obstruction: Option<String>,
}

/// Checks `1 ∈ AₙA₋ₙ ∩ A₋ₙAₙ` for `n = 1..=nmax`, searching prefixes of
/// length up to the vertex count on the `A₋ₙAₙ` side.
pub fn verify_strongly_graded(g: &Graph, nmax: u32) -> Result<StrongGradingReport, LpaError> {
    verify_strongly_graded_with_bound(g, nmax, g.vertex_count())
}

/// As [`verify_strongly_graded`], with an explicit bound on the prefix
/// length `L`; the monomials used have path length at most `2L + n`.
pub fn verify_strongly_graded_with_bound(g: &Graph, nmax: u32, max_prefix: usize) -> Result<StrongGradingReport, LpaError> {
    if !(1..=3).contains(&nmax) {
        return Err(LpaError::NMaxOutOfRange(nmax));
    }
    let lpa = Lpa::new(g);
    let mut degrees = Vec::new();
    for n in 1..=nmax {
        let nn = n as usize;
        let mut pn = side(&lpa, |w| positive_certificate(&lpa, w, nn));
        let mut np = side(&lpa, |w| negative_certificate(&lpa, w, nn, max_prefix));
        for s in [&mut pn, &mut np] {
            s.passed = s.failures.is_empty();
        }
        degrees.push(StrongDegreeReport { n, positive_negative: pn, negative_positive: np });
    }
    let passed = degrees.iter().all(|d| d.positive_negative.passed && d.negative_positive.passed);
    let obstruction = (!passed).then(|| {
        g.sinks().first().map(|s| s.to_string()).unwrap_or_else(|| {
            let d = degrees.iter().find(|d| !d.positive_negative.passed || !d.negative_positive.passed).expect("failed");
            d.positive_negative.failures.first().or(d.negative_positive.failures.first()).cloned().expect("failure")
        })
    });
    Ok(StrongGradingReport { passed, degrees, obstruction })
}

fn side(lpa: &Lpa, cert: impl Fn(usize) -> Option<Vec<(PathMonomial, PathMonomial)>>) -> SideReport {
    let g = lpa.graph();
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for w in 0..g.vertex_count() {
        let vertex = g.vertex_name(w).to_string();
        match cert(w).filter(|pairs| certifies(lpa, w, pairs)) {
            Some(pairs) => {
                let products = pairs
                    .into_iter()
                    .map(|(x, y)| ProductTerm { x: x.to_text(g), y: y.to_text(g), monomials: (x, y) })
                    .collect();
                certificates.push(VertexCertificate { vertex, products });
            }
            None => failures.push(vertex),
        }
    }
    SideReport { passed: false, certificates, failures }
}

/// Recomputes `Σ x·y` symbolically and compares with `w`.
fn certifies(lpa: &Lpa, w: usize, pairs: &[(PathMonomial, PathMonomial)]) -> bool {
    let mut sum = lpa.zero();
    for (x, y) in pairs {
        sum = sum.add(&lpa.mul(&lpa.from_monomial(x.clone()), &lpa.from_monomial(y.clone())));
    }
    sum == lpa.vertex(w)
}

fn path_monomial(g: &Graph, alpha: Vec<usize>, beta: Vec<usize>, anchor: usize) -> PathMonomial {
    PathMonomial::new(g, alpha, beta, anchor).expect("composable paths")
}

/// Paths of length `len` leaving `w`, or `None` if some shorter path ends in a sink.
fn full_paths(g: &Graph, w: usize, len: usize) -> Option<Vec<Vec<usize>>> {
    let reaches_sink = (0..len).any(|k| {
        paths_from(g, w, k).iter().any(|p| g.is_sink(p.last().map_or(w, |&e| g.dst(e))))
    });
    (!reaches_sink).then(|| paths_from(g, w, len))
}

fn positive_certificate(lpa: &Lpa, w: usize, n: usize) -> Option<Vec<(PathMonomial, PathMonomial)>> {
    let g = lpa.graph();
    let paths = full_paths(g, w, n)?;
    Some(
        paths
            .into_iter()
            .map(|a| {
                let r = g.dst(*a.last().expect("n ≥ 1"));
                (path_monomial(g, a.clone(), vec![], r), path_monomial(g, vec![], a, r))
            })
            .collect(),
    )
}

fn negative_certificate(lpa: &Lpa, w: usize, n: usize, max_prefix: usize) -> Option<Vec<(PathMonomial, PathMonomial)>> {
    let g = lpa.graph();
    'prefix: for l in 0..=max_prefix {
        let betas = full_paths(g, w, l)?;
        let mut pairs = Vec::new();
        for b in betas {
            let r = b.last().map_or(w, |&e| g.dst(e));
            let Some(gamma) = paths_into(g, r, l + n).into_iter().next() else { continue 'prefix };
            let x = path_monomial(g, b.clone(), gamma.clone(), r);
            let y = path_monomial(g, gamma, b, r);
            pairs.push((x, y));
        }
        return Some(pairs);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_loop() {
        let g = Graph::from_names(&["v"], &[("e", "v", "v")]).unwrap();
        let r = verify_strongly_graded(&g, 1).unwrap();
        assert!(r.passed);
        let pn = &r.degrees[0].positive_negative.certificates[0].products[0];
        assert_eq!((pn.x.as_str(), pn.y.as_str()), ("e", "e*"));
        let np = &r.degrees[0].negative_positive.certificates[0].products[0];
        assert_eq!((np.x.as_str(), np.y.as_str()), ("e*", "e"));
    }

    #[test]
    fn path_graph_fails_at_sink() {
        let g = Graph::from_names(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")]).unwrap();
        let r = verify_strongly_graded(&g, 1).unwrap();
        assert!(!r.passed);
        assert_eq!(r.obstruction.as_deref(), Some("v3"));
        assert_eq!(r.degrees[0].positive_negative.failures, vec!["v3"]);
    }

    #[test]
    fn source_chain_needs_long_prefixes() {
        let g = Graph::from_names(
            &["u1", "u2", "u3", "w"],
            &[("a", "u1", "u2"), ("b", "u2", "u3"), ("c", "u3", "w"), ("l", "w", "w")],
        )
        .unwrap();
        assert!(verify_strongly_graded(&g, 1).unwrap().passed);
        // prefixes of length two starting at u1 stop short of the loop
        assert!(!verify_strongly_graded_with_bound(&g, 1, 2).unwrap().passed);
    }

    #[test]
    fn loop_cycle_to_degree_two() {
        let g = Graph::from_names(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1")]).unwrap();
        let r = verify_strongly_graded(&g, 2).unwrap();
        assert!(r.passed);
        assert_eq!(r.degrees.len(), 2);
    }

    #[test]
    fn nmax_range() {
        let g = Graph::from_names(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(verify_strongly_graded(&g, 0), Err(LpaError::NMaxOutOfRange(0)));
        assert_eq!(verify_strongly_graded(&g, 4), Err(LpaError::NMaxOutOfRange(4)));
    }
}
