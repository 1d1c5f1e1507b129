use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{compute_k0, compute_kgr, forgetful_u, phi, K0Group, KgrElement, KgrModule, KtError};
use crate::graph::Graph;
use crate::intlin::{cokernel, solve_in_lattice, AbGroupPresentation, IntMatrix, IntVector};

/// Invariant factors and free rank of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupSummary {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub torsion: Vec<BigInt>,
}

impl From<&AbGroupPresentation> for GroupSummary {
    fn from(p: &AbGroupPresentation) -> Self {
        GroupSummary { free_rank: p.free_rank, torsion: p.torsion.clone() }
    }
}

/// `U ∘ φ = 0` on random elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UPhiClause {
    pub passed: bool,
    pub samples: usize,
    pub counterexample: Option<KgrElement>,
}

/// Every canonical generator of `K₀` has a stage-0 preimage under `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurjectivityClause {
    pub passed: bool,
    #[serde(serialize_with = "crate::json::vec_of_vecs")]
    pub preimages: Vec<IntVector>,
    pub missing: Vec<usize>,
}

/// `coker(φ)` on the eventual lattice compared with `K₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CokernelClause {
    pub passed: bool,
    pub coker_phi: GroupSummary,
    pub k0: GroupSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftWitness {
    pub vertex: String,
    pub i: u32,
    pub j: u32,
    /// `w` with `φ(w) = [uA(i)] − [uA(j)]`.
    pub preimage: KgrElement,
}

/// `[uA(i)] − [uA(j)] ∈ Im(φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ShiftRelationClause {
    pub passed: bool,
    pub checked: usize,
    pub witnesses: Vec<ShiftWitness>,
    pub failures: Vec<(String, u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactnessReport {
    pub u_phi_zero: UPhiClause,
    pub u_surjective: SurjectivityClause,
    pub cokernel_matches: CokernelClause,
    pub shift_relation: ShiftRelationClause,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.u_phi_zero.passed && self.u_surjective.passed && self.cokernel_matches.passed && self.shift_relation.passed
    }
}

/// Largest shift used for the shift-relation clause.
pub const MAX_SHIFT: u32 = 3;

/// Checks the exactness of `K₀^gr --φ--> K₀^gr --U--> K₀ --> 0` on a
/// sink-free graph. Random samples are drawn from `seed`.
pub fn verify_exact_sequence(g: &Graph, samples: usize, seed: u64) -> Result<ExactnessReport, KtError> {
    let m = compute_kgr(g)?;
    let k0 = compute_k0(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(ExactnessReport {
        u_phi_zero: check_u_phi(&m, &k0, samples, &mut rng),
        u_surjective: check_surjective(&m, &k0),
        cokernel_matches: check_cokernel(&m, &k0),
        shift_relation: check_shift_relation(g, &m),
    })
}

fn random_element(m: &KgrModule, rng: &mut ChaCha8Rng) -> KgrElement {
    let v = (0..m.n()).map(|_| BigInt::from(rng.random_range(-5i64..=5))).collect();
    KgrElement::new(v, rng.random_range(0..=3))
}

fn check_u_phi(m: &KgrModule, k0: &K0Group, samples: usize, rng: &mut ChaCha8Rng) -> UPhiClause {
    let zero = k0.presentation.zero();
    for _ in 0..samples {
        let a = random_element(m, rng);
        let image = phi(m, &a).and_then(|p| forgetful_u(m, &p, k0));
        if image.as_ref() != Ok(&zero) {
            return UPhiClause { passed: false, samples, counterexample: Some(a) };
        }
    }
    UPhiClause { passed: true, samples, counterexample: None }
}

fn check_surjective(m: &KgrModule, k0: &K0Group) -> SurjectivityClause {
    let p = &k0.presentation;
    let k = p.coordinate_count();
    // Coordinates are determined modulo the torsion orders: solve
    // basis_map · v + diag(t) · s = e_i.
    let mut torsion_block = IntMatrix::zeros(k, p.torsion.len());
    for (i, t) in p.torsion.iter().enumerate() {
        torsion_block.set(i, i, t.clone());
    }
    let system = p.basis_map.hcat(&torsion_block);

    let mut preimages = Vec::new();
    let mut missing = Vec::new();
    for i in 0..k {
        let mut target = vec![BigInt::from(0); k];
        target[i] = BigInt::from(1);
        let found = solve_in_lattice(&system, &target).map(|x| x[..m.n()].to_vec()).filter(|v| {
            let a = KgrElement::new(v.clone(), 0);
            forgetful_u(m, &a, k0).is_ok_and(|c| c == p.reduce(target.clone()))
        });
        match found {
            Some(v) => preimages.push(v),
            None => missing.push(i),
        }
    }
    SurjectivityClause { passed: missing.is_empty(), preimages, missing }
}

fn check_cokernel(m: &KgrModule, k0: &K0Group) -> CokernelClause {
    let coker = cokernel(&m.restricted_phi_matrix());
    CokernelClause {
        passed: coker.same_structure(&k0.presentation),
        coker_phi: GroupSummary::from(&coker),
        k0: GroupSummary::from(&k0.presentation),
    }
}

/// Finds `w` with `φ(w) ~ a`, searching inside the eventual lattice.
pub(crate) fn phi_preimage(m: &KgrModule, a: &KgrElement) -> Option<KgrElement> {
    let shifted = m.into_eventual(a);
    let system = &m.phi_matrix() * m.eventual_basis();
    let coords = solve_in_lattice(&system, &shifted.vector)?;
    let w = KgrElement::new(m.eventual_basis().mul_vec(&coords), shifted.stage);
    let image = phi(m, &w).ok()?;
    m.equivalent(&image, a).then_some(w)
}

fn check_shift_relation(g: &Graph, m: &KgrModule) -> ShiftRelationClause {
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let mut checked = 0;
    for u in 0..g.vertex_count() {
        for i in 0..=MAX_SHIFT {
            for j in 0..=MAX_SHIFT {
                checked += 1;
                let diff = m.sub(&m.generator(u, i as i64), &m.generator(u, j as i64));
                let vertex = g.vertex_name(u).to_string();
                match phi_preimage(m, &diff) {
                    Some(preimage) => witnesses.push(ShiftWitness { vertex, i, j, preimage }),
                    None => failures.push((vertex, i, j)),
                }
            }
        }
    }
    ShiftRelationClause { passed: failures.is_empty(), checked, witnesses, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rose(k: usize) -> Graph {
        let names: Vec<String> = (0..k).map(|i| format!("e{i}")).collect();
        let edges: Vec<(&str, &str, &str)> = names.iter().map(|n| (n.as_str(), "v", "v")).collect();
        Graph::from_names(&["v"], &edges).unwrap()
    }

    #[test]
    fn rose_two_has_trivial_cokernel() {
        let r = verify_exact_sequence(&rose(2), 50, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cokernel_matches.coker_phi, GroupSummary { free_rank: 0, torsion: vec![] });
    }

    #[test]
    fn rose_one_has_z_cokernel() {
        let r = verify_exact_sequence(&rose(1), 50, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cokernel_matches.coker_phi, GroupSummary { free_rank: 1, torsion: vec![] });
        assert_eq!(r.u_surjective.preimages.len(), 1);
    }

    #[test]
    fn loop_cycle_graph() {
        let g = Graph::from_names(&["v1", "v2"], &[("a", "v1", "v1"), ("b", "v1", "v2"), ("c", "v2", "v1")])
            .unwrap();
        let m = compute_kgr(&g).unwrap();
        assert_eq!(m.phi_matrix(), IntMatrix::from_rows(&[&[0, 1], &[1, -1]]));
        assert_eq!(m.phi_matrix().det(), BigInt::from(-1));
        let r = verify_exact_sequence(&g, 100, 7).unwrap();
        assert!(r.passed());
        assert_eq!(r.shift_relation.checked, 2 * 16);
    }

    #[test]
    fn shift_relation_witness_reproduces_difference() {
        let g = Graph::from_names(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a"), ("z", "b", "b"), ("w", "b", "b")])
            .unwrap();
        let m = compute_kgr(&g).unwrap();
        let r = verify_exact_sequence(&g, 10, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        for w in &r.shift_relation.witnesses {
            let u = g.vertex_ix(&w.vertex).unwrap();
            let diff = m.sub(&m.generator(u, w.i as i64), &m.generator(u, w.j as i64));
            assert!(m.equivalent(&phi(&m, &w.preimage).unwrap(), &diff));
        }
    }

    #[test]
    fn sink_graph_is_rejected() {
        let g = Graph::from_names(&["a"], &[]).unwrap();
        assert!(verify_exact_sequence(&g, 1, 0).is_err());
    }
}
