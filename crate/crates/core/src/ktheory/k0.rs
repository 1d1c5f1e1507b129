use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::KtError;
use crate::graph::Graph;
use crate::intlin::{cokernel, AbGroupPresentation, IntMatrix, IntVector};
use crate::monoid::MonoidElement;

/// `K₀(L(E))` presented as `coker(I − Nᵗ)` restricted to the columns of
/// regular vertices, together with the class of `1 = Σ v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Group {
    pub presentation: AbGroupPresentation,
    /// Canonical coordinates of the order unit.
    pub unit: IntVector,
    adjacency: Option<IntMatrix>,
}

impl K0Group {
    /// A pair `(G, unit)` not tied to any graph, with `G = ℤ/t₁ ⊕ … ⊕ ℤ^f`
    /// in canonical coordinates.
    pub fn abstract_pair(torsion: Vec<BigInt>, free_rank: usize, unit: IntVector) -> K0Group {
        let k = torsion.len() + free_rank;
        assert_eq!(unit.len(), k, "unit coordinate count");
        let presentation = AbGroupPresentation { free_rank, torsion, basis_map: IntMatrix::identity(k) };
        let unit = presentation.reduce(unit);
        K0Group { presentation, unit, adjacency: None }
    }

    /// Class of an arbitrary vector of `ℤ^{E⁰}`.
    pub fn class_of_vector(&self, v: &[BigInt]) -> Result<IntVector, KtError> {
        let n = self.presentation.ambient_rank();
        if v.len() != n {
            return Err(KtError::DimensionMismatch { expected: n, got: v.len() });
        }
        Ok(self.presentation.class_of(v))
    }

    pub fn class_of(&self, p: &MonoidElement) -> Result<IntVector, KtError> {
        self.class_of_vector(&p.to_int_vector())
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation.is_trivial()
    }

    pub fn adjacency(&self) -> Option<&IntMatrix> {
        self.adjacency.as_ref()
    }

    pub fn summary(&self) -> K0Summary {
        K0Summary {
            free_rank: self.presentation.free_rank,
            torsion: self.presentation.torsion.clone(),
            unit: self.unit.clone(),
        }
    }
}

/// JSON shape of a `K0Group`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct K0Summary {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub unit: Vec<BigInt>,
}

impl fmt::Display for K0Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = match self.unit.as_slice() {
            [] => "0".to_string(),
            [x] => x.to_string(),
            xs => format!("({})", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
        };
        write!(f, "({}, {})", self.presentation, unit)
    }
}

/// The relation matrix: one column `e_v − Σ_{s(e)=v} e_{r(e)}` per regular vertex.
pub(crate) fn k0_relations(g: &Graph) -> IntMatrix {
    let n = g.vertex_count();
    let regular = g.regular_indices();
    let mut rel = IntMatrix::zeros(n, regular.len());
    for (col, &v) in regular.iter().enumerate() {
        rel.set(v, col, BigInt::one());
        for &e in g.out_edges(v) {
            let w = g.dst(e);
            let entry = rel.get(w, col) - BigInt::one();
            rel.set(w, col, entry);
        }
    }
    rel
}

pub fn compute_k0(g: &Graph) -> K0Group {
    let presentation = cokernel(&k0_relations(g));
    let ones = vec![BigInt::one(); g.vertex_count()];
    let unit = presentation.class_of(&ones);
    K0Group { presentation, unit, adjacency: Some(g.adjacency()) }
}

/// Image of a monoid element under `M_E ≅ V(L(E)) → K₀(L(E))`.
pub fn k0_class(g: &Graph, p: &MonoidElement) -> Result<IntVector, KtError> {
    compute_k0(g).class_of(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::int_vector;

    fn g(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        Graph::from_names(vertices, edges).unwrap()
    }

    #[test]
    fn path_graph_is_z_with_unit_three() {
        let k = compute_k0(&g(&["v1", "v2", "v3"], &[("f1", "v1", "v2"), ("f2", "v2", "v3")]));
        assert_eq!(k.presentation.free_rank, 1);
        assert!(k.presentation.torsion.is_empty());
        assert_eq!(k.unit, int_vector(&[3]));
        assert_eq!(k.to_string(), "(Z, 3)");
    }

    #[test]
    fn edge_then_cycle_is_z_with_unit_three() {
        let k = compute_k0(&g(
            &["v1", "v2", "v3"],
            &[("f1", "v1", "v2"), ("f2", "v2", "v3"), ("f3", "v3", "v2")],
        ));
        assert_eq!(k.summary(), K0Summary { free_rank: 1, torsion: vec![], unit: int_vector(&[3]) });
    }

    #[test]
    fn isolated_vertex() {
        let k = compute_k0(&g(&["v"], &[]));
        assert_eq!(k.to_string(), "(Z, 1)");
    }

    #[test]
    fn rose_with_three_petals() {
        let k = compute_k0(&g(&["v"], &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "v")]));
        assert_eq!(k.presentation.torsion, int_vector(&[2]));
        assert_eq!(k.unit, int_vector(&[1]));
    }

    #[test]
    fn class_dimension_mismatch() {
        let k = compute_k0(&g(&["v"], &[]));
        assert!(matches!(
            k.class_of_vector(&int_vector(&[1, 1])),
            Err(KtError::DimensionMismatch { expected: 1, got: 2 })
        ));
    }
}
