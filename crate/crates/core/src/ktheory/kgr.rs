use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{K0Group, KtError};
use crate::graph::Graph;
use crate::intlin::{saturate, solve_in_lattice, IntMatrix, IntVector};

/// An element of the stationary limit `lim(ℤⁿ, B)`: the vector `vector`
/// placed at stage `stage`, i.e. formally `B^{-stage} · vector`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KgrElement {
    pub stage: u32,
    #[serde(serialize_with = "crate::json::big_vec")]
    pub vector: IntVector,
}

impl KgrElement {
    pub fn new(vector: IntVector, stage: u32) -> Self {
        KgrElement { stage, vector }
    }
}

impl fmt::Display for KgrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vector.iter().map(ToString::to_string).collect();
        write!(f, "({})@{}", v.join(", "), self.stage)
    }
}

/// Outcome of the bounded positivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Positivity {
    /// `B^j · v` is coordinatewise nonnegative.
    Positive { power: u32 },
    Unknown,
}

/// `K₀^gr(L(E))` for a sink-free graph, modelled as `lim(ℤⁿ, Nᵗ)`.
///
/// Every element is equivalent to one whose vector lies in the eventual
/// lattice `L = span_Q(Bˢ ℤⁿ) ∩ ℤⁿ`, on which `B` acts injectively through
/// `restricted`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KgrModule {
    b: IntMatrix,
    adjacency: IntMatrix,
    stabilization: u32,
    eventual_basis: IntMatrix,
    restricted: IntMatrix,
    b_powers: Vec<IntMatrix>,
}

pub fn compute_kgr(g: &Graph) -> Result<KgrModule, KtError> {
    if g.has_sinks() {
        return Err(KtError::HasSinks(g.sinks().into_iter().map(String::from).collect()));
    }
    let adjacency = g.adjacency();
    let b = adjacency.transpose();
    let n = g.vertex_count();

    let mut stabilization = 0u32;
    let mut power = IntMatrix::identity(n);
    let mut lattice = saturate(&power);
    loop {
        let next_power = &b * &power;
        let next = saturate(&next_power);
        if next == lattice {
            break;
        }
        lattice = next;
        power = next_power;
        stabilization += 1;
    }

    let image = &b * &lattice;
    let columns: Vec<IntVector> = image
        .columns()
        .iter()
        .map(|c| solve_in_lattice(&lattice, c).expect("B maps the eventual lattice into itself"))
        .collect();
    let restricted = IntMatrix::from_columns(lattice.cols(), &columns);

    let b_powers = (0..=stabilization + 1).map(|k| b.pow(k)).collect();
    Ok(KgrModule { b, adjacency, stabilization, eventual_basis: lattice, restricted, b_powers })
}

impl KgrModule {
    pub fn n(&self) -> usize {
        self.b.rows()
    }

    /// The matrix `Nᵗ` through which `x` acts.
    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn eventual_rank(&self) -> usize {
        self.eventual_basis.cols()
    }

    /// Columns form a ℤ-basis of the eventual lattice.
    pub fn eventual_basis(&self) -> &IntMatrix {
        &self.eventual_basis
    }

    /// `B` restricted to the eventual lattice, in the basis above.
    pub fn restricted(&self) -> &IntMatrix {
        &self.restricted
    }

    /// Smallest `s` with `span_Q(Bˢ) = span_Q(Bˢ⁺¹)`.
    pub fn stabilization_index(&self) -> u32 {
        self.stabilization
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn unit(&self) -> KgrElement {
        KgrElement::new(vec![BigInt::one(); self.n()], 0)
    }

    pub fn zero(&self) -> KgrElement {
        KgrElement::new(vec![BigInt::zero(); self.n()], 0)
    }

    fn b_pow(&self, k: u32) -> IntMatrix {
        match self.b_powers.get(k as usize) {
            Some(m) => m.clone(),
            None => self.b.pow(k),
        }
    }

    fn apply_b_pow(&self, k: u32, v: &[BigInt]) -> IntVector {
        match self.b_powers.get(k as usize) {
            Some(m) => m.mul_vec(v),
            None => (0..k).fold(v.to_vec(), |acc, _| self.b.mul_vec(&acc)),
        }
    }

    pub fn check(&self, a: &KgrElement) -> Result<(), KtError> {
        if a.vector.len() != self.n() {
            return Err(KtError::DimensionMismatch { expected: self.n(), got: a.vector.len() });
        }
        Ok(())
    }

    /// The class `[uA(i)]`: `x^i · [uA]`, i.e. `(Bⁱ e_u, 0)` for `i ≥ 0` and
    /// `(e_u, −i)` for `i < 0`.
    pub fn generator(&self, u: usize, i: i64) -> KgrElement {
        let mut e = vec![BigInt::zero(); self.n()];
        e[u] = BigInt::one();
        if i >= 0 {
            KgrElement::new(self.apply_b_pow(i as u32, &e), 0)
        } else {
            KgrElement::new(e, (-i) as u32)
        }
    }

    /// `x · a`.
    pub fn shift(&self, a: &KgrElement) -> KgrElement {
        KgrElement::new(self.b.mul_vec(&a.vector), a.stage)
    }

    /// `x⁻¹ · a`.
    pub fn unshift(&self, a: &KgrElement) -> KgrElement {
        KgrElement::new(a.vector.clone(), a.stage + 1)
    }

    /// Re-expresses `a` at a later stage.
    pub fn lift(&self, a: &KgrElement, stage: u32) -> KgrElement {
        assert!(stage >= a.stage, "cannot lower the stage");
        KgrElement::new(self.apply_b_pow(stage - a.stage, &a.vector), stage)
    }

    pub fn add(&self, a: &KgrElement, b: &KgrElement) -> KgrElement {
        let stage = a.stage.max(b.stage);
        let (x, y) = (self.lift(a, stage), self.lift(b, stage));
        KgrElement::new(x.vector.iter().zip(&y.vector).map(|(p, q)| p + q).collect(), stage)
    }

    pub fn neg(&self, a: &KgrElement) -> KgrElement {
        KgrElement::new(a.vector.iter().map(|x| -x).collect(), a.stage)
    }

    pub fn sub(&self, a: &KgrElement, b: &KgrElement) -> KgrElement {
        self.add(a, &self.neg(b))
    }

    /// Limit equivalence: `B^{m+s}·v = B^{k+s}·w` with `s` the stabilization
    /// index; complete because `B` is injective on the eventual range.
    pub fn equivalent(&self, a: &KgrElement, b: &KgrElement) -> bool {
        let s = self.stabilization;
        self.apply_b_pow(b.stage + s, &a.vector) == self.apply_b_pow(a.stage + s, &b.vector)
    }

    pub fn is_zero(&self, a: &KgrElement) -> bool {
        let s = self.stabilization;
        self.apply_b_pow(s, &a.vector).iter().all(Zero::is_zero)
    }

    /// An equivalent element whose vector lies in the eventual lattice.
    pub fn into_eventual(&self, a: &KgrElement) -> KgrElement {
        self.lift(a, a.stage + self.stabilization)
    }

    /// Coordinates, in the eventual basis, of an element already in the
    /// eventual lattice.
    pub fn eventual_coordinates(&self, v: &[BigInt]) -> Option<IntVector> {
        solve_in_lattice(&self.eventual_basis, v)
    }

    /// Bounded semi-decision for the positive cone.
    pub fn positivity(&self, a: &KgrElement, cap: u32) -> Positivity {
        let mut v = a.vector.clone();
        for j in 0..=cap {
            if v.iter().all(|x| !x.is_negative()) {
                return Positivity::Positive { power: j };
            }
            v = self.b.mul_vec(&v);
        }
        Positivity::Unknown
    }

    /// `B − I`, the matrix of `φ` on stage vectors.
    pub fn phi_matrix(&self) -> IntMatrix {
        &self.b - &IntMatrix::identity(self.n())
    }

    /// `restricted − I`, the matrix of `φ` on the eventual lattice.
    pub fn restricted_phi_matrix(&self) -> IntMatrix {
        &self.restricted - &IntMatrix::identity(self.eventual_rank())
    }

    /// Human-readable description of the limit group.
    pub fn describe(&self) -> String {
        let r = self.eventual_rank();
        let det = self.restricted.det().abs();
        if r == 0 {
            "0".into()
        } else if det.is_one() {
            if r == 1 {
                "Z".into()
            } else {
                format!("Z^{r}")
            }
        } else if r == 1 {
            format!("Z[1/{}]", radical(det))
        } else {
            format!("lim(Z^{r}, {})", self.restricted)
        }
    }

    pub fn b_power(&self, k: u32) -> IntMatrix {
        self.b_pow(k)
    }
}

/// `φ = x − id`.
pub fn phi(m: &KgrModule, a: &KgrElement) -> Result<KgrElement, KtError> {
    m.check(a)?;
    let bv = m.b.mul_vec(&a.vector);
    Ok(KgrElement::new(bv.iter().zip(&a.vector).map(|(x, y)| x - y).collect(), a.stage))
}

/// The forgetful map `U : K₀^gr → K₀`, `(v, k) ↦ [v]`.
pub fn forgetful_u(m: &KgrModule, a: &KgrElement, k0: &K0Group) -> Result<IntVector, KtError> {
    m.check(a)?;
    if k0.adjacency() != Some(&m.adjacency) {
        return Err(KtError::GraphMismatch);
    }
    k0.class_of_vector(&a.vector)
}

/// `[uA(i)]` for `i ≥ 0` obtained by expanding `u` along its out-edges `i`
/// times, straight from the edge list.
pub fn iterated_expansion(g: &Graph, u: usize, i: u32) -> KgrElement {
    let n = g.vertex_count();
    let mut counts = vec![BigInt::zero(); n];
    counts[u] = BigInt::one();
    for _ in 0..i {
        let mut next = vec![BigInt::zero(); n];
        for (v, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &e in g.out_edges(v) {
                next[g.dst(e)] += c;
            }
        }
        counts = next;
    }
    KgrElement::new(counts, 0)
}

/// Checks `x[uA(i)] = Σ_{s(α)=u} [r(α)A(i)]` in the limit.
pub fn shift_relation_check(g: &Graph, u: &str, i: i64) -> Result<bool, KtError> {
    let m = compute_kgr(g)?;
    let ui = g.vertex_ix(u).ok_or_else(|| KtError::UnknownVertex(u.to_string()))?;
    let lhs = m.shift(&m.generator(ui, i));
    let rhs = g
        .out_edges(ui)
        .iter()
        .fold(m.zero(), |acc, &e| m.add(&acc, &m.generator(g.dst(e), i)));
    Ok(m.equivalent(&lhs, &rhs))
}

/// Product of the distinct primes dividing `n > 0`.
fn radical(mut n: BigInt) -> BigInt {
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out *= &p;
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out *= n;
    }
    out
}

/// Searches for `M` with `M · R_a = R_b · M` and `det M = ±1`, entries in
/// `[-bound, bound]`, where `R` are the restricted matrices. Such an `M`
/// is an isomorphism of the limits commuting with the shift.
/// Only attempted for eventual rank at most 3.
pub fn find_module_isomorphism(a: &KgrModule, b: &KgrModule, bound: i64) -> Option<IntMatrix> {
    let r = a.eventual_rank();
    if r != b.eventual_rank() || r > 3 {
        return None;
    }
    let (ra, rb) = (a.restricted(), b.restricted());
    let cells = r * r;
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(cells as u32)?;
    (0..total).find_map(|mut code| {
        let mut m = IntMatrix::zeros(r, r);
        for c in 0..cells {
            m.set(c / r, c % r, BigInt::from((code % width) as i64 - bound));
            code /= width;
        }
        (m.is_unimodular() && &m * ra == rb * &m).then_some(m)
    })
}
