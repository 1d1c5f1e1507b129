use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{snf, IntMatrix, IntVector};

/// Column-style Hermite normal form of `a`: `h = a * w` for a unimodular `w`,
/// with the nonzero columns first, each pivot positive and the entries left
/// of a pivot reduced into `[0, pivot)`. Returns `(h, rank)`.
pub fn column_hnf(a: &IntMatrix) -> (IntMatrix, usize) {
    let mut h = a.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut k = 0;
    for i in 0..rows {
        if k == cols {
            break;
        }
        loop {
            let best = (k..cols)
                .filter(|&j| !h.get(i, j).is_zero())
                .min_by(|&x, &y| h.get(i, x).abs().cmp(&h.get(i, y).abs()).then(x.cmp(&y)));
            let Some(j) = best else { break };
            h.swap_cols(k, j);
            let p = h.get(i, k).clone();
            let mut clean = true;
            for j in k + 1..cols {
                let q = h.get(i, j).div_floor(&p);
                h.add_col_multiple(j, k, &-q);
                clean &= h.get(i, j).is_zero();
            }
            if clean {
                break;
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
        }
        let p = h.get(i, k).clone();
        for j in 0..k {
            let q = h.get(i, j).div_floor(&p);
            h.add_col_multiple(j, k, &-q);
        }
        k += 1;
    }
    (h, k)
}

/// Row-style Hermite normal form: `u * a` for a unimodular `u`.
pub fn row_hnf(a: &IntMatrix) -> IntMatrix {
    column_hnf(&a.transpose()).0.transpose()
}

/// A ℤ-basis (as columns) of the column span of `a`, in Hermite form.
pub fn image_lattice(a: &IntMatrix) -> IntMatrix {
    let (h, rank) = column_hnf(a);
    h.select_columns(&(0..rank).collect::<Vec<_>>())
}

/// Whether two column sets span the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && image_lattice(a) == image_lattice(b)
}

/// The smallest saturated lattice containing the columns of `a`, i.e.
/// `span_Q(a) ∩ ℤⁿ`, as a Hermite basis.
pub fn saturate(a: &IntMatrix) -> IntMatrix {
    let r = snf(a);
    let rank = r.rank();
    image_lattice(&r.u_inv.select_columns(&(0..rank).collect::<Vec<_>>()))
}

/// Finds an integer `x` with `a * x = b`, if one exists.
pub fn solve_in_lattice(a: &IntMatrix, b: &[BigInt]) -> Option<IntVector> {
    assert_eq!(b.len(), a.rows(), "right-hand side length");
    let r = snf(a);
    let c = r.u.mul_vec(b);
    let rank = r.rank();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            let (q, rem) = ci.div_rem(&r.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let x = r.v.mul_vec(&y);
    debug_assert_eq!(a.mul_vec(&x), b);
    Some(x)
}

/// A finitely generated abelian group `ℤ/t₁ ⊕ … ⊕ ℤ/t_k ⊕ ℤ^f` presented as a
/// quotient of `ℤⁿ`.
///
/// Row `i` of `basis_map` gives coordinate `i` of the image of a vector of
/// `ℤⁿ`; the torsion coordinates come first and are read modulo `torsion[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub basis_map: IntMatrix,
}

impl AbGroupPresentation {
    /// Dimension of the ambient lattice `ℤⁿ`.
    pub fn ambient_rank(&self) -> usize {
        self.basis_map.cols()
    }

    /// Number of canonical coordinates (torsion plus free).
    pub fn coordinate_count(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order for finite groups.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Canonical coordinates of the class of `v ∈ ℤⁿ`.
    pub fn class_of(&self, v: &[BigInt]) -> IntVector {
        let raw = self.basis_map.mul_vec(v);
        self.reduce(raw)
    }

    /// Reduces torsion coordinates into `[0, tᵢ)`.
    pub fn reduce(&self, mut coords: IntVector) -> IntVector {
        for (x, t) in coords.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(t);
        }
        coords
    }

    pub fn zero(&self) -> IntVector {
        vec![BigInt::zero(); self.coordinate_count()]
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntVector {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> IntVector {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> IntVector {
        self.reduce(a.iter().map(|x| k * x).collect())
    }

    /// Whether two groups have the same invariant factors and free rank.
    pub fn same_structure(&self, other: &AbGroupPresentation) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

impl fmt::Display for AbGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `ℤⁿ / colspan(a)` in invariant-factor form, `n = a.rows()`.
pub fn cokernel(a: &IntMatrix) -> AbGroupPresentation {
    let n = a.rows();
    let r = snf(a);
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..n {
        let d = r.factor(i);
        if d.is_zero() {
            free_rows.push(i);
        } else if !d.is_one() {
            torsion.push(d);
            torsion_rows.push(i);
        }
    }

    let mut basis_rows: Vec<IntVector> = torsion_rows
        .iter()
        .zip(&torsion)
        .map(|(&i, t)| r.u.row(i).into_iter().map(|x| x.mod_floor(t)).collect())
        .collect();
    if !free_rows.is_empty() {
        // Normalizing the free block makes the coordinates independent of the
        // particular Smith transform.
        let free = row_hnf(&r.u.select_rows(&free_rows));
        basis_rows.extend(free.to_rows());
    }
    let basis_map = if basis_rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_big_rows(basis_rows)
    };
    AbGroupPresentation { free_rank: free_rows.len(), torsion, basis_map }
}
