use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `u * a * v = d` with unimodular `u`, `v`.
///
/// `diag` has `min(rows, cols)` entries; nonzero entries come first and each
/// divides the next. The inverses of both transforms are tracked alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub diag: Vec<BigInt>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    /// Invariant factor `i`, counting implicit zeros past the diagonal.
    pub fn factor(&self, i: usize) -> BigInt {
        self.diag.get(i).cloned().unwrap_or_default()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[target] += k * row[src]`
    fn add_row(&mut self, target: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(target, src, k);
        self.u.add_row_multiple(target, src, k);
        self.u_inv.add_col_multiple(src, target, &-k);
    }

    /// `col[target] += k * col[src]`
    fn add_col(&mut self, target: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(target, src, k);
        self.v.add_col_multiple(target, src, k);
        self.v_inv.add_row_multiple(src, target, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in the trailing block, ties to lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| m < *b) {
                    best = Some((i, j, m));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Computes the Smith normal form of `a` with transforms.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };

    for t in 0..m.min(n) {
        while let Some((pi, pj)) = w.pivot(t) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a.get(t, t).clone();

            let mut dirty = false;
            for i in t + 1..m {
                let q = w.a.get(i, t).div_floor(&p);
                w.add_row(i, t, &-q);
                dirty |= !w.a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = w.a.get(t, j).div_floor(&p);
                w.add_col(j, t, &-q);
                dirty |= !w.a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }

            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
    }

    let diag = (0..m.min(n)).map(|i| w.a.get(i, i).clone()).collect();
    SnfResult { diag, d: w.a, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = snf(a);
        assert_eq!(&(&r.u * a) * &r.v, r.d);
        assert!(r.d.is_diagonal());
        assert_eq!(&r.u * &r.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&r.v * &r.v_inv, IntMatrix::identity(a.cols()));
        r
    }

    fn diag(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_unit_factors() {
        let r = check(&IntMatrix::identity(4));
        assert!(r.diag.iter().all(One::is_one));
    }

    #[test]
    fn coprime_diagonal() {
        let r = check(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.diag, diag(&[1, 6]));
    }

    #[test]
    fn unimodular_input() {
        let r = check(&IntMatrix::from_rows(&[&[0, -1], &[-1, 1]]));
        assert_eq!(r.diag, diag(&[1, 1]));
    }

    #[test]
    fn rank_deficient_and_rectangular() {
        let r = check(&IntMatrix::from_rows(&[&[2, 4, 6], &[4, 8, 12]]));
        assert_eq!(r.diag, diag(&[2, 0]));
        assert_eq!(r.rank(), 1);
        let r = check(&IntMatrix::from_rows(&[&[6], &[4], &[0]]));
        assert_eq!(r.diag, diag(&[2]));
        let r = check(&IntMatrix::zeros(2, 3));
        assert_eq!(r.rank(), 0);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in Smith form; the fix-up must merge the factors.
        let r = check(&IntMatrix::from_rows(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]));
        assert_eq!(r.diag, diag(&[2, 2, 60]));
    }

    #[test]
    fn deterministic() {
        let a = IntMatrix::from_rows(&[&[3, -4, 1], &[5, 2, -2], &[0, 7, 9]]);
        assert_eq!(snf(&a), snf(&a));
    }
}
