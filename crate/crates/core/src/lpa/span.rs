use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LpaElement, PathMonomial};

type Sparse<K> = BTreeMap<K, BigRational>;

fn axpy<K: Ord + Clone>(y: &mut Sparse<K>, a: &BigRational, x: &Sparse<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// A row-echelon basis keyed by leading monomial; each row remembers
/// which combination of the input candidates produced it.
struct Echelon {
    rows: BTreeMap<PathMonomial, (Sparse<PathMonomial>, Sparse<usize>)>,
}

impl Echelon {
    /// Reduces `v` against the basis, returning the remainder and the
    /// combination subtracted.
    fn reduce(&self, mut v: Sparse<PathMonomial>) -> (Sparse<PathMonomial>, Sparse<usize>) {
        let mut used = Sparse::new();
        loop {
            let hit = v.iter().find_map(|(m, c)| self.rows.get(m).map(|row| (c.clone(), row)));
            let Some((c, (row, combo))) = hit else { return (v, used) };
            axpy(&mut v, &-c.clone(), row);
            axpy(&mut used, &c, combo);
        }
    }
}

/// Finds rationals `c` with `Σ cᵢ candidatesᵢ = target`, if any exist.
pub fn solve_span(target: &LpaElement, candidates: &[LpaElement]) -> Option<Vec<BigRational>> {
    let mut basis = Echelon { rows: BTreeMap::new() };
    let goal: Sparse<PathMonomial> = target.terms.clone();
    let check = |basis: &Echelon| {
        let (rest, used) = basis.reduce(goal.clone());
        rest.is_empty().then(|| {
            let mut out = vec![BigRational::zero(); candidates.len()];
            for (i, c) in used {
                out[i] = c;
            }
            out
        })
    };
    if let Some(c) = check(&basis) {
        return Some(c);
    }
    for (i, cand) in candidates.iter().enumerate() {
        let (rest, used) = basis.reduce(cand.terms.clone());
        let Some((lead, lc)) = rest.iter().next().map(|(m, c)| (m.clone(), c.clone())) else { continue };
        let inv = BigRational::one() / lc;
        let row: Sparse<PathMonomial> = rest.into_iter().map(|(m, c)| (m, c * &inv)).collect();
        let mut combo: Sparse<usize> = BTreeMap::from([(i, inv.clone())]);
        axpy(&mut combo, &-inv, &used);
        basis.rows.insert(lead, (row, combo));
        if let Some(c) = check(&basis) {
            return Some(c);
        }
    }
    None
}
