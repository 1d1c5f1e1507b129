use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::K0Group;
use crate::intlin::{snf, AbGroupPresentation, IntMatrix, IntVector};

/// Largest finite group handled by exhaustive automorphism search.
pub const FINITE_SEARCH_LIMIT: u64 = 10_000;
/// Leaf budget of the finite automorphism search.
const SEARCH_BUDGET: u64 = 1_000_000;
/// Largest cyclic order for which witnesses are built by residue search.
const CYCLIC_LIMIT: u64 = 1_000_000;

/// Whether there is a group isomorphism carrying one order unit to the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairIsoVerdict {
    /// `witness` maps canonical coordinates of the first group to those of
    /// the second (torsion coordinates read modulo their orders).
    Yes { witness: IntMatrix },
    No { invariant: String },
    Undecided { reason: String },
}

impl PairIsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, PairIsoVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, PairIsoVerdict::No { .. })
    }
}

/// Aut-invariants of an element `u = (t, w) ∈ T ⊕ ℤ^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UnitInvariants {
    /// `None` when the element has infinite order.
    order: Option<BigInt>,
    /// gcd of the free coordinates.
    content: BigInt,
    /// The divisors `m` of the torsion exponent with `u ∈ mG`.
    divisible_by: Option<Vec<u64>>,
}

fn split<'a>(p: &AbGroupPresentation, u: &'a [BigInt]) -> (&'a [BigInt], &'a [BigInt]) {
    u.split_at(p.torsion.len())
}

fn content(w: &[BigInt]) -> BigInt {
    w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n.isqrt()).filter(|d| n.is_multiple_of(*d)).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn invariants(p: &AbGroupPresentation, u: &[BigInt]) -> UnitInvariants {
    let (t, w) = split(p, u);
    let c = content(w);
    let order = c.is_zero().then(|| {
        t.iter().zip(&p.torsion).fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d))))
    });
    let exponent = p.torsion.last().cloned().unwrap_or_else(BigInt::one);
    let divisible_by = exponent.to_u64().filter(|&e| e <= CYCLIC_LIMIT).map(|e| {
        divisors(e)
            .into_iter()
            .filter(|&m| {
                let m = BigInt::from(m);
                c.is_multiple_of(&m) && t.iter().zip(&p.torsion).all(|(x, d)| x.is_multiple_of(&m.gcd(d)))
            })
            .collect()
    });
    UnitInvariants { order, content: c, divisible_by }
}

/// Decides whether `(G_a, u_a) ≅ (G_b, u_b)`.
///
/// Exact for torsion-free groups, for `ℤ/d ⊕ ℤ^f`, and for finite groups of
/// order at most [`FINITE_SEARCH_LIMIT`]; otherwise only Aut-invariants are
/// compared and a match is reported as undecided.
pub fn k0_pair_isomorphic(a: &K0Group, b: &K0Group) -> PairIsoVerdict {
    let (pa, pb) = (&a.presentation, &b.presentation);
    if !pa.same_structure(pb) {
        return PairIsoVerdict::No { invariant: format!("groups differ: {pa} vs {pb}") };
    }
    let (ia, ib) = (invariants(pa, &a.unit), invariants(pb, &b.unit));
    if ia.content != ib.content {
        return PairIsoVerdict::No {
            invariant: format!("gcd of free unit coordinates: {} vs {}", ia.content, ib.content),
        };
    }
    if ia.order != ib.order {
        let show = |o: &Option<BigInt>| o.as_ref().map_or("infinite".to_string(), ToString::to_string);
        return PairIsoVerdict::No { invariant: format!("unit order: {} vs {}", show(&ia.order), show(&ib.order)) };
    }
    if ia.divisible_by != ib.divisible_by {
        return PairIsoVerdict::No {
            invariant: format!("divisibility of unit: {:?} vs {:?}", ia.divisible_by, ib.divisible_by),
        };
    }

    let witness = if pa.torsion.len() <= 1 {
        normalizer(pa, &a.unit).zip(normalizer(pb, &b.unit)).and_then(|(na, nb)| {
            (na.canonical == nb.canonical).then(|| reduce_rows(pa, &(&nb.inverse * &na.forward)))
        })
    } else if pa.is_finite() && pa.order().and_then(|o| o.to_u64()).is_some_and(|o| o <= FINITE_SEARCH_LIMIT) {
        match finite_search(pa, &a.unit, &b.unit) {
            Search::Found(w) => Some(w),
            Search::Exhausted => {
                return PairIsoVerdict::No { invariant: "no automorphism maps one unit to the other".into() }
            }
            Search::OutOfBudget => None,
        }
    } else {
        None
    };

    match witness {
        Some(w) if verify_iso_witness(a, b, &w) => PairIsoVerdict::Yes { witness: w },
        _ => PairIsoVerdict::Undecided { reason: "invariants agree but no isomorphism was constructed".into() },
    }
}

fn reduce_rows(p: &AbGroupPresentation, w: &IntMatrix) -> IntMatrix {
    let mut out = w.clone();
    for (i, d) in p.torsion.iter().enumerate() {
        for j in 0..out.cols() {
            out.set(i, j, out.get(i, j).mod_floor(d));
        }
    }
    out
}

/// Checks that `w` is an isomorphism `G_a → G_b` with `w · u_a = u_b`.
pub fn verify_iso_witness(a: &K0Group, b: &K0Group, w: &IntMatrix) -> bool {
    let (pa, pb) = (&a.presentation, &b.presentation);
    let k = pa.coordinate_count();
    if !pa.same_structure(pb) || w.rows() != k || w.cols() != k {
        return false;
    }
    if pb.reduce(w.mul_vec(&a.unit)) != b.unit {
        return false;
    }
    let tk = pa.torsion.len();
    for (i, t) in pa.torsion.iter().enumerate() {
        let image: IntVector = w.column(i).iter().map(|x| x * t).collect();
        if pb.reduce(image) != pb.zero() {
            return false;
        }
    }
    let free: Vec<usize> = (tk..k).collect();
    if !w.select_rows(&free).select_columns(&free).is_unimodular() {
        return false;
    }
    torsion_block_injective(pa, w)
}

fn torsion_block_injective(p: &AbGroupPresentation, w: &IntMatrix) -> bool {
    let tk = p.torsion.len();
    if tk == 0 {
        return true;
    }
    let Some(order) = p.torsion.iter().product::<BigInt>().to_u64().filter(|&o| o <= 100_000) else {
        return tk == 1 && w.get(0, 0).gcd(&p.torsion[0]).is_one();
    };
    let orders: Vec<u64> = p.torsion.iter().map(|t| t.to_u64().expect("bounded order")).collect();
    let mut seen = HashSet::with_capacity(order as usize);
    for idx in 0..order {
        let x = unrank(idx, &orders);
        let image: Vec<BigInt> = (0..tk)
            .map(|i| {
                let s: BigInt = (0..tk).map(|j| w.get(i, j) * BigInt::from(x[j])).sum();
                s.mod_floor(&p.torsion[i])
            })
            .collect();
        if !seen.insert(image) {
            return false;
        }
    }
    true
}

fn unrank(mut idx: u64, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&o| {
            let x = idx % o;
            idx /= o;
            x
        })
        .collect()
}

struct Normalizer {
    forward: IntMatrix,
    inverse: IntMatrix,
    canonical: IntVector,
}

/// Unimodular `m` with `m · w = c e₁`, `c = gcd(w) ≥ 0`, and its inverse.
fn free_normalizer(w: &[BigInt]) -> (BigInt, IntMatrix, IntMatrix) {
    let f = w.len();
    if f == 0 || w.iter().all(Zero::is_zero) {
        return (BigInt::zero(), IntMatrix::identity(f), IntMatrix::identity(f));
    }
    let col = IntMatrix::from_columns(f, &[w.to_vec()]);
    let r = snf(&col);
    let s = r.v.get(0, 0).clone();
    let scale = |m: &IntMatrix| {
        let mut out = m.clone();
        if s.is_negative() {
            for i in 0..f {
                out.negate_row(i);
            }
        }
        out
    };
    let forward = scale(&r.u);
    let inverse = scale(&r.u_inv.transpose()).transpose();
    (r.diag[0].clone(), forward, inverse)
}

/// An automorphism taking `u` to a canonical representative of its orbit,
/// for `ℤ^f` and `ℤ/d ⊕ ℤ^f`.
fn normalizer(p: &AbGroupPresentation, u: &[BigInt]) -> Option<Normalizer> {
    let (t, w) = split(p, u);
    let (c, m, m_inv) = free_normalizer(w);
    let f = w.len();
    let embed = |block: &IntMatrix, offset: usize| {
        let mut out = IntMatrix::identity(offset + f);
        for i in 0..f {
            for j in 0..f {
                out.set(offset + i, offset + j, block.get(i, j).clone());
            }
        }
        out
    };

    if p.torsion.is_empty() {
        let mut canonical = vec![BigInt::zero(); f];
        if f > 0 {
            canonical[0] = c;
        }
        return Some(Normalizer { forward: m, inverse: m_inv, canonical });
    }

    let d = p.torsion[0].clone();
    let d64 = d.to_u64().filter(|&x| x <= CYCLIC_LIMIT)?;
    let t0 = t[0].mod_floor(&d);
    let g = if c.is_zero() { d.clone() } else { c.gcd(&d) };
    let e = t0.gcd(&g);
    let gcd_d = |x: &BigInt| if x.is_zero() { d.clone() } else { x.gcd(&d) };

    let y = if c.is_zero() {
        BigInt::zero()
    } else {
        (0..d64).map(BigInt::from).find(|y| gcd_d(&(&t0 + &c * y).mod_floor(&d)) == e)?
    };
    let t2 = (&t0 + &c * &y).mod_floor(&d);
    let target = e.mod_floor(&d);
    let alpha = (1..d64.max(2))
        .map(BigInt::from)
        .find(|a| a.gcd(&d).is_one() && (a * &t2).mod_floor(&d) == target)?;
    let alpha_inv = (1..d64.max(2)).map(BigInt::from).find(|b| (b * &alpha).mod_floor(&d).is_one())?;

    let a1 = embed(&m, 1);
    let a1_inv = embed(&m_inv, 1);
    let mut a2 = IntMatrix::identity(1 + f);
    let mut a2_inv = IntMatrix::identity(1 + f);
    if f > 0 {
        a2.set(0, 1, y.clone());
        a2_inv.set(0, 1, -y);
    }
    let mut a3 = IntMatrix::identity(1 + f);
    a3.set(0, 0, alpha);
    let mut a3_inv = IntMatrix::identity(1 + f);
    a3_inv.set(0, 0, alpha_inv);

    let forward = &(&a3 * &a2) * &a1;
    let inverse = &(&a1_inv * &a2_inv) * &a3_inv;
    let mut canonical = vec![target];
    canonical.extend((0..f).map(|i| if i == 0 { c.clone() } else { BigInt::zero() }));
    debug_assert_eq!(p.reduce(forward.mul_vec(u)), canonical);
    Some(Normalizer { forward, inverse, canonical })
}

enum Search {
    Found(IntMatrix),
    Exhausted,
    OutOfBudget,
}

/// Backtracking over images of the canonical generators of a finite group.
fn finite_search(p: &AbGroupPresentation, ua: &[BigInt], ub: &[BigInt]) -> Search {
    let orders: Vec<u64> = p.torsion.iter().map(|t| t.to_u64().expect("bounded order")).collect();
    let k = orders.len();
    let total: u64 = orders.iter().product();
    let elements: Vec<Vec<u64>> = (0..total).map(|i| unrank(i, &orders)).collect();
    let order_of = |x: &[u64]| {
        x.iter().zip(&orders).fold(1u64, |acc, (&xi, &o)| acc.lcm(&(o / xi.gcd(&o))))
    };
    // images of a generator of order t must have order exactly t
    let candidates: Vec<Vec<&Vec<u64>>> =
        orders.iter().map(|&t| elements.iter().filter(|x| order_of(x) == t).collect()).collect();
    let ua: Vec<u64> = ua.iter().map(|x| x.to_u64().expect("reduced coordinate")).collect();
    let ub: Vec<u64> = ub.iter().map(|x| x.to_u64().expect("reduced coordinate")).collect();

    let mut choice = vec![0usize; k];
    let mut leaves = 0u64;
    loop {
        let images: Vec<&Vec<u64>> = (0..k).map(|i| candidates[i][choice[i]]).collect();
        leaves += 1;
        if leaves > SEARCH_BUDGET {
            return Search::OutOfBudget;
        }
        let hits_unit = (0..k).all(|r| {
            (0..k).map(|i| ua[i] * images[i][r]).sum::<u64>() % orders[r] == ub[r]
        });
        if hits_unit && injective(&images, &elements, &orders) {
            let cols: Vec<IntVector> =
                images.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect();
            return Search::Found(IntMatrix::from_columns(k, &cols));
        }
        // advance the odometer
        let mut i = 0;
        loop {
            if i == k {
                return Search::Exhausted;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn injective(images: &[&Vec<u64>], elements: &[Vec<u64>], orders: &[u64]) -> bool {
    let k = orders.len();
    let mut seen = HashSet::with_capacity(elements.len());
    elements.iter().all(|x| {
        let y: Vec<u64> =
            (0..k).map(|r| (0..k).map(|i| x[i] * images[i][r]).sum::<u64>() % orders[r]).collect();
        seen.insert(y)
    })
}
