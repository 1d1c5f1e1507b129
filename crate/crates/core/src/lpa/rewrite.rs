//! Letter-level rewriting of words in vertices, edges and ghost edges.
//!
//! Independent of the monomial product: a word is reduced by repeatedly
//! rewriting one adjacent pair, chosen by the caller's RNG, until no rule
//! applies.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Lpa, LpaElement, PathMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    V(usize),
    E(usize),
    G(usize),
}

/// The word spelling `αβ*`.
pub fn word_of(m: &PathMonomial) -> Vec<Letter> {
    if m.is_vertex() {
        return vec![Letter::V(m.anchor)];
    }
    m.alpha.iter().map(|&e| Letter::E(e)).chain(m.beta.iter().rev().map(|&e| Letter::G(e))).collect()
}

/// Result of rewriting one adjacent pair: a signed list of replacement words.
enum Step {
    None,
    Replace(Vec<(Vec<Letter>, i64)>),
}

fn rule(lpa: &Lpa, x: Letter, y: Letter) -> Step {
    use Letter::*;
    let g = lpa.graph();
    let keep = |l: Letter, ok: bool| Step::Replace(if ok { vec![(vec![l], 1)] } else { vec![] });
    match (x, y) {
        (V(u), V(v)) => keep(V(u), u == v),
        (V(u), E(e)) => keep(E(e), u == g.src(e)),
        (E(e), V(v)) => keep(E(e), g.dst(e) == v),
        (V(u), G(e)) => keep(G(e), u == g.dst(e)),
        (G(e), V(v)) => keep(G(e), g.src(e) == v),
        (E(e), E(f)) if g.dst(e) != g.src(f) => Step::Replace(vec![]),
        (G(e), G(f)) if g.src(e) != g.dst(f) => Step::Replace(vec![]),
        (E(e), G(f)) if g.dst(e) != g.dst(f) => Step::Replace(vec![]),
        (E(e), G(f)) if e == f && lpa.special_edge(g.src(e)) == Some(e) => {
            let v = g.src(e);
            let mut out = vec![(vec![V(v)], 1)];
            out.extend(g.out_edges(v).iter().filter(|&&h| h != e).map(|&h| (vec![E(h), G(h)], -1)));
            Step::Replace(out)
        }
        (G(e), E(f)) => keep(V(g.dst(e)), e == f),
        _ => Step::None,
    }
}

fn redexes(lpa: &Lpa, w: &[Letter]) -> Vec<usize> {
    (0..w.len().saturating_sub(1)).filter(|&i| !matches!(rule(lpa, w[i], w[i + 1]), Step::None)).collect()
}

fn monomial_of(lpa: &Lpa, w: &[Letter]) -> PathMonomial {
    let g = lpa.graph();
    if let [Letter::V(v)] = w {
        return PathMonomial::vertex(*v);
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for l in w {
        match *l {
            Letter::E(e) => alpha.push(e),
            Letter::G(e) => beta.push(e),
            Letter::V(_) => unreachable!("irreducible words of length > 1 have no vertex letters"),
        }
    }
    beta.reverse();
    let anchor = alpha.last().or(beta.last()).map(|&e| g.dst(e)).expect("nonempty word");
    PathMonomial { alpha, beta, anchor }
}

/// Reduces a `ℚ`-combination of words to normal form, applying rules in an
/// order drawn from `rng`.
pub fn reduce_word<R: Rng>(lpa: &Lpa, words: Vec<(Vec<Letter>, BigRational)>, rng: &mut R) -> LpaElement {
    let mut pending: BTreeMap<Vec<Letter>, BigRational> = BTreeMap::new();
    for (w, c) in words {
        *pending.entry(w).or_insert_with(BigRational::zero) += c;
    }
    let mut done = lpa.zero();
    loop {
        pending.retain(|_, c| !c.is_zero());
        if pending.is_empty() {
            return done;
        }
        let k = rng.random_range(0..pending.len());
        let w = pending.keys().nth(k).cloned().expect("index in range");
        let c = pending.remove(&w).expect("present");
        let sites = redexes(lpa, &w);
        if sites.is_empty() {
            done.add_term(monomial_of(lpa, &w), c);
            continue;
        }
        let i = sites[rng.random_range(0..sites.len())];
        let Step::Replace(outs) = rule(lpa, w[i], w[i + 1]) else { unreachable!() };
        for (mid, s) in outs {
            let mut nw = w[..i].to_vec();
            nw.extend(mid);
            nw.extend_from_slice(&w[i + 2..]);
            *pending.entry(nw).or_insert_with(BigRational::zero) += &c * BigRational::from_integer(s.into());
        }
    }
}

impl Lpa {
    /// Product computed by concatenating words and rewriting letter by letter.
    pub fn mul_by_rewriting<R: Rng>(&self, a: &LpaElement, b: &LpaElement, rng: &mut R) -> LpaElement {
        let mut words = Vec::new();
        for (x, c) in a.terms() {
            for (y, d) in b.terms() {
                let mut w = word_of(x);
                w.extend(word_of(y));
                words.push((w, c * d));
            }
        }
        reduce_word(self, words, rng)
    }

    /// The element spelled by a single word with coefficient one.
    pub fn from_word<R: Rng>(&self, w: Vec<Letter>, rng: &mut R) -> LpaElement {
        reduce_word(self, vec![(w, BigRational::one())], rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ghost_edge_cancellation() {
        let g = Graph::from_names(&["v", "w"], &[("a", "v", "v"), ("b", "v", "w")]).unwrap();
        let lpa = Lpa::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        use Letter::*;
        assert_eq!(lpa.from_word(vec![G(0), E(0)], &mut rng), lpa.vertex(0));
        assert!(lpa.from_word(vec![G(0), E(1)], &mut rng).is_zero());
        // a a* b b* = a (a* b) b* = 0
        assert!(lpa.from_word(vec![E(0), G(0), E(1), G(1)], &mut rng).is_zero());
        // b is the designated edge at v
        assert_eq!(lpa.to_text(&lpa.from_word(vec![E(1), G(1)], &mut rng)), "v - a a*");
    }

    #[test]
    fn rewriting_agrees_with_monomial_product() {
        let g = Graph::from_names(&["v", "w"], &[("a", "v", "v"), ("b", "v", "w"), ("c", "w", "v")]).unwrap();
        let lpa = Lpa::new(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = lpa.mul(&lpa.edge(1), &lpa.ghost(1));
        let y = lpa.mul(&lpa.edge(0), &lpa.edge(1)).add(&lpa.ghost(2));
        for _ in 0..20 {
            assert_eq!(lpa.mul_by_rewriting(&x, &y, &mut rng), lpa.mul(&x, &y));
            assert_eq!(lpa.mul_by_rewriting(&y, &x, &mut rng), lpa.mul(&y, &x));
        }
    }
}
