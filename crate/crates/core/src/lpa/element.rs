use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PathMonomial;

/// A finite `ℚ`-combination of normal-form monomials of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpaElement {
    pub(crate) graph: u64,
    pub(crate) terms: BTreeMap<PathMonomial, BigRational>,
}

impl LpaElement {
    pub(crate) fn zero_for(graph: u64) -> Self {
        LpaElement { graph, terms: BTreeMap::new() }
    }

    pub(crate) fn monomial_for(graph: u64, m: PathMonomial) -> Self {
        LpaElement { graph, terms: BTreeMap::from([(m, BigRational::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PathMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &PathMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, m: PathMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn same_graph(&self, other: &LpaElement) -> bool {
        self.graph == other.graph
    }

    /// Sum; both operands must come from the same graph.
    pub fn add(&self, other: &LpaElement) -> LpaElement {
        debug_assert!(self.same_graph(other));
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LpaElement {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &LpaElement) -> LpaElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> LpaElement {
        if c.is_zero() {
            return LpaElement::zero_for(self.graph);
        }
        LpaElement { graph: self.graph, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// The involution `αβ* ↦ βα*`.
    pub fn star(&self) -> LpaElement {
        LpaElement { graph: self.graph, terms: self.terms.iter().map(|(m, c)| (m.star(), c.clone())).collect() }
    }

    /// Degrees `|α| − |β|` present, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(PathMonomial::degree).collect();
        d.dedup();
        d
    }

    pub fn is_homogeneous_of(&self, n: i64) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    /// Homogeneous components keyed by degree.
    pub fn grade(&self) -> BTreeMap<i64, LpaElement> {
        let mut out: BTreeMap<i64, LpaElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_insert_with(|| LpaElement::zero_for(self.graph)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, n: i64) -> LpaElement {
        LpaElement {
            graph: self.graph,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub(crate) fn fmt_with(&self, name: impl Fn(&PathMonomial) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push(' ');
            }
            out.push_str(&name(m));
        }
        out
    }
}
