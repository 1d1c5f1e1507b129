use std::collections::BTreeMap;

use super::{CsklError, CsklRealization};
use crate::lpa::LpaElement;

/// `Σ t₋ʲ r₋ⱼ + r₀ + Σ rᵢ t₊ⁱ` with `r₋ⱼ ∈ pⱼR` and `rᵢ ∈ Rpᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsklElement {
    realization: u64,
    neg: BTreeMap<u32, LpaElement>,
    zero: LpaElement,
    pos: BTreeMap<u32, LpaElement>,
}

/// `t₋ʲ r` (`Neg(0, r)` is the constant part) or `r t₊ⁱ` with `i ≥ 1`.
enum Part {
    Neg(u32, LpaElement),
    Pos(u32, LpaElement),
}

impl CsklElement {
    pub fn neg_parts(&self) -> &BTreeMap<u32, LpaElement> {
        &self.neg
    }

    pub fn zero_part(&self) -> &LpaElement {
        &self.zero
    }

    pub fn pos_parts(&self) -> &BTreeMap<u32, LpaElement> {
        &self.pos
    }

    pub fn is_zero(&self) -> bool {
        self.neg.is_empty() && self.zero.is_zero() && self.pos.is_empty()
    }

    /// Degrees with a nonzero part, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.neg.keys().rev().map(|&j| -(j as i64)).collect();
        if !self.zero.is_zero() {
            d.push(0);
        }
        d.extend(self.pos.keys().map(|&i| i as i64));
        d
    }

    fn parts(&self) -> impl Iterator<Item = Part> + '_ {
        self.neg
            .iter()
            .map(|(&j, r)| Part::Neg(j, r.clone()))
            .chain((!self.zero.is_zero()).then(|| Part::Neg(0, self.zero.clone())))
            .chain(self.pos.iter().map(|(&i, r)| Part::Pos(i, r.clone())))
    }
}

impl CsklRealization {
    fn empty(&self) -> CsklElement {
        CsklElement { realization: self.id, neg: BTreeMap::new(), zero: self.lpa.zero(), pos: BTreeMap::new() }
    }

    /// Adds `t₋ʲ r` (or `r` when `j = 0`), projecting `r` onto `pⱼR`.
    fn push_neg(&self, x: &mut CsklElement, j: u32, r: LpaElement) {
        if j == 0 {
            x.zero = x.zero.add(&r);
            return;
        }
        let r = self.lpa.mul(&self.p_pow(j), &r);
        let slot = x.neg.entry(j).or_insert_with(|| self.lpa.zero());
        *slot = slot.add(&r);
        if slot.is_zero() {
            x.neg.remove(&j);
        }
    }

    /// Adds `r t₊ⁱ`, projecting `r` onto `Rpᵢ`.
    fn push_pos(&self, x: &mut CsklElement, i: u32, r: LpaElement) {
        if i == 0 {
            x.zero = x.zero.add(&r);
            return;
        }
        let r = self.lpa.mul(&r, &self.p_pow(i));
        let slot = x.pos.entry(i).or_insert_with(|| self.lpa.zero());
        *slot = slot.add(&r);
        if slot.is_zero() {
            x.pos.remove(&i);
        }
    }

    fn check_coefficient(&self, r: &LpaElement) -> Result<(), CsklError> {
        if !self.lpa.owns(r) {
            return Err(CsklError::MismatchedRealizations);
        }
        if !r.is_homogeneous_of(0) {
            return Err(CsklError::NotDegreeZero);
        }
        Ok(())
    }

    /// The constant `r ∈ R`.
    pub fn constant(&self, r: &LpaElement) -> Result<CsklElement, CsklError> {
        self.check_coefficient(r)?;
        let mut x = self.empty();
        self.push_neg(&mut x, 0, r.clone());
        Ok(x)
    }

    pub fn one(&self) -> CsklElement {
        self.constant(&self.lpa.identity()).expect("degree 0")
    }

    /// `t₋ʲ r`, with `r` replaced by `pⱼ r`.
    pub fn neg_term(&self, j: u32, r: &LpaElement) -> Result<CsklElement, CsklError> {
        self.check_coefficient(r)?;
        let mut x = self.empty();
        self.push_neg(&mut x, j, r.clone());
        Ok(x)
    }

    /// `r t₊ⁱ`, with `r` replaced by `r pᵢ`.
    pub fn pos_term(&self, i: u32, r: &LpaElement) -> Result<CsklElement, CsklError> {
        self.check_coefficient(r)?;
        let mut x = self.empty();
        self.push_pos(&mut x, i, r.clone());
        Ok(x)
    }

    pub fn t_plus_element(&self) -> CsklElement {
        self.pos_term(1, &self.lpa.identity()).expect("degree 0")
    }

    pub fn t_minus_element(&self) -> CsklElement {
        self.neg_term(1, &self.lpa.identity()).expect("degree 0")
    }

    pub fn cskl_add(&self, a: &CsklElement, b: &CsklElement) -> Result<CsklElement, CsklError> {
        self.owns(a)?;
        self.owns(b)?;
        let mut x = a.clone();
        for part in b.parts() {
            match part {
                Part::Neg(j, r) => self.push_neg(&mut x, j, r),
                Part::Pos(i, r) => self.push_pos(&mut x, i, r),
            }
        }
        Ok(x)
    }

    fn owns(&self, a: &CsklElement) -> Result<(), CsklError> {
        if a.realization != self.id {
            return Err(CsklError::MismatchedRealizations);
        }
        Ok(())
    }

    /// `t₋ r t₊ = φ⁻¹(p r p)`, applied `m` times.
    fn pull_through(&self, mut c: LpaElement, m: u32) -> LpaElement {
        let p = self.p();
        for _ in 0..m {
            c = self.phi_inverse(&self.lpa.product([&p, &c, &p]));
        }
        c
    }

    /// Product in `R[t₊, t₋, φ]`, normalized with `t₋t₊ = 1`, `t₊t₋ = p`,
    /// `r t₋ = t₋ φ(r)`, `t₊ r = φ(r) t₊` and distributivity.
    pub fn cskl_multiply(&self, a: &CsklElement, b: &CsklElement) -> Result<CsklElement, CsklError> {
        self.owns(a)?;
        self.owns(b)?;
        let lpa = &self.lpa;
        let mut out = self.empty();
        for x in a.parts() {
            for y in b.parts() {
                match (&x, y) {
                    // t₋ʲ a t₋ᵏ b = t₋ʲ⁺ᵏ φᵏ(a) b
                    (Part::Neg(j, a), Part::Neg(k, b)) => {
                        let r = lpa.mul(&self.phi_pow(a, k), &b);
                        self.push_neg(&mut out, j + k, r);
                    }
                    // a t₊ⁱ b t₊ᵏ = a φⁱ(b) t₊ⁱ⁺ᵏ
                    (Part::Pos(i, a), Part::Pos(k, b)) => {
                        let r = lpa.mul(a, &self.phi_pow(&b, *i));
                        self.push_pos(&mut out, i + k, r);
                    }
                    // a t₊ⁱ t₋ᵏ b
                    (Part::Pos(i, a), Part::Neg(k, b)) => {
                        if *i >= k {
                            let d = i - k;
                            let r = lpa.mul(a, &self.phi_pow(&lpa.mul(&self.p_pow(k), &b), d));
                            self.push_pos(&mut out, d, r);
                        } else {
                            let d = k - i;
                            let r = lpa.mul(&self.phi_pow(&lpa.mul(a, &self.p_pow(*i)), d), &b);
                            self.push_neg(&mut out, d, r);
                        }
                    }
                    // t₋ʲ (a b) t₊ᵏ
                    (Part::Neg(j, a), Part::Pos(k, b)) => {
                        let m = (*j).min(k);
                        let c = self.pull_through(lpa.mul(a, &b), m);
                        if *j > m {
                            self.push_neg(&mut out, j - m, c);
                        } else {
                            self.push_pos(&mut out, k - m, c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The element of `L(E)` represented by `x`.
    pub fn to_lpa(&self, x: &CsklElement) -> Result<LpaElement, CsklError> {
        self.owns(x)?;
        let lpa = &self.lpa;
        let mut out = x.zero.clone();
        for (&j, r) in &x.neg {
            out = out.add(&lpa.mul(&self.t_minus_pow(j), r));
        }
        for (&i, r) in &x.pos {
            out = out.add(&lpa.mul(r, &self.t_plus_pow(i)));
        }
        Ok(out)
    }

    pub fn cskl_to_text(&self, x: &CsklElement) -> String {
        let lpa = &self.lpa;
        let mut parts = Vec::new();
        for (&j, r) in x.neg.iter().rev() {
            parts.push(format!("t-^{j} ({})", lpa.to_text(r)));
        }
        if !x.zero.is_zero() {
            parts.push(format!("({})", lpa.to_text(&x.zero)));
        }
        for (&i, r) in &x.pos {
            parts.push(format!("({}) t+^{i}", lpa.to_text(r)));
        }
        if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }
    }
}
