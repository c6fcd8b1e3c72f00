//! Fast products: normal forms built by inserting one letter at a time on
//! the right of a standard word, memoized per system.
//!
//! For a standard word `s` and a letter `x`:
//! if `last(s) <= x` the product is already standard; otherwise
//! `s = s' y` with `y > x` and
//! `s' y x = q_xy * nf(nf(s' x) y) + nf(s' f_xy)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::MutationSystem;
use crate::coeff::LaurentScalar;
use crate::freealg::{NCPolynomial, Word};

pub(crate) type Combo = Vec<(Word, LaurentScalar)>;

impl MutationSystem {
    /// Normal form of `s * x` for a standard word `s`.
    pub(crate) fn insert_right(&self, s: &Word, x: u8) -> Arc<Combo> {
        match s.last() {
            None => return Arc::new(vec![(Word::from_letters(&[x]), LaurentScalar::one())]),
            Some(y) if y <= x => {
                let mut w = s.clone();
                w.push(x);
                return Arc::new(vec![(w, LaurentScalar::one())]);
            }
            _ => {}
        }
        let key = (s.clone(), x);
        if let Some(hit) = self.cached(&key) {
            return hit;
        }
        let mut prefix = s.clone();
        let y = prefix.pop().unwrap();
        let rel = self.relation(x, y);
        let mut acc: HashMap<Word, LaurentScalar> = HashMap::new();
        for (u, c) in self.insert_right(&prefix, x).iter() {
            let c = c * &rel.q;
            for (v, d) in self.insert_right(u, y).iter() {
                add_into(&mut acc, v.clone(), d * &c);
            }
        }
        for (fw, fc) in rel.f.terms() {
            for (v, d) in self.extend(&[(prefix.clone(), fc.clone())], fw.letters()) {
                add_into(&mut acc, v, d);
            }
        }
        let result = Arc::new(sorted(acc));
        self.store(key, result.clone());
        result
    }

    /// Normal form of `(sum of c * s) * letters`, every `s` standard.
    pub(crate) fn extend(&self, start: &[(Word, LaurentScalar)], letters: &[u8]) -> Combo {
        let mut cur: Combo = start.to_vec();
        for &x in letters {
            let mut acc: HashMap<Word, LaurentScalar> = HashMap::new();
            for (s, c) in &cur {
                for (v, d) in self.insert_right(s, x).iter() {
                    add_into(&mut acc, v.clone(), d * c);
                }
            }
            cur = sorted(acc);
        }
        cur
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &Word) -> NCPolynomial {
        NCPolynomial::from_terms(
            self.n(),
            self.extend(&[(Word::unit(), LaurentScalar::one())], w.letters()),
        )
    }

    /// Normal form through the memoized engine. Agrees with
    /// [`MutationSystem::normalize`] whenever the system has the PBW property.
    pub fn normal_form(&self, p: &NCPolynomial) -> NCPolynomial {
        assert_eq!(p.n(), self.n(), "polynomial over a different grid");
        let mut out = NCPolynomial::zero(self.n());
        for (w, c) in p.terms() {
            if w.is_standard() {
                out.add_term(w.clone(), c.clone());
            } else {
                out.add_scaled(&self.normal_form_word(w), c);
            }
        }
        out
    }

    /// Product in `A(S)`: the normal form of the concatenation.
    pub fn multiply(&self, p: &NCPolynomial, r: &NCPolynomial) -> NCPolynomial {
        assert_eq!(p.n(), self.n(), "polynomial over a different grid");
        assert_eq!(r.n(), self.n(), "polynomial over a different grid");
        let left: Combo = self.normal_form(p).into_terms().collect();
        let mut out = NCPolynomial::zero(self.n());
        for (w, c) in r.terms() {
            for (v, d) in self.extend(&left, w.letters()) {
                out.add_term(v, &d * c);
            }
        }
        out
    }

    /// Product of several factors, left to right.
    pub fn product(&self, factors: &[&NCPolynomial]) -> NCPolynomial {
        let mut acc = NCPolynomial::one(self.n());
        for f in factors {
            acc = self.multiply(&acc, f);
        }
        acc
    }

    /// `p^k` in `A(S)`.
    pub fn power(&self, p: &NCPolynomial, k: usize) -> NCPolynomial {
        let mut acc = NCPolynomial::one(self.n());
        for _ in 0..k {
            acc = self.multiply(&acc, p);
        }
        acc
    }

    /// Number of memoized insertions.
    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}

fn add_into(acc: &mut HashMap<Word, LaurentScalar>, w: Word, c: LaurentScalar) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(w).or_insert_with(LaurentScalar::zero);
    *slot += &c;
}

fn sorted(acc: HashMap<Word, LaurentScalar>) -> Combo {
    let mut v: Combo = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}
