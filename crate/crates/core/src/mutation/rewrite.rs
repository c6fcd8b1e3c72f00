//! Mutation-by-mutation rewriting with an explicit strategy.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MutationSystem;
use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::freealg::{NCPolynomial, Word};

/// Which unreduced word and which descent to mutate next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost descent of the lex-greatest unreduced word.
    Leftmost,
    /// Rightmost descent of the lex-greatest unreduced word.
    Rightmost,
    /// Uniformly random unreduced word and descent, from a seeded stream.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub result: NCPolynomial,
    pub mutations: usize,
}

/// Elementary mutation of `w` at position `r` (0-based index of the right
/// letter of the swapped pair): `q * (swapped word) + (prefix * f * suffix)`.
pub fn elementary_mutation(w: &Word, r: usize, s: &MutationSystem) -> Result<NCPolynomial> {
    let letters = w.letters();
    if r == 0 || r >= letters.len() || letters[r] >= letters[r - 1] {
        return Err(Error::NotADescent(r));
    }
    let mut out = NCPolynomial::zero(s.n());
    for (word, c) in mutate(letters, r, s) {
        out.add_term(word, c);
    }
    Ok(out)
}

fn mutate(letters: &[u8], r: usize, s: &MutationSystem) -> Vec<(Word, LaurentScalar)> {
    let (a, b) = (letters[r], letters[r - 1]);
    let rel = s.relation(a, b);
    let prefix = &letters[..r - 1];
    let suffix = &letters[r + 1..];
    let mut out = Vec::with_capacity(1 + rel.f.len());
    let mut swapped = prefix.to_vec();
    swapped.push(a);
    swapped.push(b);
    swapped.extend_from_slice(suffix);
    out.push((Word::from_letters(&swapped), rel.q.clone()));
    for (fw, fc) in rel.f.terms() {
        let mut v = prefix.to_vec();
        v.extend_from_slice(fw.letters());
        v.extend_from_slice(suffix);
        out.push((Word::from_letters(&v), fc.clone()));
    }
    out
}

impl MutationSystem {
    /// Normal form using the default strategy.
    pub fn normalize(&self, p: &NCPolynomial) -> NCPolynomial {
        self.normalize_with(p, Strategy::Leftmost).result
    }

    /// Rewrites `p` one elementary mutation at a time until every word is
    /// standard, combining like words eagerly.
    pub fn normalize_with(&self, p: &NCPolynomial, strategy: Strategy) -> NormalizeOutcome {
        assert_eq!(p.n(), self.n(), "polynomial over a different grid");
        let mut done = NCPolynomial::zero(self.n());
        let mut pending: BTreeMap<Word, LaurentScalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            if w.is_standard() {
                done.add_term(w.clone(), c.clone());
            } else {
                accumulate(&mut pending, w.clone(), c.clone());
            }
        }
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut mutations = 0;
        while !pending.is_empty() {
            let (word, coeff, r) = match (&strategy, rng.as_mut()) {
                (Strategy::Random(_), Some(rng)) => {
                    let k = rng.random_range(0..pending.len());
                    let word = pending.keys().nth(k).unwrap().clone();
                    let coeff = pending.remove(&word).unwrap();
                    let descents = word.descent_positions();
                    let r = descents[rng.random_range(0..descents.len())];
                    (word, coeff, r)
                }
                _ => {
                    let (word, coeff) = pending.pop_last().unwrap();
                    let descents = word.descent_positions();
                    let r = if strategy == Strategy::Rightmost {
                        *descents.last().unwrap()
                    } else {
                        descents[0]
                    };
                    (word, coeff, r)
                }
            };
            mutations += 1;
            for (w, c) in mutate(word.letters(), r, self) {
                let c = &c * &coeff;
                if w.is_standard() {
                    done.add_term(w, c);
                } else {
                    accumulate(&mut pending, w, c);
                }
            }
        }
        NormalizeOutcome {
            result: done,
            mutations,
        }
    }
}

fn accumulate(map: &mut BTreeMap<Word, LaurentScalar>, w: Word, c: LaurentScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}
