//! Weightings, the filtrations they induce, symbols, and the tower
//! `S_1 -> S_2 -> ... -> S_n` of associated graded systems.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{GenIndex, NCPolynomial, Word};
use crate::mutation::{MutationSystem, Relation};

/// A non-negative weight per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weighting {
    n: usize,
    weights: Vec<u32>,
}

impl Weighting {
    pub fn new<F: FnMut(GenIndex) -> u32>(n: usize, mut f: F) -> Self {
        let weights = (0..(n * n) as u8)
            .map(|l| f(GenIndex::from_flat(l, n)))
            .collect();
        Weighting { n, weights }
    }

    /// `w(i,j) = 1` on the diagonal, 0 elsewhere.
    pub fn trace(n: usize) -> Self {
        Weighting::new(n, |g| u32::from(g.row() == g.col()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, g: GenIndex) -> u32 {
        self.weights[g.flat() as usize]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.weight(&self.weights)
    }
}

/// `w_t(i,j) = 1` iff `|i-j| < n-t`. `w_0` is identically 1.
pub fn weighting_wt(n: usize, t: usize) -> Result<Weighting> {
    if t > n {
        return Err(Error::StageOutOfRange { n, t });
    }
    Ok(Weighting::new(n, |g| u32::from(g.epsilon() < n - t)))
}

fn check_grid(p: &NCPolynomial, w: &Weighting) -> Result<()> {
    if p.n() != w.n {
        return Err(Error::SizeMismatch(p.n(), w.n));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Largest weight of a word of `p`, read off the words as given.
pub fn filtration_degree(p: &NCPolynomial, w: &Weighting) -> Result<u32> {
    check_grid(p, w)?;
    Ok(p.words().map(|x| w.word_degree(x)).max().unwrap())
}

/// Filtration degree of the image of `p` in `A(S)`: normalizes first.
pub fn filtration_degree_in(p: &NCPolynomial, w: &Weighting, s: &MutationSystem) -> Result<u32> {
    check_grid(p, w)?;
    let nf = if p.is_standard() {
        p.clone()
    } else {
        s.normal_form(p)
    };
    filtration_degree(&nf, w)
}

/// Top-weight part of `p`.
pub fn symbol(p: &NCPolynomial, w: &Weighting) -> Result<NCPolynomial> {
    let d = filtration_degree(p, w)?;
    Ok(p.filter_terms(|x| w.word_degree(x) == d))
}

/// The part of `p` of weight exactly `d` (possibly zero).
pub fn homogeneous_part(p: &NCPolynomial, w: &Weighting, d: u32) -> NCPolynomial {
    p.filter_terms(|x| w.word_degree(x) == d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    /// Pairs `(a, b)` whose `f` has weight above `w(a) + w(b)`, rendered
    /// as `x[i,j]`.
    pub witnesses: Vec<(String, String)>,
    #[serde(skip)]
    pub witness_pairs: Vec<(GenIndex, GenIndex)>,
}

/// Checks `deg f_ab <= w(a) + w(b)` for every pair.
pub fn compatibility_check(s: &MutationSystem, w: &Weighting) -> CompatibilityReport {
    let mut witness_pairs = Vec::new();
    for (a, b, rel) in s.pairs() {
        if rel.f.is_zero() {
            continue;
        }
        let deg = filtration_degree(&rel.f, w).unwrap();
        if deg > w.weight(a) + w.weight(b) {
            witness_pairs.push((a, b));
        }
    }
    CompatibilityReport {
        compatible: witness_pairs.is_empty(),
        witnesses: witness_pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        witness_pairs,
    }
}

/// `sigma_w(S)`: same scalars, each `f_ab` replaced by its part of weight
/// `w(a) + w(b)`.
pub fn symbol_system(s: &MutationSystem, w: &Weighting) -> Result<MutationSystem> {
    if w.n != s.n() {
        return Err(Error::SizeMismatch(s.n(), w.n));
    }
    if !compatibility_check(s, w).compatible {
        return Err(Error::IncompatibleWeighting);
    }
    let stage = s.stage().map(|t| t + 1);
    Ok(s.map_relations(stage, |a, b, rel| Relation {
        q: rel.q.clone(),
        f: homogeneous_part(&rel.f, w, w.weight(a) + w.weight(b)),
    }))
}

/// Number of standard words of length `d` per weight.
pub fn graded_counts(words: &[Word], w: &Weighting) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for x in words {
        *out.entry(w.word_degree(x)).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerRow {
    pub t: usize,
    pub compatible: bool,
    pub symbol_matches_next: bool,
    pub graded_dims_match: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub n: usize,
    pub max_degree: usize,
    pub rows: Vec<TowerRow>,
    pub pass: bool,
}

/// For each `t < n`: compatibility of `(S_t, w_t)`, `sigma_{w_t}(S_t) = S_{t+1}`,
/// and equal `(degree, weight)` counts of standard words in `A_t` and
/// `A_{t+1}` up to `max_degree`.
pub fn tower_check(n: usize, max_degree: usize) -> Result<TowerReport> {
    let mut rows = Vec::new();
    for t in 1..n {
        let s = MutationSystem::build(n, t)?;
        let next = MutationSystem::build(n, t + 1)?;
        let w = weighting_wt(n, t)?;
        let compatible = compatibility_check(&s, &w).compatible;
        let symbol_matches_next = match symbol_system(&s, &w) {
            Ok(sym) => sym.same_tables(&next),
            Err(_) => false,
        };
        let graded_dims_match = (0..=max_degree).all(|d| {
            let here = graded_counts(&standard_basis(&s, d), &w);
            let there = graded_counts(&standard_basis(&next, d), &w);
            here == there
        });
        rows.push(TowerRow {
            t,
            compatible,
            symbol_matches_next,
            graded_dims_match,
            pass: compatible && symbol_matches_next && graded_dims_match,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TowerReport {
        n,
        max_degree,
        rows,
        pass,
    })
}

/// Standard words of length `d` that are normal forms in `A(S)`, i.e. the
/// PBW basis in that degree.
fn standard_basis(s: &MutationSystem, d: usize) -> Vec<Word> {
    crate::mutation::standard_monomials(s.n(), d)
        .into_iter()
        .filter(|w| s.normal_form_word(w) == NCPolynomial::word(s.n(), w.clone()))
        .collect()
}
