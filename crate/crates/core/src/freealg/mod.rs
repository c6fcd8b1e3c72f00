//! Words and noncommutative polynomials in the generators `x[i,j]` of the
//! `n x n` grid.
//!
//! Generators are ordered lexicographically, `(i,j) <= (k,l)` iff
//! `n*i + j <= n*k + l`. Internally a generator is its flat index
//! `n*(i-1) + (j-1)`, so comparing letters is comparing bytes.

pub(crate) mod format;
pub(crate) mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};

pub use format::format_expr;
pub use parse::parse_expr;

/// Largest supported matrix size; flat indices must fit in a byte.
pub const MAX_N: usize = 15;

/// A generator `x[row, col]` of the `n x n` quantum matrix algebra (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenIndex {
    row: u8,
    col: u8,
    n: u8,
}

impl GenIndex {
    pub fn new(row: usize, col: usize, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N || row == 0 || col == 0 || row > n || col > n {
            return Err(Error::IndexOutOfRange { row, col, n });
        }
        Ok(GenIndex {
            row: row as u8,
            col: col as u8,
            n: n as u8,
        })
    }

    pub fn from_flat(letter: u8, n: usize) -> Self {
        GenIndex {
            row: letter / n as u8 + 1,
            col: letter % n as u8 + 1,
            n: n as u8,
        }
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Flat letter `n*(row-1) + (col-1)`.
    pub fn flat(self) -> u8 {
        (self.row - 1) * self.n + (self.col - 1)
    }

    /// Distance from the diagonal, `|i - j|`.
    pub fn epsilon(self) -> usize {
        self.row.abs_diff(self.col) as usize
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// Lexicographic order on generators of the same algebra.
pub fn lex_compare(a: GenIndex, b: GenIndex) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    let key = |g: GenIndex| g.n() * g.row() + g.col();
    Ok(key(a).cmp(&key(b)))
}

/// A word in the generators, stored as flat letters. The empty word is the
/// unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn from_gens(gens: &[GenIndex]) -> Self {
        Word(gens.iter().map(|g| g.flat()).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: u8) {
        self.0.push(letter);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Non-decreasing letters.
    pub fn is_standard(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Number of pairs `k < l` with `letter[k] > letter[l]`.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for (k, a) in self.0.iter().enumerate() {
            count += self.0[k + 1..].iter().filter(|b| a > b).count();
        }
        count
    }

    /// Indices `r` (0-based, pointing at the right letter) with
    /// `letter[r] < letter[r-1]`.
    pub fn descent_positions(&self) -> Vec<usize> {
        (1..self.0.len()).filter(|&r| self.0[r] < self.0[r - 1]).collect()
    }

    /// Exponent of every generator, indexed by flat letter.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n * n];
        for &l in self.0.iter() {
            e[l as usize] += 1;
        }
        e
    }

    /// The standard word with the given exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Word {
        let mut w = Word::unit();
        for (l, &k) in exps.iter().enumerate() {
            for _ in 0..k {
                w.push(l as u8);
            }
        }
        w
    }

    pub fn gens(&self, n: usize) -> impl Iterator<Item = GenIndex> + '_ {
        self.0.iter().map(move |&l| GenIndex::from_flat(l, n))
    }

    /// Sum of `w(letter)` over the letters.
    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0.iter().map(|&l| weights[l as usize]).sum()
    }
}

/// A finite linear combination of words with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPolynomial {
    n: usize,
    terms: BTreeMap<Word, LaurentScalar>,
}

impl NCPolynomial {
    pub fn zero(n: usize) -> Self {
        NCPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, LaurentScalar::one())
    }

    pub fn scalar(n: usize, c: LaurentScalar) -> Self {
        Self::term(n, Word::unit(), c)
    }

    pub fn term(n: usize, w: Word, c: LaurentScalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(w, c);
        p
    }

    pub fn word(n: usize, w: Word) -> Self {
        Self::term(n, w, LaurentScalar::one())
    }

    pub fn generator(g: GenIndex) -> Self {
        Self::word(g.n(), Word::from_gens(&[g]))
    }

    /// `x[i,j]`, panicking on out-of-range indices.
    pub fn x(n: usize, i: usize, j: usize) -> Self {
        Self::generator(GenIndex::new(i, j, n).expect("generator index in range"))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, LaurentScalar)>>(n: usize, terms: I) -> Self {
        let mut p = Self::zero(n);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &LaurentScalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, LaurentScalar)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> LaurentScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The coefficient of the unit word when the polynomial is a pure
    /// scalar.
    pub fn as_scalar(&self) -> Option<LaurentScalar> {
        match self.terms.len() {
            0 => Some(LaurentScalar::zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &NCPolynomial, c: &LaurentScalar) {
        self.check_size(other);
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> NCPolynomial {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        NCPolynomial {
            n: self.n,
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Product in the free algebra (concatenation of words).
    pub fn free_mul(&self, other: &NCPolynomial) -> NCPolynomial {
        self.check_size(other);
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }

    /// True when every word is standard (normal form for any mutation
    /// system on the grid).
    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(Word::is_standard)
    }

    /// Maximum inversion count over the words.
    pub fn descent_count(&self) -> Result<usize> {
        self.terms
            .keys()
            .map(Word::inversions)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filter_terms<F: Fn(&Word) -> bool>(&self, keep: F) -> NCPolynomial {
        NCPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<F: Fn(&LaurentScalar) -> LaurentScalar>(&self, f: F) -> NCPolynomial {
        Self::from_terms(self.n, self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Total degree of the longest word.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub(crate) fn check_size(&self, other: &NCPolynomial) {
        assert_eq!(self.n, other.n, "polynomials over different grids");
    }
}

/// Free-function form of [`NCPolynomial::descent_count`].
pub fn descent_count(p: &NCPolynomial) -> Result<usize> {
    p.descent_count()
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentScalar::one());
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-LaurentScalar::one());
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&-LaurentScalar::one())
    }
}

/// Free-algebra product; use a mutation system to multiply in a quotient.
impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.free_mul(rhs)
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: usize, j: usize, n: usize) -> GenIndex {
        GenIndex::new(i, j, n).unwrap()
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(g(1, 3, 3), g(2, 1, 3)).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(g(2, 2, 3), g(2, 2, 3)).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(g(1, 2, 2), g(2, 1, 2)).unwrap(), Ordering::Less);
        assert!(lex_compare(g(1, 1, 2), g(1, 1, 3)).is_err());
    }

    #[test]
    fn lex_matches_flattening() {
        for n in 1..=6 {
            for a in 0..(n * n) as u8 {
                for b in 0..(n * n) as u8 {
                    let (ga, gb) = (GenIndex::from_flat(a, n), GenIndex::from_flat(b, n));
                    let ka = n * ga.row() + ga.col();
                    let kb = n * gb.row() + gb.col();
                    assert_eq!(lex_compare(ga, gb).unwrap(), ka.cmp(&kb));
                    assert_eq!(a.cmp(&b), ka.cmp(&kb));
                }
            }
        }
    }

    #[test]
    fn epsilon_range() {
        assert_eq!(g(1, 3, 3).epsilon(), 2);
        assert_eq!(g(2, 2, 3).epsilon(), 0);
        assert!(GenIndex::new(0, 1, 2).is_err());
        assert!(GenIndex::new(1, 3, 2).is_err());
    }

    #[test]
    fn descent_examples() {
        let n = 2;
        let w = |gs: &[(usize, usize)]| {
            Word::from_gens(&gs.iter().map(|&(i, j)| g(i, j, n)).collect::<Vec<_>>())
        };
        let p = NCPolynomial::word(n, w(&[(2, 2), (1, 1)]));
        assert_eq!(descent_count(&p).unwrap(), 1);
        let p = NCPolynomial::word(n, w(&[(1, 1), (1, 2), (2, 2)]));
        assert_eq!(descent_count(&p).unwrap(), 0);
        // Hand count: x22 x11 x12 inverts positions (1,2) and (1,3).
        let p = &NCPolynomial::word(n, w(&[(2, 2), (1, 1), (1, 2)]))
            + &NCPolynomial::word(n, w(&[(1, 1), (2, 2)]));
        assert_eq!(descent_count(&p).unwrap(), 2);
        assert!(matches!(
            descent_count(&NCPolynomial::zero(2)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn descent_invariant_under_scaling() {
        let p = parse_expr("x[2,2]*x[1,1] + 3*x[2,1]*x[1,2]*x[1,1]", 2).unwrap();
        let c = LaurentScalar::q_pow(-3);
        assert_eq!(p.descent_count(), p.scale(&c).descent_count());
    }

    #[test]
    fn exponent_round_trip() {
        let w = Word::from_letters(&[0, 0, 2, 3, 3, 3]);
        assert_eq!(Word::from_exponents(&w.exponents(2)), w);
    }
}
