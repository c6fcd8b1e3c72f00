//! Quantum minors and the invariant families `Delta_d`, `Delta'_d`,
//! `Delta_d^(t)`.
//!
//! A minor on rows `r_1 < ... < r_d` and columns `c_1 < ... < c_d` is
//! `sum_w (-q)^{l(w)} x[r_1, c_w(1)] ... x[r_d, c_w(d)]`. Rows ascend, so
//! every word is already standard.

use rayon::prelude::*;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::freealg::{GenIndex, NCPolynomial, Word, MAX_N};

/// A principal minor: rows and columns both equal to `rows_cols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    n: usize,
    rows_cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(n: usize, rows_cols: Vec<usize>) -> Result<Self> {
        check_subset(n, &rows_cols)?;
        Ok(MinorSpec { n, rows_cols })
    }

    pub fn full(n: usize) -> Result<Self> {
        MinorSpec::new(n, (1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows_cols(&self) -> &[usize] {
        &self.rows_cols
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
        });
    }
    Ok(())
}

fn check_subset(n: usize, set: &[usize]) -> Result<()> {
    check_n(n)?;
    if set.is_empty() {
        return Err(Error::Invalid("empty index set".into()));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    for &i in set {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { row: i, col: i, n });
        }
    }
    Ok(())
}

/// Permutations of `0..d` in lex order, with their inversion counts.
fn permutations(d: usize) -> Vec<(Vec<usize>, usize)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, usize)>) {
        if cur.len() == used.len() {
            let inv = (0..cur.len())
                .flat_map(|a| (a + 1..cur.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| cur[a] > cur[b])
                .count();
            out.push((cur.clone(), inv));
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// `sum_w (-q)^{l(w)} x[r_1, c_w(1)] ... x[r_d, c_w(d)]` over permutations
/// accepted by `keep(row, col)` at every position.
fn minor_filtered<F>(n: usize, rows: &[usize], cols: &[usize], keep: F) -> NCPolynomial
where
    F: Fn(usize, usize) -> bool,
{
    let mut out = NCPolynomial::zero(n);
    for (perm, inv) in permutations(rows.len()) {
        if !rows.iter().zip(&perm).all(|(&r, &k)| keep(r, cols[k])) {
            continue;
        }
        let gens: Vec<GenIndex> = rows
            .iter()
            .zip(&perm)
            .map(|(&r, &k)| GenIndex::new(r, cols[k], n).unwrap())
            .collect();
        out.add_term(Word::from_gens(&gens), LaurentScalar::neg_q_pow(inv as i32));
    }
    out
}

/// The quantum minor with the given row and column sets.
pub fn qminor(n: usize, rows: &[usize], cols: &[usize]) -> Result<NCPolynomial> {
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(rows.len(), cols.len()));
    }
    if rows.is_empty() {
        check_n(n)?;
        return Ok(NCPolynomial::one(n));
    }
    check_subset(n, rows)?;
    check_subset(n, cols)?;
    Ok(minor_filtered(n, rows, cols, |_, _| true))
}

pub fn qdet_principal(spec: &MinorSpec) -> NCPolynomial {
    minor_filtered(spec.n, &spec.rows_cols, &spec.rows_cols, |_, _| true)
}

/// `det_q` of the full `n x n` matrix.
pub fn qdet(n: usize) -> Result<NCPolynomial> {
    Ok(qdet_principal(&MinorSpec::full(n)?))
}

/// The `d`-subsets of `1..=n` in lex order.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(from: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in from..=n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, d, &mut Vec::new(), &mut out);
    out
}

fn check_d(n: usize, d: usize) -> Result<()> {
    check_n(n)?;
    if d == 0 || d > n {
        return Err(Error::OutOfRange {
            what: "d",
            value: d as i64,
        });
    }
    Ok(())
}

fn sum_over_subsets<F>(n: usize, d: usize, term: F) -> NCPolynomial
where
    F: Fn(&[usize]) -> NCPolynomial + Sync,
{
    subsets(n, d)
        .par_iter()
        .map(|set| term(set))
        .reduce(|| NCPolynomial::zero(n), |a, b| &a + &b)
}

/// `Delta_d`: the sum of all principal `d x d` quantum minors.
pub fn delta_d(n: usize, d: usize) -> Result<NCPolynomial> {
    check_d(n, d)?;
    Ok(sum_over_subsets(n, d, |set| {
        minor_filtered(n, set, set, |_, _| true)
    }))
}

/// `Delta'_d`: each minor on `I` scaled by `q^{-2 sum I}`.
pub fn delta_d_prime(n: usize, d: usize) -> Result<NCPolynomial> {
    check_d(n, d)?;
    Ok(sum_over_subsets(n, d, |set| {
        let shift = -2 * set.iter().sum::<usize>() as i32;
        minor_filtered(n, set, set, |_, _| true).scale(&LaurentScalar::q_pow(shift))
    }))
}

/// `Delta_d^(t)`: only permutations moving each index by at most `n - t`.
pub fn delta_d_t(n: usize, d: usize, t: usize) -> Result<NCPolynomial> {
    check_d(n, d)?;
    if t == 0 || t > n {
        return Err(Error::StageOutOfRange { n, t });
    }
    let reach = n - t;
    Ok(sum_over_subsets(n, d, |set| {
        minor_filtered(n, set, set, |r, c| r.abs_diff(c) <= reach)
    }))
}

/// `Delta_1, ..., Delta_n`.
pub fn deltas(n: usize) -> Result<Vec<NCPolynomial>> {
    (1..=n).map(|d| delta_d(n, d)).collect()
}
