//! Structure of the invariant ring and the classical `q = 1` oracle.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::linalg::rank_laurent;
use super::{check_n, delta_exponents, hilbert_dims, DeltaMonomials};
use crate::coeff::LaurentScalar;
use crate::error::Result;
use crate::freealg::{format_expr, NCPolynomial, Word};
use crate::hopf::{is_invariant, Variant};
use crate::mutation::quantum_matrices;
use crate::qminors::{delta_d, deltas};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceRecord {
    pub d: usize,
    #[serde(rename = "dims_I")]
    pub expected: u64,
    pub monomials: u64,
    pub rank: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRingReport {
    pub n: usize,
    pub max_degree: usize,
    /// Pairs `(d, e)` with `Delta_d Delta_e != Delta_e Delta_d`.
    pub non_commuting: Vec<(usize, usize)>,
    pub independence: Vec<IndependenceRecord>,
    /// `is_invariant(Delta_d, alpha)` for `d = 1..=n`.
    pub invariant: Vec<bool>,
    pub pass: bool,
}

/// Commutation of the `Delta_d`, independence of the monomials in them up
/// to `max_degree` and their `alpha`-invariance.
pub fn invariant_ring_check(n: usize, max_degree: usize) -> Result<InvariantRingReport> {
    check_n(n)?;
    let sys = quantum_matrices(n)?;
    let ds = deltas(n)?;
    let mut non_commuting = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if sys.multiply(&ds[a], &ds[b]) != sys.multiply(&ds[b], &ds[a]) {
                non_commuting.push((a + 1, b + 1));
            }
        }
    }

    let hilbert = hilbert_dims(n, max_degree)?;
    let mut dm = DeltaMonomials::new(n)?;
    let mut independence = Vec::new();
    for d in 0..=max_degree {
        let polys: Vec<NCPolynomial> = delta_exponents(dm.n(), d)
            .iter()
            .map(|a| dm.get(a))
            .collect();
        let cols: BTreeSet<&Word> = polys.iter().flat_map(|p| p.words()).collect();
        let index: HashMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let rows: Vec<Vec<LaurentScalar>> = polys
            .iter()
            .map(|p| {
                let mut row = vec![LaurentScalar::zero(); index.len()];
                for (w, c) in p.terms() {
                    row[index[w]] = c.clone();
                }
                row
            })
            .collect();
        let rank = rank_laurent(rows) as u64;
        let expected = hilbert.dims_i[d];
        independence.push(IndependenceRecord {
            d,
            expected,
            monomials: polys.len() as u64,
            rank,
            pass: rank == expected && polys.len() as u64 == expected,
        });
    }

    let invariant = ds
        .iter()
        .map(|p| is_invariant(p, Variant::Alpha))
        .collect::<Result<Vec<bool>>>()?;

    let pass = non_commuting.is_empty()
        && independence.iter().all(|r| r.pass)
        && invariant.iter().all(|&b| b);
    Ok(InvariantRingReport {
        n,
        max_degree,
        non_commuting,
        independence,
        invariant,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalReport {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub pairs: usize,
    /// Matrices on which some `Delta_d(1)` disagrees with the oracle.
    pub delta_failures: Vec<String>,
    /// Word pairs `(a, b)` with `ab != ba` at `q = 1`.
    pub commutativity_failures: Vec<String>,
    pub pass: bool,
}

/// `p` at `q = 1`, evaluated on an integer matrix.
pub fn evaluate_at_matrix(p: &NCPolynomial, m: &[Vec<i64>]) -> BigRational {
    let n = p.n();
    let one = BigRational::one();
    let mut acc = BigRational::zero();
    for (w, c) in p.terms() {
        let mut t = c.evaluate_at(&one).expect("q = 1 is nonzero");
        for g in w.gens(n) {
            t *= BigRational::from_integer(m[g.row() - 1][g.col() - 1].into());
        }
        acc += t;
    }
    acc
}

/// Sums of principal `d x d` minors of `m` for `d = 0..=n`, read off the
/// characteristic polynomial computed by Faddeev-LeVerrier.
pub fn principal_minor_sums(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let matmul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| {
        let mut z = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    z[i][j] += &x[i][k] * &y[k][j];
                }
            }
        }
        z
    };
    // det(tI - A) = sum_k c[k] t^k
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = matmul(&a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    (0..=n)
        .map(|d| if d % 2 == 0 { c[n - d].clone() } else { -c[n - d].clone() })
        .collect()
}

fn at_one(p: &NCPolynomial) -> BTreeMap<Word, BigRational> {
    let one = BigRational::one();
    p.terms()
        .map(|(w, c)| (w.clone(), c.evaluate_at(&one).unwrap()))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len.max(1));
    let letters: Vec<u8> = (0..len).map(|_| rng.random_range(0..(n * n) as u8)).collect();
    Word::from_letters(&letters)
}

/// At `q = 1`: `Delta_d` on `trials` random integer matrices against the
/// characteristic polynomial, and `ab = ba` on `pairs` random words of
/// length at most `max_degree`.
pub fn classical_oracle_check(
    n: usize,
    max_degree: usize,
    trials: usize,
    pairs: usize,
    seed: u64,
) -> Result<ClassicalReport> {
    check_n(n)?;
    let sys = quantum_matrices(n)?;
    let ds: Vec<NCPolynomial> = (1..=n).map(|d| delta_d(n, d)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut delta_failures = Vec::new();
    for _ in 0..trials {
        let m: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-9..=9)).collect())
            .collect();
        let oracle = principal_minor_sums(&m);
        let ok = ds
            .iter()
            .enumerate()
            .all(|(k, p)| evaluate_at_matrix(p, &m) == oracle[k + 1]);
        if !ok {
            delta_failures.push(format!("{m:?}"));
        }
    }

    let mut commutativity_failures = Vec::new();
    for _ in 0..pairs {
        let a = NCPolynomial::word(n, random_word(&mut rng, n, max_degree));
        let b = NCPolynomial::word(n, random_word(&mut rng, n, max_degree));
        if at_one(&sys.multiply(&a, &b)) != at_one(&sys.multiply(&b, &a)) {
            commutativity_failures.push(format!("({}, {})", format_expr(&a), format_expr(&b)));
        }
    }

    let pass = delta_failures.is_empty() && commutativity_failures.is_empty();
    Ok(ClassicalReport {
        n,
        seed,
        trials,
        pairs,
        delta_failures,
        commutativity_failures,
        pass,
    })
}
