//! Rank computations: fraction-free elimination over `Q[q, q^-1]`,
//! Gaussian elimination over `Q`, and elimination modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::LaurentScalar;

/// Rank over `Q(q)` by Bareiss elimination. Every intermediate entry is a
/// minor of the input, so the divisions by the previous pivot are exact in
/// `Q[q, q^-1]`.
pub fn rank_laurent(mut rows: Vec<Vec<LaurentScalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = LaurentScalar::one();
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| {
                let e = &rows[r][col];
                (e.len(), e.max_exp().unwrap() - e.min_exp().unwrap())
            });
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..ncols {
                let num = &(&row[c] * pv) - &(&factor * &prow[c]);
                row[c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[col] = LaurentScalar::zero();
        }
        prev = pv.clone();
        rank += 1;
    }
    rank
}

/// Rank over `Q` by Gaussian elimination with exact fractions.
pub fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let inv = prow[col].recip();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for c in col..ncols {
                let t = &f * &prow[c];
                row[c] -= t;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `2^61 - 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> Option<u64> {
    (!a.is_multiple_of(PRIME)).then(|| pow_mod(a, PRIME - 2))
}

fn int_mod(x: &BigInt) -> u64 {
    let r = x.mod_floor(&BigInt::from(PRIME));
    r.to_u64().unwrap()
}

/// Reduction of a rational modulo [`PRIME`]; `None` if the denominator
/// vanishes there.
pub fn rational_mod(x: &BigRational) -> Option<u64> {
    let d = inv_mod(int_mod(x.denom()))?;
    Some(mul_mod(int_mod(x.numer()), d))
}

/// Evaluates Laurent polynomials at a fixed `q0` modulo [`PRIME`].
pub struct ModEvaluator {
    q: u64,
    q_inv: u64,
}

impl ModEvaluator {
    pub fn new(q0: &BigRational) -> Option<Self> {
        let q = rational_mod(q0)?;
        let q_inv = inv_mod(q)?;
        Some(ModEvaluator { q, q_inv })
    }

    pub fn eval(&self, a: &LaurentScalar) -> Option<u64> {
        let mut acc = 0u64;
        for (e, c) in a.terms() {
            let base = if *e >= 0 { self.q } else { self.q_inv };
            let t = mul_mod(rational_mod(c)?, pow_mod(base, e.unsigned_abs() as u64));
            acc = (acc + t) % PRIME;
        }
        Some(acc)
    }
}

/// Rank over `Z / PRIME`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        let inv = inv_mod(prow[col]).unwrap();
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv);
            for c in col..ncols {
                let t = mul_mod(f, prow[c]);
                row[c] = (row[c] + PRIME - t) % PRIME;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `p / r` as a rational.
pub fn ratio(p: i64, r: i64) -> BigRational {
    BigRational::new(p.into(), r.into())
}

pub(crate) fn is_positive_non_one(q0: &BigRational) -> bool {
    q0.is_positive() && !q0.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(text: &str) -> LaurentScalar {
        text.parse().unwrap()
    }

    #[test]
    fn laurent_rank() {
        let m = vec![
            vec![l("q"), l("1")],
            vec![l("q^2"), l("q")],
        ];
        assert_eq!(rank_laurent(m), 1);
        let m = vec![
            vec![l("q"), l("1"), l("0")],
            vec![l("1"), l("q"), l("1")],
            vec![l("0"), l("1"), l("q")],
        ];
        assert_eq!(rank_laurent(m), 3);
        // determinant q * q^-1 - 1 = 0
        let m = vec![vec![l("q"), l("1")], vec![l("1"), l("q^-1")]];
        assert_eq!(rank_laurent(m), 1);
    }

    #[test]
    fn rational_and_modular_rank_agree() {
        let m = vec![
            vec![ratio(1, 2), ratio(3, 1), ratio(0, 1)],
            vec![ratio(1, 1), ratio(6, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 3), ratio(5, 7)],
        ];
        let modp: Vec<Vec<u64>> = m
            .iter()
            .map(|r| r.iter().map(|x| rational_mod(x).unwrap()).collect())
            .collect();
        assert_eq!(rank_rational(m), 2);
        assert_eq!(rank_mod(modp), 2);
    }

    #[test]
    fn evaluation_mod_p() {
        let e = ModEvaluator::new(&ratio(3, 2)).unwrap();
        let a = l("q^2 - 4*q^-1");
        let exact = a.evaluate_at(&ratio(3, 2)).unwrap();
        assert_eq!(e.eval(&a), rational_mod(&exact));
    }
}
