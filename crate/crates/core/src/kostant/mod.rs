//! Freeness of `A = O(M_q(n))` over the invariant subalgebra
//! `I = Q(q)[Delta_1, ..., Delta_n]`.
//!
//! The certifier forms every product `Delta^a * b` with `b` in the candidate
//! basis, expands it in the PBW basis of degree `d` and checks that the
//! resulting square matrix has full rank. Relations and the `Delta_d` are
//! homogeneous for the weight `wt(x_ij) = e_i - e_j`, so the matrix splits
//! into blocks by weight and each block is eliminated on its own.

mod invariants;
pub mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::freealg::{NCPolynomial, Word, MAX_N};
use crate::mutation::{quantum_matrices, standard_monomials, MutationSystem};
use crate::qminors::deltas;

pub use invariants::{
    classical_oracle_check, evaluate_at_matrix, principal_minor_sums, ClassicalReport,
    IndependenceRecord, InvariantRingReport, invariant_ring_check,
};
use linalg::{rank_laurent, rank_mod, rank_rational, ratio, ModEvaluator};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertProfile {
    pub n: usize,
    #[serde(rename = "dims_A")]
    pub dims_a: Vec<u64>,
    #[serde(rename = "dims_I")]
    pub dims_i: Vec<u64>,
    #[serde(rename = "dims_H")]
    pub dims_h: Vec<u64>,
}

impl HilbertProfile {
    /// `sum_e dims_H(e) dims_I(d - e)`.
    pub fn convolution(&self, d: usize) -> u64 {
        (0..=d).map(|e| self.dims_h[e] * self.dims_i[d - e]).sum()
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

fn to_u64(v: i128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::OutOfRange {
        what: "max_degree",
        value: -1,
    })
}

/// Graded dimensions of `A`, of `I` and of the quotient `H` with
/// `H (x) I = A`, up to `max_degree`.
pub fn hilbert_dims(n: usize, max_degree: usize) -> Result<HilbertProfile> {
    check_n(n)?;
    let len = max_degree + 1;
    let m = (n * n) as i128;

    let mut dims_a = Vec::with_capacity(len);
    let mut c: i128 = 1;
    for d in 0..len as i128 {
        if d > 0 {
            c = c
                .checked_mul(d + m - 1)
                .ok_or(Error::OutOfRange {
                    what: "max_degree",
                    value: max_degree as i64,
                })?
                / d;
        }
        dims_a.push(to_u64(c)?);
    }

    let mut inv = vec![0i128; len];
    inv[0] = 1;
    for k in 1..=n {
        for d in k..len {
            inv[d] += inv[d - k];
        }
    }

    let mut h = vec![0i128; len];
    h[0] = 1;
    for k in 1..=n {
        for d in (k..len).rev() {
            h[d] -= h[d - k];
        }
    }
    for _ in 0..n * n {
        for d in 1..len {
            h[d] = h[d].checked_add(h[d - 1]).ok_or(Error::OutOfRange {
                what: "max_degree",
                value: max_degree as i64,
            })?;
        }
    }

    Ok(HilbertProfile {
        n,
        dims_a,
        dims_i: inv.into_iter().map(to_u64).collect::<Result<_>>()?,
        dims_h: h.into_iter().map(to_u64).collect::<Result<_>>()?,
    })
}

/// Standard words of degree `d` with `a_ii < i` on the diagonal.
pub fn candidate_basis(n: usize, d: usize) -> Vec<Word> {
    candidate_basis_with_slack(n, d, 0)
}

/// Standard words of degree `d` with `a_ii <= i - 1 + slack`.
pub fn candidate_basis_with_slack(n: usize, d: usize, slack: i32) -> Vec<Word> {
    standard_monomials(n, d)
        .into_iter()
        .filter(|w| {
            let e = w.exponents(n);
            (0..n).all(|i| e[i * n + i] as i64 <= i as i64 + slack as i64)
        })
        .collect()
}

/// Exponent vectors `(a_1, ..., a_n)` with `sum k a_k = e`, in lex order.
pub fn delta_exponents(n: usize, e: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k > n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in 0..=left / k {
            cur.push(a as u32);
            rec(k + 1, n, left - a * k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, e, &mut Vec::new(), &mut out);
    out
}

/// `Delta_1^a_1 ... Delta_n^a_n` in normal form, memoized over the exponent
/// vectors seen so far.
pub(crate) struct DeltaMonomials {
    n: usize,
    sys: std::sync::Arc<MutationSystem>,
    deltas: Vec<NCPolynomial>,
    memo: HashMap<Vec<u32>, NCPolynomial>,
}

impl DeltaMonomials {
    pub(crate) fn new(n: usize) -> Result<Self> {
        let mut memo = HashMap::new();
        memo.insert(vec![0; n], NCPolynomial::one(n));
        Ok(DeltaMonomials {
            n,
            sys: quantum_matrices(n)?,
            deltas: deltas(n)?,
            memo,
        })
    }

    pub(crate) fn get(&mut self, a: &[u32]) -> NCPolynomial {
        if let Some(p) = self.memo.get(a) {
            return p.clone();
        }
        let k = a.iter().position(|&x| x > 0).unwrap();
        let mut rest = a.to_vec();
        rest[k] -= 1;
        let tail = self.get(&rest);
        let p = self.sys.multiply(&self.deltas[k], &tail);
        self.memo.insert(a.to_vec(), p.clone());
        p
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }
}

/// `sum_e |B_e| dims_I(d - e)` against `dims_A(d)` for `d <= max_degree`,
/// as `(d, lhs, dims_A(d))`.
pub fn count_identity(n: usize, max_degree: usize) -> Result<Vec<(usize, u64, u64)>> {
    let h = hilbert_dims(n, max_degree)?;
    let counts: Vec<u64> = (0..=max_degree)
        .map(|e| candidate_basis(n, e).len() as u64)
        .collect();
    Ok((0..=max_degree)
        .map(|d| {
            let lhs = (0..=d).map(|e| counts[e] * h.dims_i[d - e]).sum();
            (d, lhs, h.dims_a[d])
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            other => Err(Error::Invalid(format!("unknown mode '{other}'"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        })
    }
}

/// Which side the invariants act from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `Delta^a * b`
    Left,
    /// `b * Delta^a`
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub n: usize,
    pub max_degree: usize,
    pub mode: Mode,
    pub samples: usize,
    pub side: Side,
    pub seed: u64,
    /// Diagonal bound `a_ii <= i - 1 + slack`; 0 is the candidate basis.
    pub slack: i32,
}

impl CertifyConfig {
    pub fn new(n: usize, max_degree: usize, mode: Mode) -> Self {
        CertifyConfig {
            n,
            max_degree,
            mode,
            samples: 3,
            side: Side::Left,
            seed: DEFAULT_SEED,
            slack: 0,
        }
    }

    /// Exact for `n <= 2`, sampled above.
    pub fn default_mode(n: usize) -> Mode {
        if n <= 2 {
            Mode::Exact
        } else {
            Mode::Sampled
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub d: usize,
    #[serde(rename = "dim_A")]
    pub dim_a: u64,
    pub candidate_count: u64,
    pub rank: u64,
    pub pass: bool,
    /// Rank at each sample point (sampled mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_ranks: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    pub n: usize,
    pub max_degree: usize,
    pub mode: Mode,
    pub side: Side,
    pub degrees: Vec<DegreeRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_stable: Option<bool>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl FreenessCertificate {
    /// First degree that failed.
    pub fn first_failure(&self) -> Option<usize> {
        self.degrees.iter().find(|r| !r.pass).map(|r| r.d)
    }
}

fn weight_key(w: &Word, n: usize) -> Vec<i32> {
    let mut k = vec![0; n];
    for g in w.gens(n) {
        k[g.row() - 1] += 1;
        k[g.col() - 1] -= 1;
    }
    k
}

/// Random rationals `p/r`, `2 <= p, r <= 97`, `p != r`, pairwise distinct.
pub fn sample_points(count: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<BigRational> = Vec::with_capacity(count);
    while out.len() < count {
        let p: i64 = rng.random_range(2..=97);
        let r: i64 = rng.random_range(2..=97);
        if p == r {
            continue;
        }
        let q0 = ratio(p, r);
        debug_assert!(linalg::is_positive_non_one(&q0));
        if !out.contains(&q0) {
            out.push(q0);
        }
    }
    out
}

struct Block {
    cols: HashMap<Word, usize>,
    rows: Vec<NCPolynomial>,
}

impl Block {
    fn laurent_rows(&self) -> Vec<Vec<LaurentScalar>> {
        self.rows
            .iter()
            .map(|p| {
                let mut row = vec![LaurentScalar::zero(); self.cols.len()];
                for (w, c) in p.terms() {
                    row[self.cols[w]] = c.clone();
                }
                row
            })
            .collect()
    }

    fn rank_exact(&self) -> usize {
        rank_laurent(self.laurent_rows())
    }

    /// Rank of the specialization at `q0`; elimination modulo a prime first,
    /// exact rationals when that does not already give full rank.
    fn rank_at(&self, q0: &BigRational) -> usize {
        let full = self.rows.len().min(self.cols.len());
        if let Some(ev) = ModEvaluator::new(q0) {
            let rows: Option<Vec<Vec<u64>>> = self
                .rows
                .iter()
                .map(|p| {
                    let mut row = vec![0u64; self.cols.len()];
                    for (w, c) in p.terms() {
                        row[self.cols[w]] = ev.eval(c)?;
                    }
                    Some(row)
                })
                .collect();
            if let Some(rows) = rows {
                if rank_mod(rows) == full {
                    return full;
                }
            }
        }
        let rows: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|p| {
                let mut row = vec![BigRational::from_integer(0.into()); self.cols.len()];
                for (w, c) in p.terms() {
                    row[self.cols[w]] = c.evaluate_at(q0).expect("q0 is nonzero");
                }
                row
            })
            .collect();
        rank_rational(rows)
    }
}

/// [`certify_freeness_with`] with the left action, default seed and the
/// strict diagonal bound.
pub fn certify_freeness(
    n: usize,
    max_degree: usize,
    mode: Mode,
    samples: usize,
) -> Result<FreenessCertificate> {
    let mut cfg = CertifyConfig::new(n, max_degree, mode);
    cfg.samples = samples;
    certify_freeness_with(&cfg)
}

pub fn certify_freeness_with(cfg: &CertifyConfig) -> Result<FreenessCertificate> {
    let n = cfg.n;
    check_n(n)?;
    if cfg.max_degree < 1 {
        return Err(Error::OutOfRange {
            what: "max_degree",
            value: cfg.max_degree as i64,
        });
    }
    if cfg.mode == Mode::Sampled && cfg.samples < 1 {
        return Err(Error::OutOfRange {
            what: "samples",
            value: cfg.samples as i64,
        });
    }
    let hilbert = hilbert_dims(n, cfg.max_degree)?;
    let sys = quantum_matrices(n)?;
    let mut dm = DeltaMonomials::new(n)?;
    let points = match cfg.mode {
        Mode::Exact => Vec::new(),
        Mode::Sampled => sample_points(cfg.samples, cfg.seed),
    };
    let bases: Vec<Vec<Word>> = (0..=cfg.max_degree)
        .map(|d| candidate_basis_with_slack(n, d, cfg.slack))
        .collect();

    let mut degrees = Vec::new();
    let mut stable = true;
    for d in 0..=cfg.max_degree {
        let mut pairs: Vec<(NCPolynomial, &Word)> = Vec::new();
        for e in 0..=d {
            for a in delta_exponents(n, e) {
                let m = dm.get(&a);
                for b in &bases[d - e] {
                    pairs.push((m.clone(), b));
                }
            }
        }
        let candidate_count = pairs.len() as u64;
        let products: Vec<NCPolynomial> = pairs
            .par_iter()
            .map(|(m, b)| {
                let b = NCPolynomial::word(n, (*b).clone());
                match cfg.side {
                    Side::Left => sys.multiply(m, &b),
                    Side::Right => sys.multiply(&b, m),
                }
            })
            .collect();

        let mut blocks: BTreeMap<Vec<i32>, Block> = BTreeMap::new();
        for w in standard_monomials(n, d) {
            let block = blocks.entry(weight_key(&w, n)).or_insert_with(|| Block {
                cols: HashMap::new(),
                rows: Vec::new(),
            });
            let idx = block.cols.len();
            block.cols.insert(w, idx);
        }
        for ((_, b), p) in pairs.iter().zip(products) {
            if p.is_zero() {
                continue;
            }
            blocks
                .get_mut(&weight_key(b, n))
                .expect("every weight of degree d has a PBW word")
                .rows
                .push(p);
        }
        let blocks: Vec<Block> = blocks.into_values().collect();

        let (rank, sample_ranks) = match cfg.mode {
            Mode::Exact => {
                let r: usize = blocks.par_iter().map(Block::rank_exact).sum();
                (r as u64, None)
            }
            Mode::Sampled => {
                let ranks: Vec<u64> = points
                    .iter()
                    .map(|q0| blocks.par_iter().map(|b| b.rank_at(q0)).sum::<usize>() as u64)
                    .collect();
                if ranks.windows(2).any(|w| w[0] != w[1]) {
                    stable = false;
                }
                (*ranks.iter().max().unwrap(), Some(ranks))
            }
        };
        let dim_a = hilbert.dims_a[d];
        degrees.push(DegreeRecord {
            d,
            dim_a,
            candidate_count,
            rank,
            pass: candidate_count == dim_a && rank == dim_a,
            sample_ranks,
        });
    }
    let verdict = Verdict::from_bool(degrees.iter().all(|r| r.pass));
    let sampled = cfg.mode == Mode::Sampled;
    Ok(FreenessCertificate {
        n,
        max_degree: cfg.max_degree,
        mode: cfg.mode,
        side: cfg.side,
        degrees,
        sampled_points: sampled.then(|| points.iter().map(|q| q.to_string()).collect()),
        rank_stable: sampled.then_some(stable),
        verdict,
        elapsed_ms: None,
    })
}

#[cfg(test)]
mod tests;
