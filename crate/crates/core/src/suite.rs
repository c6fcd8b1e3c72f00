//! Seeded randomized checks of the rewriting engine: associativity,
//! independence of the normal form from the mutation strategy, and
//! multiplicativity of the symbol map.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::LaurentScalar;
use crate::error::Result;
use crate::filtration::{symbol, symbol_system, weighting_wt};
use crate::freealg::{format_expr, NCPolynomial, Word};
use crate::mutation::{quantum_matrices, MutationSystem, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub trials: usize,
    /// Inputs that violate the property, as parseable expressions.
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub properties: Vec<PropertyResult>,
    pub pass: bool,
}

/// Keeps failure lists short; the first few reproducers are enough.
const MAX_REPORTED: usize = 5;

fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len);
    let letters: Vec<u8> = (0..len).map(|_| rng.random_range(0..(n * n) as u8)).collect();
    Word::from_letters(&letters)
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> NCPolynomial {
    let mut p = NCPolynomial::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        let mut c: i64 = rng.random_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        let e: i32 = rng.random_range(-1..=1);
        let coeff = LaurentScalar::from_int(c).shift(e);
        p.add_term(random_word(rng, n, max_len), coeff);
    }
    if p.is_zero() {
        p = NCPolynomial::one(n);
    }
    p
}

fn record(failures: &mut Vec<String>, text: String) {
    if failures.len() < MAX_REPORTED {
        failures.push(text);
    }
}

/// Runs every property `trials` times on `O(M_q(n))` with the given seed.
pub fn seeded_random_suite(n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    let sys = quantum_matrices(n)?;
    Ok(run_suite(&sys, trials, seed))
}

/// The same suite against an arbitrary system; used to check that a broken
/// relation table is caught.
#[doc(hidden)]
pub fn seeded_random_suite_on(sys: &MutationSystem, trials: usize, seed: u64) -> SuiteReport {
    run_suite(sys, trials, seed)
}

fn run_suite(sys: &MutationSystem, trials: usize, seed: u64) -> SuiteReport {
    let n = sys.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut properties = Vec::new();

    let mut failures = Vec::new();
    for _ in 0..trials {
        let a = random_poly(&mut rng, n, 3);
        let b = random_poly(&mut rng, n, 3);
        let c = random_poly(&mut rng, n, 3);
        let left = sys.multiply(&sys.multiply(&a, &b), &c);
        let right = sys.multiply(&a, &sys.multiply(&b, &c));
        if left != right {
            record(
                &mut failures,
                format!("a = {}; b = {}; c = {}", format_expr(&a), format_expr(&b), format_expr(&c)),
            );
        }
    }
    properties.push(PropertyResult {
        name: "associativity".into(),
        trials,
        failures,
    });

    let mut failures = Vec::new();
    for _ in 0..trials {
        let w = NCPolynomial::word(n, random_word(&mut rng, n, 5));
        let s: u64 = rng.random();
        let reference = sys.normal_form(&w);
        let ok = [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(s)]
            .into_iter()
            .all(|st| sys.normalize_with(&w, st).result == reference);
        if !ok {
            record(&mut failures, format!("w = {}; random strategy seed {s}", format_expr(&w)));
        }
    }
    properties.push(PropertyResult {
        name: "strategy_independence".into(),
        trials,
        failures,
    });

    let mut failures = Vec::new();
    let weighting = weighting_wt(n, 1).expect("stage 1 exists for every n");
    match symbol_system(sys, &weighting) {
        Ok(next) => {
            for _ in 0..trials {
                let a = sys.normal_form(&random_poly(&mut rng, n, 3));
                let b = sys.normal_form(&random_poly(&mut rng, n, 3));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let lhs = symbol(&sys.multiply(&a, &b), &weighting).ok();
                let sa = symbol(&a, &weighting).unwrap();
                let sb = symbol(&b, &weighting).unwrap();
                let rhs = next.multiply(&sa, &sb);
                if lhs.as_ref() != Some(&rhs) {
                    record(&mut failures, format!("a = {}; b = {}", format_expr(&a), format_expr(&b)));
                }
            }
        }
        Err(e) => failures.push(format!("no associated graded system: {e}")),
    }
    properties.push(PropertyResult {
        name: "symbol_multiplicativity".into(),
        trials,
        failures,
    });

    let pass = properties.iter().all(|p| p.failures.is_empty());
    SuiteReport {
        n,
        seed,
        trials,
        properties,
        pass,
    }
}
