//! `H = O(GL_q(n)) = A[det_q^-1]`: localized elements, comultiplication,
//! the antipode and the adjoint coactions `alpha_q`, `beta_q`.

mod coaction;
mod localized;
mod tensor;

use std::sync::{Arc, OnceLock, RwLock};

use crate::coeff::LaurentScalar;
use crate::error::{Error, Result};
use crate::freealg::{GenIndex, NCPolynomial, MAX_N};
use crate::mutation::{quantum_matrices, MutationSystem};
use crate::qminors::{qdet, qminor};

pub use coaction::{
    coaction, comodule_axiom_check, is_invariant, multiplicativity_on_invariants_check, Variant,
};
pub use localized::{localized_arith, LocalizedElement, LocalizedOp};
pub use tensor::{comultiply, counit, TensorElement, TensorPoly};

/// Shared data for one `n`: the system `S_1`, `det_q` and its powers, and
/// the antipode numerators.
pub struct HopfContext {
    n: usize,
    sys: Arc<MutationSystem>,
    det: NCPolynomial,
    det_pows: RwLock<Vec<NCPolynomial>>,
    /// `(-q)^{i-j} xi_{ji}` at index `(i-1)*n + (j-1)`.
    antipode_num: Vec<NCPolynomial>,
}

impl HopfContext {
    fn build(n: usize) -> Result<Self> {
        let sys = quantum_matrices(n)?;
        let det = qdet(n)?;
        let mut antipode_num = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let rows: Vec<usize> = (1..=n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (1..=n).filter(|&c| c != i).collect();
                let xi = qminor(n, &rows, &cols)?;
                antipode_num.push(xi.scale(&LaurentScalar::neg_q_pow(i as i32 - j as i32)));
            }
        }
        Ok(HopfContext {
            n,
            sys,
            det_pows: RwLock::new(vec![NCPolynomial::one(n), det.clone()]),
            det,
            antipode_num,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn system(&self) -> &MutationSystem {
        &self.sys
    }

    pub fn det(&self) -> &NCPolynomial {
        &self.det
    }

    /// `det_q^k` in normal form.
    pub fn det_pow(&self, k: u32) -> NCPolynomial {
        let k = k as usize;
        if let Some(p) = self.det_pows.read().unwrap().get(k) {
            return p.clone();
        }
        let mut pows = self.det_pows.write().unwrap();
        while pows.len() <= k {
            let next = self.sys.multiply(pows.last().unwrap(), &self.det);
            pows.push(next);
        }
        pows[k].clone()
    }

    /// Numerator of `S(u_ij)`; the denominator is `det_q`.
    pub fn antipode_numerator(&self, i: usize, j: usize) -> &NCPolynomial {
        &self.antipode_num[(i - 1) * self.n + (j - 1)]
    }

    pub fn mul(&self, a: &NCPolynomial, b: &NCPolynomial) -> NCPolynomial {
        self.sys.multiply(a, b)
    }
}

/// The shared context for `n`.
pub fn context(n: usize) -> Result<&'static HopfContext> {
    static CONTEXTS: [OnceLock<HopfContext>; MAX_N + 1] = [const { OnceLock::new() }; MAX_N + 1];
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
        });
    }
    if let Some(ctx) = CONTEXTS[n].get() {
        return Ok(ctx);
    }
    let ctx = HopfContext::build(n)?;
    Ok(CONTEXTS[n].get_or_init(|| ctx))
}

/// `S(u_ij) = (-q)^{i-j} xi_{ji} det_q^-1`, with `xi_{ji}` the quantum minor
/// omitting row `j` and column `i`.
pub fn antipode_generator(i: usize, j: usize, n: usize) -> Result<LocalizedElement> {
    GenIndex::new(i, j, n)?;
    let ctx = context(n)?;
    Ok(LocalizedElement::raw(ctx.antipode_numerator(i, j).clone(), 1))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AntipodeReport {
    pub n: usize,
    /// Entries `(i, j, side)` where an identity fails; side is `left` for
    /// `sum_k u_ik S(u_kj)` and `right` for `sum_k S(u_ik) u_kj`.
    pub failures: Vec<(usize, usize, String)>,
}

impl AntipodeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `sum_k u_ik S(u_kj) = delta_ij = sum_k S(u_ik) u_kj`.
pub fn antipode_axioms_check(n: usize) -> Result<AntipodeReport> {
    let ctx = context(n)?;
    let mut failures = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let expect = if i == j {
                ctx.det.clone()
            } else {
                NCPolynomial::zero(n)
            };
            let mut left = NCPolynomial::zero(n);
            let mut right = NCPolynomial::zero(n);
            for k in 1..=n {
                let x_ik = NCPolynomial::x(n, i, k);
                let x_kj = NCPolynomial::x(n, k, j);
                left = &left + &ctx.mul(&x_ik, ctx.antipode_numerator(k, j));
                right = &right + &ctx.mul(ctx.antipode_numerator(i, k), &x_kj);
            }
            if left != expect {
                failures.push((i, j, "left".to_string()));
            }
            if right != expect {
                failures.push((i, j, "right".to_string()));
            }
        }
    }
    Ok(AntipodeReport { n, failures })
}
