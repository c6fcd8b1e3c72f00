//! Elements `a * det_q^-k` of the localization.

use std::cmp::Ordering;
use std::fmt;

use super::context;
use crate::coeff::LaurentScalar;
use crate::error::Result;
use crate::freealg::{NCPolynomial, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalizedOp {
    Add,
    Mul,
}

/// `numerator * det_q^-det_power`, numerator in normal form for `S_1`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    numerator: NCPolynomial,
    det_power: u32,
}

impl LocalizedElement {
    pub(crate) fn raw(numerator: NCPolynomial, det_power: u32) -> Self {
        LocalizedElement {
            numerator,
            det_power,
        }
    }

    /// Normalizes the numerator and cancels factors of `det_q`.
    pub fn new(numerator: &NCPolynomial, det_power: u32) -> Result<Self> {
        let ctx = context(numerator.n())?;
        let mut num = ctx.system().normal_form(numerator);
        let mut k = det_power;
        while k > 0 {
            match divide_by_det(&num)? {
                Some(quot) => {
                    num = quot;
                    k -= 1;
                }
                None => break,
            }
        }
        if num.is_zero() {
            k = 0;
        }
        Ok(LocalizedElement {
            numerator: num,
            det_power: k,
        })
    }

    pub fn from_poly(p: &NCPolynomial) -> Result<Self> {
        LocalizedElement::new(p, 0)
    }

    pub fn det_inverse(n: usize) -> Result<Self> {
        LocalizedElement::new(&NCPolynomial::one(n), 1)
    }

    pub fn numerator(&self) -> &NCPolynomial {
        &self.numerator
    }

    pub fn det_power(&self) -> u32 {
        self.det_power
    }

    pub fn n(&self) -> usize {
        self.numerator.n()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let ctx = context(self.n())?;
        let k = self.det_power.max(other.det_power);
        let a = ctx.mul(&self.numerator, &ctx.det_pow(k - self.det_power));
        let b = ctx.mul(&other.numerator, &ctx.det_pow(k - other.det_power));
        LocalizedElement::new(&(&a + &b), k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ctx = context(self.n())?;
        let num = ctx.mul(&self.numerator, &other.numerator);
        LocalizedElement::new(&num, self.det_power + other.det_power)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        LocalizedElement {
            numerator: self.numerator.scale(c),
            det_power: if c.is_zero() { 0 } else { self.det_power },
        }
    }
}

pub fn localized_arith(
    a: &LocalizedElement,
    b: &LocalizedElement,
    op: LocalizedOp,
) -> Result<LocalizedElement> {
    match op {
        LocalizedOp::Add => a.add(b),
        LocalizedOp::Mul => a.mul(b),
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        if self.n() != other.n() {
            return false;
        }
        if self.det_power == other.det_power {
            return self.numerator == other.numerator;
        }
        let ctx = context(self.n()).expect("valid size");
        ctx.mul(&self.numerator, &ctx.det_pow(other.det_power))
            == ctx.mul(&other.numerator, &ctx.det_pow(self.det_power))
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.det_power {
            0 => write!(f, "{}", self.numerator),
            k => write!(f, "({}) * det^-{k}", self.numerator),
        }
    }
}

/// Order on standard words used for division by `det_q`: first by
/// `sum row*col` over letters, then by exponent vector. The leading word of
/// `m * det_q` is the leading word of `m` with every diagonal exponent
/// raised by one.
fn order_key(w: &Word, n: usize) -> (usize, Vec<u32>) {
    let rank = w.gens(n).map(|g| g.row() * g.col()).sum();
    (rank, w.exponents(n))
}

fn leading(p: &NCPolynomial) -> Option<(Word, LaurentScalar)> {
    let n = p.n();
    p.terms()
        .max_by(|a, b| cmp_key(&order_key(a.0, n), &order_key(b.0, n)))
        .map(|(w, c)| (w.clone(), c.clone()))
}

fn cmp_key(a: &(usize, Vec<u32>), b: &(usize, Vec<u32>)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// `Some(m)` with `m * det_q = p` when such `m` exists.
pub(crate) fn divide_by_det(p: &NCPolynomial) -> Result<Option<NCPolynomial>> {
    let n = p.n();
    let ctx = context(n)?;
    let mut rest = p.clone();
    let mut quot = NCPolynomial::zero(n);
    while let Some((w, c)) = leading(&rest) {
        let mut exps = w.exponents(n);
        for i in 0..n {
            let d = i * n + i;
            if exps[d] == 0 {
                return Ok(None);
            }
            exps[d] -= 1;
        }
        let m = NCPolynomial::word(n, Word::from_exponents(&exps));
        let prod = ctx.mul(&m, ctx.det());
        let lc = prod.coeff(&w);
        let inv = lc.inverse().expect("leading coefficient of m*det is a unit");
        let t = &c * &inv;
        rest.add_scaled(&prod, &-&t);
        quot.add_term(Word::from_exponents(&exps), t);
    }
    Ok(Some(quot))
}
