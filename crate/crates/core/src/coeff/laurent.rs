use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Q[q, q^-1]`.
///
/// Terms are kept sorted by ascending exponent and never carry a zero
/// coefficient, so the zero element is the empty term list and structural
/// equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: Vec<(i32, BigRational)>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentScalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    /// `q^e`
    pub fn q_pow(e: i32) -> Self {
        LaurentScalar {
            terms: vec![(e, BigRational::one())],
        }
    }

    /// `c * q^e`
    pub fn monomial(c: BigRational, e: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar { terms: vec![(e, c)] }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    /// `(-q)^e`
    pub fn neg_q_pow(e: i32) -> Self {
        let s = Self::q_pow(e);
        if e.rem_euclid(2) == 1 {
            -s
        } else {
            s
        }
    }

    /// Builds a scalar from arbitrary `(exponent, coefficient)` pairs,
    /// combining repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut v: Vec<(i32, BigRational)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentScalar { terms: out }
    }

    pub fn terms(&self) -> &[(i32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Coefficient of the lowest power of `q`.
    pub fn trailing_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// True for `c * q^e` with `c != 0`, i.e. the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, e: i32) -> BigRational {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i32) -> Self {
        LaurentScalar {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentScalar {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Inverse of a unit `c * q^e`; `None` for anything else.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = &self.terms[0];
        Some(Self::monomial(c.recip(), -e))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q := q0`.
    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::ZeroSubstitution);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(q0, *e);
        }
        Ok(acc)
    }

    /// Exact quotient `self / other`, or `None` when `other` does not divide
    /// `self` in `Q[q, q^-1]`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.is_unit() {
            return Some(self * &other.inverse().unwrap());
        }
        // Work with ordinary polynomials: shift both so their lowest power is q^0.
        let a_shift = self.min_exp().unwrap();
        let b_shift = other.min_exp().unwrap();
        let mut rem = dense(self, a_shift);
        let div = dense(other, b_shift);
        let db = div.len() - 1;
        if rem.len() < div.len() {
            return None;
        }
        let lead_inv = div[db].recip();
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + a_shift - b_shift, c)),
        ))
    }

    /// Rational content: the positive rational `c` such that `self / c` has
    /// coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        use num_integer::Integer;
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }
}

fn dense(a: &LaurentScalar, shift: i32) -> Vec<BigRational> {
    let top = (a.max_exp().unwrap() - shift) as usize;
    let mut v = vec![BigRational::zero(); top + 1];
    for (e, c) in a.terms() {
        v[(e - shift) as usize] = c.clone();
    }
    v
}

pub(crate) fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

fn merge(a: &[(i32, BigRational)], b: &[(i32, BigRational)], negate_b: bool) -> LaurentScalar {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), b.get(j)) {
            (Some((ea, _)), Some((eb, _))) => ea.cmp(eb),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = &b[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    LaurentScalar { terms: out }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: LaurentScalar) -> LaurentScalar {
        &self + &rhs
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        *self = merge(&self.terms, &rhs.terms, false);
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        *self = merge(&self.terms, &rhs.terms, true);
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || rhs.is_zero() {
            return LaurentScalar::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return LaurentScalar {
                terms: self.terms.iter().map(|(x, d)| (x + e, d * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let mut prod = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                prod.push((ea + eb, ca * cb));
            }
        }
        LaurentScalar::from_terms(prod)
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        LaurentScalar::from_int(c)
    }
}

impl From<BigRational> for LaurentScalar {
    fn from(c: BigRational) -> Self {
        LaurentScalar::from_rational(c)
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical textual form: ascending exponents, every term written as
/// `c*q^e`, e.g. `-1*q^-1 + 1*q^1`. Zero prints as `0`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{}*q^{}", format_rational(c), e)?;
            } else if c.is_negative() {
                write!(f, " - {}*q^{}", format_rational(&-c), e)?;
            } else {
                write!(f, " + {}*q^{}", format_rational(c), e)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentScalar {
    type Err = Error;

    /// Accepts the canonical form and, more generally, any expression of the
    /// expression grammar that involves only `q` and rationals.
    fn from_str(s: &str) -> Result<Self> {
        crate::freealg::parse::parse_scalar(s)
    }
}
