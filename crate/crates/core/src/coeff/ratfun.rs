use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LaurentScalar;
use crate::error::{Error, Result};

/// An element of `Q(q)` stored as a quotient of Laurent polynomials.
///
/// Representatives are only content-normalized: the denominator is scaled to
/// coprime integer coefficients with its lowest term at `q^0` and positive.
/// [`RationalFunction::reduce_gcd`] removes common polynomial factors.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    numerator: LaurentScalar,
    denominator: LaurentScalar,
}

impl RationalFunction {
    pub fn new(numerator: LaurentScalar, denominator: LaurentScalar) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(numerator, denominator))
    }

    pub fn from_laurent(a: LaurentScalar) -> Self {
        Self::normalized(a, LaurentScalar::one())
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentScalar::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    pub fn numerator(&self) -> &LaurentScalar {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentScalar {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn normalized(num: LaurentScalar, den: LaurentScalar) -> Self {
        if num.is_zero() {
            return RationalFunction {
                numerator: LaurentScalar::zero(),
                denominator: LaurentScalar::one(),
            };
        }
        let shift = -den.min_exp().unwrap();
        let mut content = den.content();
        if den.trailing_coeff().unwrap().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        RationalFunction {
            numerator: num.shift(shift).scale(&inv),
            denominator: den.shift(shift).scale(&inv),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        RationalFunction::new(self.denominator.clone(), self.numerator.clone())
    }

    pub fn evaluate_at(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.denominator.evaluate_at(q0)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.numerator.evaluate_at(q0)? / d)
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduce_gcd(&self) -> Self {
        if self.numerator.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.numerator, &self.denominator);
        let num = self.numerator.div_exact(&g).expect("gcd divides numerator");
        let den = self.denominator.div_exact(&g).expect("gcd divides denominator");
        Self::normalized(num, den)
    }
}

/// Monic-style gcd of two Laurent polynomials (defined up to units).
fn poly_gcd(a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
    let mut x = a.shift(-a.min_exp().unwrap_or(0));
    let mut y = b.shift(-b.min_exp().unwrap_or(0));
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { r.shift(-r.min_exp().unwrap()) };
    }
    match x.leading_coeff() {
        Some(c) => x.scale(&c.recip()),
        None => LaurentScalar::one(),
    }
}

/// Remainder of ordinary polynomial division; both inputs have non-negative
/// exponents.
fn poly_rem(a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
    let mut r = a.clone();
    let db = b.max_exp().unwrap();
    let lb = b.leading_coeff().unwrap().clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let c = r.leading_coeff().unwrap() / &lb;
        r = &r - &(b * &LaurentScalar::monomial(c, dr - db));
    }
    r
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.denominator == rhs.denominator {
            return RationalFunction::normalized(
                &self.numerator + &rhs.numerator,
                self.denominator.clone(),
            );
        }
        RationalFunction::normalized(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::normalized(
            &self.numerator * &rhs.denominator,
            &self.denominator * &rhs.numerator,
        ))
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}
