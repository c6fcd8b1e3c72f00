//! Exact coefficients: Laurent polynomials `Q[q, q^-1]` and their fraction
//! field `Q(q)`.
//!
//! `q` is always a formal indeterminate here. Specialization to a rational
//! value happens only through [`LaurentScalar::evaluate_at`].

mod laurent;
mod ratfun;

pub use laurent::LaurentScalar;
pub use ratfun::RationalFunction;

pub(crate) use laurent::format_rational;

use num_rational::BigRational;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn laurent_arith(a: &LaurentScalar, b: &LaurentScalar, op: RingOp) -> LaurentScalar {
    match op {
        RingOp::Add => a + b,
        RingOp::Sub => a - b,
        RingOp::Mul => a * b,
    }
}

pub fn evaluate_at(a: &LaurentScalar, q0: &BigRational) -> Result<BigRational> {
    a.evaluate_at(q0)
}

pub fn ratfun_arith(
    a: &RationalFunction,
    b: &RationalFunction,
    op: FieldOp,
) -> Result<RationalFunction> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => (a / b)?,
    })
}

/// `q - q^-1`
pub fn q_minus_q_inv() -> LaurentScalar {
    &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn rat(p: i64, r: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(r))
    }

    fn q(e: i32) -> LaurentScalar {
        LaurentScalar::q_pow(e)
    }

    #[test]
    fn ring_examples() {
        assert!(laurent_arith(&q(1), &q(-1), RingOp::Mul).is_one());
        let lhs = laurent_arith(&q_minus_q_inv(), &(&q(1) + &q(-1)), RingOp::Mul);
        assert_eq!(lhs, &q(2) - &q(-2));
        let sum = laurent_arith(
            &LaurentScalar::neg_q_pow(2),
            &LaurentScalar::neg_q_pow(1),
            RingOp::Add,
        );
        assert_eq!(sum, &q(2) - &q(1));
    }

    #[test]
    fn evaluation_examples() {
        assert!(evaluate_at(&q_minus_q_inv(), &BigRational::one()).unwrap().is_zero());
        assert_eq!(evaluate_at(&q(2), &rat(2, 1)).unwrap(), rat(4, 1));
        assert_eq!(
            evaluate_at(&LaurentScalar::neg_q_pow(1), &rat(3, 1)).unwrap(),
            rat(-3, 1)
        );
        assert!(matches!(
            evaluate_at(&q(1), &BigRational::zero()),
            Err(Error::ZeroSubstitution)
        ));
    }

    #[test]
    fn field_examples() {
        let d = RationalFunction::new(LaurentScalar::one(), q_minus_q_inv()).unwrap();
        let m = RationalFunction::from_laurent(q_minus_q_inv());
        assert_eq!(ratfun_arith(&d, &m, FieldOp::Mul).unwrap(), RationalFunction::one());
        let qq = RationalFunction::from_laurent(q(1));
        assert_eq!(ratfun_arith(&qq, &qq, FieldOp::Div).unwrap(), RationalFunction::one());
        let s = ratfun_arith(&RationalFunction::one(), &qq, FieldOp::Add).unwrap();
        assert_eq!(s, RationalFunction::from_laurent(&LaurentScalar::one() + &q(1)));
        assert!(matches!(
            ratfun_arith(&qq, &RationalFunction::zero(), FieldOp::Div),
            Err(Error::DivisionByZero)
        ));
        assert!(RationalFunction::new(q(1), LaurentScalar::zero()).is_err());
    }

    #[test]
    fn content_normalization() {
        // (2q) / (-4q^3 + 6q^4) -> denominator lowest term positive, coprime ints
        let num = LaurentScalar::monomial(rat(2, 1), 1);
        let den = LaurentScalar::from_terms([(3, rat(-4, 1)), (4, rat(6, 1))]);
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.denominator().to_string(), "2*q^0 - 3*q^1");
        assert_eq!(f.numerator().to_string(), "-1*q^-2");
    }

    #[test]
    fn gcd_reduction() {
        // (q^2 - 1) / (q - 1) = q + 1
        let num = &q(2) - &LaurentScalar::one();
        let den = &q(1) - &LaurentScalar::one();
        let f = RationalFunction::new(num, den).unwrap().reduce_gcd();
        assert!(f.denominator().is_one());
        assert_eq!(f.numerator(), &(&q(1) + &LaurentScalar::one()));
    }

    #[test]
    fn exact_division() {
        let a = &(&q(3) - &q(-1)) * &(&q(1) + &LaurentScalar::from_int(2));
        let b = &q(1) + &LaurentScalar::from_int(2);
        assert_eq!(a.div_exact(&b).unwrap(), &q(3) - &q(-1));
        assert!(q(1).div_exact(&b).is_none());
        assert!(LaurentScalar::zero().div_exact(&b).unwrap().is_zero());
    }

    #[test]
    fn text_form() {
        let s = &q(1) - &q(-1);
        assert_eq!(s.to_string(), "-1*q^-1 + 1*q^1");
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        let r = LaurentScalar::from_terms([(0, rat(1, 2)), (2, rat(-3, 4))]);
        assert_eq!(r.to_string(), "1/2*q^0 - 3/4*q^2");
        for text in ["-1*q^-1 + 1*q^1", "0", "1/2*q^0 - 3/4*q^2", "7*q^5"] {
            let parsed: LaurentScalar = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text);
        }
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-4i32..5, -5i64..6, 1i64..4), 0..5).prop_map(|v| {
            LaurentScalar::from_terms(v.into_iter().map(|(e, p, r)| (e, rat(p, r))))
        })
    }

    fn arb_q0() -> impl Strategy<Value = BigRational> {
        (1i64..20, 1i64..20, any::<bool>())
            .prop_map(|(p, r, neg)| rat(if neg { -p } else { p }, r))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_morphism(a in arb_laurent(), b in arb_laurent(), q0 in arb_q0()) {
            let lhs = (&a * &b).evaluate_at(&q0).unwrap();
            let rhs = a.evaluate_at(&q0).unwrap() * b.evaluate_at(&q0).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn text_round_trip(a in arb_laurent()) {
            let parsed: LaurentScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(parsed, a);
        }

        #[test]
        fn ratfun_equality_is_cross_multiplicative(
            a in arb_laurent(), b in arb_laurent(), c in arb_laurent()
        ) {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let y = RationalFunction::new(&a * &c, &b * &c).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(&y, &x);
            prop_assert_eq!(x.reduce_gcd(), y);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_laurent(), b in arb_laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}
