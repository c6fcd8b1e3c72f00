use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, Just, ProptestConfig, Strategy as PropStrategy};

use super::*;
use super::Strategy;
use crate::freealg::parse_expr;

fn g(i: usize, j: usize, n: usize) -> GenIndex {
    GenIndex::new(i, j, n).unwrap()
}

fn p(text: &str, n: usize) -> NCPolynomial {
    parse_expr(text, n).unwrap()
}

#[test]
fn classify_examples() {
    assert_eq!(classify_pair(g(1, 1, 2), g(1, 2, 2)), Ok(PairClass::SameRow));
    assert_eq!(classify_pair(g(1, 2, 2), g(2, 1, 2)), Ok(PairClass::Antidiagonal));
    assert_eq!(classify_pair(g(1, 1, 2), g(2, 2, 2)), Ok(PairClass::DiagonalCurly));
    assert_eq!(classify_pair(g(1, 1, 2), g(2, 1, 2)), Ok(PairClass::SameCol));
    assert_eq!(classify_pair(g(2, 2, 2), g(1, 1, 2)), Err(Error::NotIncreasing));
    assert_eq!(classify_pair(g(1, 1, 2), g(1, 1, 2)), Err(Error::NotIncreasing));
}

#[test]
fn classes_partition_pairs() {
    for n in 1..=5 {
        let s = MutationSystem::build(n, 1).unwrap();
        for (a, b, rel) in s.pairs() {
            let class = classify_pair(a, b).unwrap();
            let expect_q = match class {
                PairClass::SameRow | PairClass::SameCol => LaurentScalar::q_pow(-1),
                _ => LaurentScalar::one(),
            };
            assert_eq!(rel.q, expect_q);
            assert_eq!(rel.f.is_zero(), class != PairClass::DiagonalCurly);
        }
    }
}

#[test]
fn build_examples() {
    let s = MutationSystem::build(3, 1).unwrap();
    let out = s.normalize(&p("x[2,3]*x[1,2]", 3));
    assert_eq!(out.to_string(), "x[1,2]*x[2,3] - (q^1 - q^-1)*x[1,3]*x[2,2]");

    let s3 = MutationSystem::build(3, 3).unwrap();
    assert!(s3.pairs().all(|(_, _, r)| r.f.is_zero()));

    let s2 = MutationSystem::build(2, 1).unwrap();
    let curly: Vec<_> = s2.pairs().filter(|(_, _, r)| !r.f.is_zero()).collect();
    assert_eq!(curly.len(), 1);
    assert_eq!((curly[0].0, curly[0].1), (g(1, 1, 2), g(2, 2, 2)));

    assert_eq!(
        MutationSystem::build(2, 0).unwrap_err(),
        Error::StageOutOfRange { n: 2, t: 0 }
    );
    assert_eq!(
        MutationSystem::build(2, 3).unwrap_err(),
        Error::StageOutOfRange { n: 2, t: 3 }
    );
}

#[test]
fn relations_reproduce_quantum_matrix_relations() {
    // The defining relations, written with the smaller generator first on
    // the left-hand side, hold in A(S_1) for every 2x2 submatrix.
    let n = 3;
    let s = MutationSystem::build(n, 1).unwrap();
    for i in 1..=n {
        for k in i + 1..=n {
            for j in 1..=n {
                for l in j + 1..=n {
                    let rel = [
                        format!("x[{i},{j}]*x[{i},{l}] - q*x[{i},{l}]*x[{i},{j}]"),
                        format!("x[{i},{j}]*x[{k},{j}] - q*x[{k},{j}]*x[{i},{j}]"),
                        format!("x[{i},{l}]*x[{k},{j}] - x[{k},{j}]*x[{i},{l}]"),
                        format!(
                            "x[{i},{j}]*x[{k},{l}] - x[{k},{l}]*x[{i},{j}] - (q - q^-1)*x[{i},{l}]*x[{k},{j}]"
                        ),
                    ];
                    for r in rel {
                        assert!(s.normalize(&p(&r, n)).is_zero(), "{r}");
                    }
                }
            }
        }
    }
}

#[test]
fn elementary_mutation_examples() {
    let s = MutationSystem::build(2, 1).unwrap();
    let w = |text: &str| p(text, 2).words().next().unwrap().clone();
    assert_eq!(
        elementary_mutation(&w("x[2,2]*x[1,1]"), 1, &s).unwrap(),
        p("x[1,1]*x[2,2] + (q^-1 - q)*x[1,2]*x[2,1]", 2)
    );
    assert_eq!(
        elementary_mutation(&w("x[1,2]*x[1,1]"), 1, &s).unwrap(),
        p("q^-1*x[1,1]*x[1,2]", 2)
    );
    assert_eq!(
        elementary_mutation(&w("x[2,1]*x[1,2]"), 1, &s).unwrap(),
        p("x[1,2]*x[2,1]", 2)
    );
    assert_eq!(
        elementary_mutation(&w("x[1,1]*x[2,2]"), 1, &s).unwrap_err(),
        Error::NotADescent(1)
    );
    assert_eq!(
        elementary_mutation(&w("x[1,1]*x[2,2]"), 5, &s).unwrap_err(),
        Error::NotADescent(5)
    );
}

#[test]
fn inversion_count_can_stay_put() {
    // x22 x22 x11: the curly term x22 x12 x21 keeps two inversions, so the
    // inversion count alone is not a termination measure.
    let s = MutationSystem::build(2, 1).unwrap();
    let w = Word::from_letters(&[3, 3, 0]);
    assert_eq!(w.inversions(), 2);
    let out = elementary_mutation(&w, 2, &s).unwrap();
    let f_word = Word::from_letters(&[3, 1, 2]);
    assert!(!out.coeff(&f_word).is_zero());
    assert_eq!(f_word.inversions(), 2);
}

fn measure(w: &Word, n: usize) -> (usize, usize, usize) {
    let rank: usize = w.gens(n).map(|g| g.row() * g.col()).sum();
    (w.len(), rank, w.inversions())
}

#[test]
fn mutations_decrease_the_termination_measure() {
    for n in 1..=3 {
        for t in 1..=n {
            let s = MutationSystem::build(n, t).unwrap();
            let size = (n * n) as u8;
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        let w = Word::from_letters(&[a, b, c]);
                        for r in w.descent_positions() {
                            let out = elementary_mutation(&w, r, &s).unwrap();
                            for v in out.words() {
                                assert!(measure(v, n) < measure(&w, n));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn normalize_examples() {
    let s = MutationSystem::build(2, 1).unwrap();
    assert_eq!(
        s.normalize(&p("x[2,2]*x[1,1]", 2)),
        p("x[1,1]*x[2,2] + (q^-1 - q)*x[1,2]*x[2,1]", 2)
    );
    let std = p("x[1,1]*x[1,2]*x[2,2]", 2);
    assert_eq!(s.normalize(&std), std);
    let hard = p("x[2,2]*x[2,1]*x[1,2]*x[1,1]", 2);
    let left = s.normalize_with(&hard, Strategy::Leftmost);
    let right = s.normalize_with(&hard, Strategy::Rightmost);
    let random = s.normalize_with(&hard, Strategy::Random(7));
    assert_eq!(left.result, right.result);
    assert_eq!(left.result, random.result);
    assert!(left.result.is_standard());
    assert!(left.mutations > 0);
    assert_eq!(s.normal_form(&hard), left.result);
}

#[test]
fn multiply_examples() {
    let s = MutationSystem::build(2, 1).unwrap();
    let det = p("x[1,1]*x[2,2] - q*x[1,2]*x[2,1]", 2);
    let x11 = p("x[1,1]", 2);
    assert_eq!(multiply(&det, &x11, &s), multiply(&x11, &det, &s));
    assert_eq!(multiply(&det, &NCPolynomial::one(2), &s), det);
    assert_eq!(
        multiply(&p("x[1,2]", 2), &x11, &s),
        p("q^-1*x[1,1]*x[1,2]", 2)
    );
}

#[test]
fn det_is_central() {
    let dets = [
        (2, "x[1,1]*x[2,2] - q*x[1,2]*x[2,1]"),
        (
            3,
            "x[1,1]*x[2,2]*x[3,3] - q*x[1,1]*x[2,3]*x[3,2] - q*x[1,2]*x[2,1]*x[3,3] \
             + q^2*x[1,2]*x[2,3]*x[3,1] + q^2*x[1,3]*x[2,1]*x[3,2] - q^3*x[1,3]*x[2,2]*x[3,1]",
        ),
    ];
    for (n, text) in dets {
        let s = MutationSystem::build(n, 1).unwrap();
        let det = p(text, n);
        for l in 0..(n * n) as u8 {
            let x = NCPolynomial::generator(GenIndex::from_flat(l, n));
            assert_eq!(s.multiply(&det, &x), s.multiply(&x, &det), "n={n} letter {l}");
        }
    }
}

#[test]
fn standard_monomial_counts() {
    assert_eq!(standard_monomials(2, 1).len(), 4);
    assert_eq!(standard_monomials(2, 2).len(), 10);
    assert_eq!(standard_monomials(3, 2).len(), 45);
    assert_eq!(standard_monomials(2, 0), vec![Word::unit()]);
    let words = standard_monomials(3, 3);
    assert!(words.windows(2).all(|w| w[0] < w[1]));
    assert!(words.iter().all(Word::is_standard));
}

#[test]
fn confluence_examples() {
    for n in 1..=3 {
        for t in 1..=n {
            let s = MutationSystem::build(n, t).unwrap();
            let r = pbw_confluence_check(&s, 3);
            assert!(r.passed(), "n={n} t={t}: {:?}", r.failures.first());
        }
    }
    let s = MutationSystem::build(2, 1).unwrap();
    assert_eq!(pbw_confluence_check(&s, 3).checked, 4);
    assert!(pbw_confluence_check(&s, 4).passed());

    // At n = 2 the overlaps resolve for any curly coefficient; n = 3 pins it.
    let s = MutationSystem::build(3, 1).unwrap();
    let broken = s
        .with_relation(
            g(1, 1, 3),
            g(2, 2, 3),
            Relation {
                q: LaurentScalar::one(),
                f: p("x[1,2]*x[2,1]", 3),
            },
        )
        .unwrap();
    let r = pbw_confluence_check(&broken, 3);
    assert!(!r.passed());
    assert!(!r.failures[0].word.is_empty());
}

#[test]
fn invalid_relations_are_rejected() {
    let s = MutationSystem::build(2, 1).unwrap();
    let growing = Relation {
        q: LaurentScalar::one(),
        f: p("x[2,2]*x[2,2]", 2),
    };
    assert!(matches!(
        s.with_relation(g(1, 1, 2), g(2, 2, 2), growing),
        Err(Error::InvalidRelation(0, 3, _))
    ));
    let zero_q = Relation {
        q: LaurentScalar::zero(),
        f: NCPolynomial::zero(2),
    };
    assert!(s.with_relation(g(1, 1, 2), g(1, 2, 2), zero_q).is_err());
}

#[test]
fn relations_text_lists_every_pair() {
    let s = MutationSystem::build(2, 1).unwrap();
    let text = s.relations_text();
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("x[2,2]*x[1,1] = x[1,1]*x[2,2] - (q^1 - q^-1)*x[1,2]*x[2,1]"));
    assert!(text.contains("x[1,2]*x[1,1] = q^-1*x[1,1]*x[1,2]"));
}

fn arb_poly(n: usize, max_len: usize) -> impl PropStrategy<Value = NCPolynomial> {
    let letters = (n * n) as u8;
    let word = prop::collection::vec(0..letters, 0..=max_len);
    let coeff = (-2i32..3, -3i64..4).prop_filter("nonzero", |(_, c)| *c != 0);
    prop::collection::vec((word, coeff), 1..4).prop_map(move |terms| {
        NCPolynomial::from_terms(
            n,
            terms.into_iter().map(|(w, (e, c))| {
                (
                    Word::from_letters(&w),
                    LaurentScalar::monomial(num_rational::BigRational::from_integer(c.into()), e),
                )
            }),
        )
    })
}

fn system_and_poly(max_len: usize) -> impl PropStrategy<Value = (usize, usize, NCPolynomial)> {
    (1usize..=3)
        .prop_flat_map(move |n| (Just(n), 1..=n, arb_poly(n, max_len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategy_independence((n, t, x) in system_and_poly(5), seed in any::<u64>()) {
        let s = MutationSystem::build(n, t).unwrap();
        let left = s.normalize_with(&x, Strategy::Leftmost).result;
        let random = s.normalize_with(&x, Strategy::Random(seed)).result;
        prop_assert!(left.is_standard());
        prop_assert_eq!(&left, &random);
        prop_assert_eq!(&left, &s.normal_form(&x));
    }

    #[test]
    fn associativity((n, t, a) in system_and_poly(2), seed in any::<u64>()) {
        let s = MutationSystem::build(n, t).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let size = (n * n) as u8;
        let mut word = || {
            use rand::Rng;
            let len = rng.random_range(0..3);
            NCPolynomial::word(n, Word::from_letters(&(0..len).map(|_| rng.random_range(0..size)).collect::<Vec<_>>()))
        };
        let (b, c) = (word(), word());
        let a = s.normal_form(&a);
        let b = s.normal_form(&b);
        let c = s.normal_form(&c);
        prop_assert_eq!(s.multiply(&s.multiply(&a, &b), &c), s.multiply(&a, &s.multiply(&b, &c)));
        prop_assert_eq!(s.multiply(&a, &NCPolynomial::one(n)), a.clone());
        prop_assert_eq!(s.multiply(&NCPolynomial::one(n), &a), a);
    }

    #[test]
    fn commutative_at_q_one(a in arb_poly(2, 3), b in arb_poly(2, 3)) {
        let s = MutationSystem::build(2, 1).unwrap();
        let at_one = |x: &NCPolynomial| {
            x.map_coeffs(|c| LaurentScalar::from_rational(c.evaluate_at(&num_rational::BigRational::from_integer(1.into())).unwrap()))
        };
        let ab = at_one(&s.multiply(&a, &b));
        let ba = at_one(&s.multiply(&b, &a));
        prop_assert_eq!(ab, ba);
    }
}
