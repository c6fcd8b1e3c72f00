use proptest::prelude::*;

use super::*;
use crate::freealg::parse_expr;

fn binom(a: u64, b: u64) -> u64 {
    (0..b).fold(1, |acc, k| acc * (a - k) / (k + 1))
}

#[test]
fn hilbert_examples() {
    let h = hilbert_dims(2, 5).unwrap();
    assert_eq!(h.dims_a, vec![1, 4, 10, 20, 35, 56]);
    assert_eq!(h.dims_i, vec![1, 1, 2, 2, 3, 3]);
    assert_eq!(h.dims_h, vec![1, 3, 5, 7, 9, 11]);

    let h = hilbert_dims(1, 4).unwrap();
    assert_eq!(h.dims_h, vec![1, 0, 0, 0, 0]);
    assert_eq!(h.dims_a, vec![1; 5]);

    for n in 1..=5 {
        assert_eq!(hilbert_dims(n, 1).unwrap().dims_a[1], (n * n) as u64);
    }
    assert!(hilbert_dims(0, 3).is_err());
}

#[test]
fn hilbert_frozen_values_n3() {
    // Series coefficients of (1-t)(1-t^2)(1-t^3)/(1-t)^9 and of
    // 1/((1-t)(1-t^2)(1-t^3)), from a computer algebra system.
    let h = hilbert_dims(3, 5).unwrap();
    assert_eq!(h.dims_i, vec![1, 1, 2, 3, 4, 5]);
    assert_eq!(h.dims_h, vec![1, 8, 35, 111, 286, 637]);
    assert_eq!(h.dims_a, vec![1, 9, 45, 165, 495, 1287]);
}

#[test]
fn hilbert_total_of_h_at_q1_is_n_factorial_times_offdiagonal() {
    // dims_H = prod_d [d]_t / (1-t)^{n^2-n}; multiplying by (1-t)^{n^2-n}
    // and setting t = 1 leaves n!.
    for n in 1..=4usize {
        let deg = 30;
        let h = hilbert_dims(n, deg).unwrap();
        let mut c: Vec<i128> = h.dims_h.iter().map(|&x| x as i128).collect();
        for _ in 0..n * n - n {
            for d in (1..c.len()).rev() {
                c[d] -= c[d - 1];
            }
        }
        let total: i128 = c[..=n * (n - 1) / 2].iter().sum();
        assert_eq!(total, (1..=n as i128).product::<i128>(), "n={n}");
    }
}

proptest! {
    #[test]
    fn hilbert_convolution(n in 1usize..=4, deg in 0usize..=12) {
        let h = hilbert_dims(n, deg).unwrap();
        for d in 0..=deg {
            prop_assert_eq!(h.convolution(d), h.dims_a[d]);
            prop_assert_eq!(h.dims_a[d], binom((d + n * n - 1) as u64, (n * n - 1) as u64));
        }
    }

    #[test]
    fn candidate_counts_match_dims_h(n in 1usize..=3, d in 0usize..=4) {
        let h = hilbert_dims(n, d).unwrap();
        prop_assert_eq!(candidate_basis(n, d).len() as u64, h.dims_h[d]);
    }
}

#[test]
fn candidate_examples() {
    let show = |ws: Vec<Word>| -> Vec<String> {
        ws.into_iter()
            .map(|w| NCPolynomial::word(2, w).to_string())
            .collect()
    };
    assert_eq!(show(candidate_basis(2, 0)), vec!["1"]);
    assert_eq!(show(candidate_basis(2, 1)), vec!["x[1,2]", "x[2,1]", "x[2,2]"]);
    assert_eq!(
        show(candidate_basis(2, 2)),
        vec![
            "x[1,2]^2",
            "x[1,2]*x[2,1]",
            "x[1,2]*x[2,2]",
            "x[2,1]^2",
            "x[2,1]*x[2,2]"
        ]
    );
    // The non-strict diagonal bound overcounts.
    assert_eq!(candidate_basis_with_slack(2, 1, 1).len(), 4);
    assert!(candidate_basis_with_slack(2, 0, -1).is_empty());
}

#[test]
fn count_identity_holds() {
    for (n, deg) in [(1, 6), (2, 8), (3, 5), (4, 3)] {
        for (d, lhs, rhs) in count_identity(n, deg).unwrap() {
            assert_eq!(lhs, rhs, "n={n} d={d}");
        }
    }
}

#[test]
fn delta_exponent_order() {
    assert_eq!(
        delta_exponents(3, 4),
        vec![vec![0, 2, 0], vec![1, 0, 1], vec![2, 1, 0], vec![4, 0, 0]]
    );
    assert_eq!(delta_exponents(2, 0), vec![vec![0, 0]]);
    for d in 0..=8 {
        assert_eq!(
            delta_exponents(3, d).len() as u64,
            hilbert_dims(3, 8).unwrap().dims_i[d]
        );
    }
}

#[test]
fn sample_points_are_valid() {
    let pts = sample_points(10, 7);
    assert_eq!(pts.len(), 10);
    assert_eq!(pts, sample_points(10, 7));
    for q in &pts {
        assert!(linalg::is_positive_non_one(q));
        assert!(*q >= ratio(2, 97) && *q <= ratio(97, 2));
    }
}

#[test]
fn certify_n1() {
    for mode in [Mode::Exact, Mode::Sampled] {
        let c = certify_freeness(1, 5, mode, 2).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        assert!(c.degrees.iter().all(|r| r.rank == 1 && r.candidate_count == 1));
    }
}

#[test]
fn certify_n2_exact_and_sampled_agree() {
    let exact = certify_freeness(2, 5, Mode::Exact, 0).unwrap();
    let sampled = certify_freeness(2, 5, Mode::Sampled, 3).unwrap();
    assert_eq!(exact.verdict, Verdict::Pass);
    assert_eq!(sampled.verdict, Verdict::Pass);
    assert_eq!(sampled.rank_stable, Some(true));
    assert_eq!(sampled.sampled_points.as_ref().unwrap().len(), 3);
    let ranks = |c: &FreenessCertificate| c.degrees.iter().map(|r| r.rank).collect::<Vec<_>>();
    assert_eq!(ranks(&exact), vec![1, 4, 10, 20, 35, 56]);
    assert_eq!(ranks(&exact), ranks(&sampled));
}

#[test]
fn certify_right_module_n2() {
    let mut cfg = CertifyConfig::new(2, 4, Mode::Exact);
    cfg.side = Side::Right;
    let c = certify_freeness_with(&cfg).unwrap();
    assert_eq!(c.verdict, Verdict::Pass);
    assert_eq!(c.side, Side::Right);
}

#[test]
fn corrupted_bases_fail() {
    let mut cfg = CertifyConfig::new(2, 3, Mode::Exact);
    cfg.slack = -1;
    let c = certify_freeness_with(&cfg).unwrap();
    assert_eq!(c.verdict, Verdict::Fail);
    assert_eq!(c.first_failure(), Some(0));

    // With the bound a_ii <= i the counts overshoot from degree 1 on.
    cfg.slack = 1;
    let c = certify_freeness_with(&cfg).unwrap();
    assert_eq!(c.verdict, Verdict::Fail);
    assert_eq!(c.first_failure(), Some(1));
    assert_eq!(c.degrees[1].candidate_count, 5);
    assert_eq!(c.degrees[1].rank, 4);
}

#[test]
fn certify_rejects_bad_arguments() {
    assert!(certify_freeness(2, 0, Mode::Exact, 0).is_err());
    assert!(certify_freeness(2, 3, Mode::Sampled, 0).is_err());
    assert!(certify_freeness(0, 3, Mode::Exact, 0).is_err());
}

#[test]
fn certificate_serializes_with_spec_field_names() {
    let c = certify_freeness(1, 1, Mode::Exact, 0).unwrap();
    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["degrees"][0]["dim_A"], 1);
    assert_eq!(json["verdict"], "pass");
    assert_eq!(json["mode"], "exact");
    assert!(json.get("elapsed_ms").is_none());
    assert!(json.get("sampled_points").is_none());
}

#[test]
fn invariant_ring_small() {
    for (n, deg) in [(1, 4), (2, 6)] {
        let r = invariant_ring_check(n, deg).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn classical_examples() {
    let m = vec![vec![1, 2], vec![3, 4]];
    let d1 = parse_expr("x[1,1] + x[2,2]", 2).unwrap();
    assert_eq!(evaluate_at_matrix(&crate::qminors::delta_d(2, 1).unwrap(), &m), ratio(5, 1));
    assert_eq!(evaluate_at_matrix(&d1, &m), ratio(5, 1));
    assert_eq!(evaluate_at_matrix(&crate::qminors::delta_d(2, 2).unwrap(), &m), ratio(-2, 1));
    assert_eq!(principal_minor_sums(&m), vec![ratio(1, 1), ratio(5, 1), ratio(-2, 1)]);

    for n in 1..=4usize {
        let id: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        for d in 1..=n {
            let v = evaluate_at_matrix(&crate::qminors::delta_d(n, d).unwrap(), &id);
            assert_eq!(v, ratio(binom(n as u64, d as u64) as i64, 1));
        }
    }
    // Characteristic polynomial t^3 - 6t^2 - 2t + 7.
    let m = vec![vec![1, 2, 0], vec![3, 4, 1], vec![0, 5, 1]];
    assert_eq!(
        principal_minor_sums(&m),
        vec![ratio(1, 1), ratio(6, 1), ratio(-2, 1), ratio(-7, 1)]
    );
}

#[test]
fn classical_oracle_random() {
    for n in 1..=3 {
        let r = classical_oracle_check(n, 3, 20, 100, DEFAULT_SEED).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
