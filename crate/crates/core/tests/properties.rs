mod common;

use common::{brute_force_basis_row, naive_eval};
use exactfit::oracles::{barycentric_eval, newton_fit, vandermonde_fit};
use exactfit::tableau::{basis_matrix, deflate, node_coefficients, NodeSet};
use exactfit::{eval_polynomial, fit_exponential, fit_polynomial, DataSet, Rational, Scalar};
use proptest::prelude::*;

/// Distinct integer nodes in [-9, 9] (random order) with integer ordinates in [-99, 99].
fn integer_points(max_len: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::sample::subsequence((-9i64..=9).collect::<Vec<_>>(), 1..=max_len)
        .prop_shuffle()
        .prop_flat_map(|xs| {
            let len = xs.len();
            (Just(xs), proptest::collection::vec(-99i64..=99, len))
        })
        .prop_map(|(xs, ys)| xs.into_iter().zip(ys).collect())
}

fn exact(points: &[(i64, i64)]) -> DataSet<Rational> {
    common::dataset(points)
}

fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn node_coefficients_are_permutation_invariant(
        (points, order) in integer_points(8).prop_flat_map(|p| { let n = p.len(); (Just(p), permutation(n)) })
    ) {
        let ds = exact(&points);
        let shuffled = ds.permuted(&order);
        prop_assert_eq!(node_coefficients(&ds.nodes()), node_coefficients(&shuffled.nodes()));
    }

    #[test]
    fn every_node_is_a_root(points in integer_points(8)) {
        let nodes = exact(&points).nodes();
        let big_n = node_coefficients(&nodes);
        prop_assert_eq!(big_n.values().last().unwrap(), &-Rational::one());
        for x in nodes.nodes() {
            prop_assert!(naive_eval(big_n.values(), x).is_zero());
        }
    }

    #[test]
    fn deflation_convolution_identity(points in integer_points(8)) {
        let nodes = exact(&points).nodes();
        let big_n = node_coefficients(&nodes);
        let n = nodes.degree();
        for k in 0..=n {
            let q = deflate(&big_n, &nodes, k).unwrap();
            let q = q.values();
            prop_assert_eq!(&q[n], &Rational::one());
            let x_k = &nodes.nodes()[k];
            for m in 0..=n + 1 {
                let upper = if m <= n { x_k.clone() * q[m].clone() } else { Rational::zero() };
                let lower = if m >= 1 { q[m - 1].clone() } else { Rational::zero() };
                prop_assert_eq!(&big_n.values()[m], &(upper - lower));
            }
        }
    }

    #[test]
    fn basis_is_cardinal_and_partitions_unity(points in integer_points(8)) {
        let nodes = exact(&points).nodes();
        let f = basis_matrix(&nodes).unwrap();
        for (k, row) in f.rows().iter().enumerate() {
            for (m, x) in nodes.nodes().iter().enumerate() {
                let expected = if m == k { Rational::one() } else { Rational::zero() };
                prop_assert_eq!(naive_eval(row, x), expected);
            }
        }
        for j in 0..nodes.len() {
            let column = f.rows().iter().fold(Rational::zero(), |acc, row| acc + row[j].clone());
            let expected = if j == 0 { Rational::one() } else { Rational::zero() };
            prop_assert_eq!(column, expected);
        }
    }

    #[test]
    fn basis_matches_brute_force_expansion(points in integer_points(5)) {
        let nodes = exact(&points).nodes();
        let f = basis_matrix(&nodes).unwrap();
        for k in 0..nodes.len() {
            let expected = brute_force_basis_row(nodes.nodes(), k);
            prop_assert_eq!(f.row(k), expected.as_slice());
        }
    }

    #[test]
    fn fit_interpolates_exactly(points in integer_points(8)) {
        let ds = exact(&points);
        let model = fit_polynomial(&ds).unwrap();
        prop_assert_eq!(model.coefficients().len(), ds.len());
        for (x, y) in ds.points() {
            prop_assert_eq!(&eval_polynomial(&model, x), y);
        }
    }

    #[test]
    fn coefficients_do_not_depend_on_base_point(
        (points, order) in integer_points(8).prop_flat_map(|p| { let n = p.len(); (Just(p), permutation(n)) })
    ) {
        let ds = exact(&points);
        let a = fit_polynomial(&ds).unwrap();
        let b = fit_polynomial(&ds.permuted(&order)).unwrap();
        prop_assert_eq!(a.coefficients(), b.coefficients());
    }

    #[test]
    fn horner_equals_naive_evaluation(points in integer_points(8), num in -99i64..=99, den in 1i64..=20) {
        let model = fit_polynomial(&exact(&points)).unwrap();
        let x = Rational::new(num, den).unwrap();
        prop_assert_eq!(model.eval(&x), naive_eval(model.coefficients(), &x));
    }

    #[test]
    fn oracles_agree(points in integer_points(8), num in -99i64..=99, den in 1i64..=20) {
        let ds = exact(&points);
        let model = fit_polynomial(&ds).unwrap();
        prop_assert_eq!(&model, &newton_fit(&ds).unwrap());
        prop_assert_eq!(&model, &vandermonde_fit(&ds).unwrap());
        let x = Rational::new(num, den).unwrap();
        prop_assert_eq!(barycentric_eval(&ds, &x).unwrap(), model.eval(&x));
    }

    #[test]
    fn exponential_fit_is_the_log_domain_polynomial_fit(
        points in integer_points(8).prop_map(|p| p.into_iter().map(|(x, y)| (x, y.abs() + 1)).collect::<Vec<_>>())
    ) {
        let as_f64: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x as f64, y as f64)).collect();
        let exp_model = fit_exponential(&DataSet::new(as_f64.clone()).unwrap()).unwrap();
        let logs: Vec<(f64, f64)> = as_f64.iter().map(|&(x, y)| (x, y.ln())).collect();
        let log_fit = fit_polynomial(&DataSet::new(logs).unwrap()).unwrap();
        for (beta, a) in exp_model.log_coefficients().iter().zip(log_fit.adjustments()) {
            prop_assert!((beta - a).abs() <= 1e-12, "beta {} vs {}", beta, a);
        }
        let p = as_f64[0].1;
        prop_assert_eq!(exp_model.base_value(), p);
        for (x, y) in &as_f64 {
            let got = exp_model.eval(*x);
            prop_assert!(((got - y) / y).abs() <= 1e-9, "{} vs {}", got, y);
        }
    }

    #[test]
    fn f64_root_property(nodes in proptest::collection::vec(-10.0f64..=10.0, 1..=11)) {
        let Ok(nodes) = NodeSet::new(nodes) else { return Ok(()); };
        let big_n = node_coefficients(&nodes);
        for x in nodes.nodes() {
            let (mut sum, mut scale, mut power) = (0.0, 0.0, 1.0);
            for n_m in big_n.values() {
                sum += n_m * power;
                scale += (n_m * power).abs();
                power *= x;
            }
            prop_assert!(sum.abs() <= 1e-9 * scale, "residual {} at {}", sum, x);
        }
    }
}

#[test]
fn exact_fit_of_f64_nodes_is_exact() {
    // Every finite binary64 is a dyadic rational, so exact mode can fit f64 data without loss.
    let points = [(0.1, 0.7), (1.25, -3.5), (2.0f64.sqrt(), 1e-3)];
    let ds = DataSet::new(
        points
            .iter()
            .map(|&(x, y)| {
                (
                    Rational::from_f64(x).unwrap(),
                    Rational::from_f64(y).unwrap(),
                )
            })
            .collect(),
    )
    .unwrap();
    let model = fit_polynomial(&ds).unwrap();
    for (x, y) in ds.points() {
        assert_eq!(&model.eval(x), y);
    }
}
