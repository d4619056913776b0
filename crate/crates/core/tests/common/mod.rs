//! Shared test helpers: random instance generation and a brute-force basis oracle that
//! shares no code path with the tableau.

#![allow(dead_code)]

use exactfit::{DataSet, Rational, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_i64(v)).collect()
}

pub fn dataset(points: &[(i64, i64)]) -> DataSet<Rational> {
    DataSet::new(
        points
            .iter()
            .map(|&(x, y)| (Rational::from_i64(x), Rational::from_i64(y)))
            .collect(),
    )
    .unwrap()
}

/// `len` distinct integer nodes in [-9, 9] in random order, integer ordinates in
/// [y_min, y_max].
pub fn random_integer_points<R: Rng>(
    rng: &mut R,
    len: usize,
    y_min: i64,
    y_max: i64,
) -> Vec<(i64, i64)> {
    let mut pool: Vec<i64> = (-9..=9).collect();
    pool.shuffle(rng);
    pool.truncate(len);
    pool.into_iter()
        .map(|x| (x, rng.gen_range(y_min..=y_max)))
        .collect()
}

/// Distinct nodes in [1, 10] with pairwise separation >= 0.5.
pub fn separated_nodes<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let nodes: Vec<f64> = (0..len).map(|_| rng.gen_range(1.0..=10.0)).collect();
        let separated = nodes
            .iter()
            .enumerate()
            .all(|(i, a)| nodes[..i].iter().all(|b| (a - b).abs() >= 0.5));
        if separated {
            return nodes;
        }
    }
}

/// Coefficients of Π_{m≠k} (x - x_m) by summing over subsets of the other nodes:
/// the coefficient of x^j is (-1)^(len-1-j) times the sum of products of every
/// (len-1-j)-subset.
pub fn brute_force_deflated(nodes: &[Rational], k: usize) -> Vec<Rational> {
    let others: Vec<&Rational> = nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != k)
        .map(|(_, x)| x)
        .collect();
    let degree = others.len();
    let mut coefficients = vec![Rational::zero(); degree + 1];
    for mask in 0u32..(1 << degree) {
        let chosen = mask.count_ones() as usize;
        let product = (0..degree)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(Rational::one(), |acc, i| acc * others[i].clone());
        let signed = if chosen % 2 == 0 { product } else { -product };
        let j = degree - chosen;
        coefficients[j] = coefficients[j].clone() + signed;
    }
    coefficients
}

/// Cardinal basis row of node `k`, expanded by brute force.
pub fn brute_force_basis_row(nodes: &[Rational], k: usize) -> Vec<Rational> {
    let denominator = nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != k)
        .fold(Rational::one(), |acc, (_, x)| {
            acc * (nodes[k].clone() - x.clone())
        });
    brute_force_deflated(nodes, k)
        .into_iter()
        .map(|c| c.checked_div(&denominator).unwrap())
        .collect()
}

/// Σ c_j x^j with explicit powers.
pub fn naive_eval<S: Scalar>(coefficients: &[S], x: &S) -> S {
    let mut sum = S::zero();
    for (j, c) in coefficients.iter().enumerate() {
        let mut power = S::one();
        for _ in 0..j {
            power = power * x.clone();
        }
        sum = sum + c.clone() * power;
    }
    sum
}

/// max |a - b| / max |b|, or the absolute difference when `b` is all zero.
pub fn normwise_relative(a: &[f64], b: &[f64]) -> f64 {
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let scale = b.iter().map(|y| y.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
