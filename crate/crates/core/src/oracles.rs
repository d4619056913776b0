//! Classical interpolation routes used as independent ground truth: Newton divided
//! differences, Vandermonde elimination, and barycentric Lagrange evaluation.

use std::fmt;
use std::str::FromStr;

use crate::models::{fit_polynomial, DataSet, PolynomialModel};
use crate::numeric::{cmp_scalar, Arith, Scalar};
use crate::FitError;

/// Newton form from the divided-difference table, expanded to monomial coefficients.
pub fn newton_fit<S: Scalar>(data: &DataSet<S>) -> Result<PolynomialModel<S>, FitError> {
    let xs: Vec<S> = data.xs().cloned().collect();
    let mut table: Vec<S> = data.ys().cloned().collect();
    let len = xs.len();
    for order in 1..len {
        for i in (order..len).rev() {
            let rise = table[i].clone() - table[i - 1].clone();
            let run = xs[i].clone() - xs[i - order].clone();
            table[i] = rise.checked_div(&run)?;
        }
    }

    // p(x) = d_0 + (x - x_0)(d_1 + (x - x_1)(d_2 + ...)), expanded from the inside out.
    let mut poly = vec![table[len - 1].clone()];
    for i in (0..len - 1).rev() {
        let mut next = vec![S::zero(); poly.len() + 1];
        for (m, c) in poly.iter().enumerate() {
            next[m + 1] = next[m + 1].clone() + c.clone();
            next[m] = next[m].clone() - xs[i].clone() * c.clone();
        }
        next[0] = next[0].clone() + table[i].clone();
        poly = next;
    }
    Ok(PolynomialModel::from_coefficients(poly))
}

/// Solves `V c = y` with `V[i][j] = x_i^j` by Gaussian elimination.
///
/// Exact arithmetic pivots on the first nonzero entry; binary64 uses partial pivoting.
pub fn vandermonde_fit<S: Scalar>(data: &DataSet<S>) -> Result<PolynomialModel<S>, FitError> {
    let len = data.len();
    let mut rows: Vec<Vec<S>> = data
        .points()
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(len + 1);
            let mut power = S::one();
            for _ in 0..len {
                row.push(power.clone());
                power = power * x.clone();
            }
            row.push(y.clone());
            row
        })
        .collect();

    for col in 0..len {
        let pivot = match S::ARITH {
            Arith::Exact => (col..len).find(|&r| !rows[r][col].is_zero()),
            Arith::F64 => (col..len)
                .max_by(|&a, &b| cmp_scalar(&rows[a][col].abs(), &rows[b][col].abs()))
                .filter(|&r| !rows[r][col].is_zero()),
        };
        let Some(pivot) = pivot else {
            return Err(FitError::Numeric(
                crate::numeric::NumericError::DivisionByZero,
            ));
        };
        rows.swap(col, pivot);
        for r in col + 1..len {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].checked_div(&rows[col][col])?;
            for c in col..=len {
                let delta = factor.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
    }

    let mut coefficients = vec![S::zero(); len];
    for r in (0..len).rev() {
        let mut acc = rows[r][len].clone();
        for c in r + 1..len {
            acc = acc - rows[r][c].clone() * coefficients[c].clone();
        }
        coefficients[r] = acc.checked_div(&rows[r][r])?;
    }
    Ok(PolynomialModel::from_coefficients(coefficients))
}

/// Barycentric weights `w_k = 1 / Π_{m≠k} (x_k - x_m)`.
pub fn barycentric_weights<S: Scalar>(data: &DataSet<S>) -> Result<Vec<S>, FitError> {
    let xs: Vec<&S> = data.xs().collect();
    xs.iter()
        .enumerate()
        .map(|(k, x_k)| {
            let product = xs
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .fold(S::one(), |acc, (_, x_m)| {
                    acc * ((*x_k).clone() - (*x_m).clone())
                });
            S::one().checked_div(&product).map_err(FitError::from)
        })
        .collect()
}

/// Evaluates the interpolant at `x` in barycentric form; returns `y_k` when `x` is a node.
pub fn barycentric_eval<S: Scalar>(data: &DataSet<S>, x: &S) -> Result<S, FitError> {
    if let Some((_, y)) = data.points().iter().find(|(node, _)| node == x) {
        return Ok(y.clone());
    }
    let weights = barycentric_weights(data)?;
    let mut numerator = S::zero();
    let mut denominator = S::zero();
    for ((node, y), w) in data.points().iter().zip(weights) {
        let term = w.checked_div(&(x.clone() - node.clone()))?;
        numerator = numerator + term.clone() * y.clone();
        denominator = denominator + term;
    }
    Ok(numerator.checked_div(&denominator)?)
}

/// Independent method the tableau fit is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    Newton,
    Vandermonde,
    Barycentric,
}

impl Oracle {
    pub const ALL: [Oracle; 3] = [Oracle::Newton, Oracle::Vandermonde, Oracle::Barycentric];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Newton => "newton",
            Oracle::Vandermonde => "vandermonde",
            Oracle::Barycentric => "barycentric",
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Oracle::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| format!("unknown oracle {s:?}"))
    }
}

/// Outcome of comparing the tableau fit with one oracle.
///
/// In exact mode both discrepancies are absolute and must be zero to pass. In binary64
/// mode they are relative: coefficient differences against the largest oracle
/// coefficient, and evaluation differences against `Σ |c_j x^j|` at the point. For the
/// barycentric oracle the coefficient field holds the evaluation discrepancy over the
/// nodes and the midpoints between neighbouring nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<S> {
    pub method: Oracle,
    pub max_coefficient_discrepancy: S,
    pub max_nodal_residual: S,
    pub pass: bool,
}

impl<S: Scalar> fmt::Display for VerificationReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "method={} pass={} max_coefficient_discrepancy={} max_nodal_residual={}",
            self.method, self.pass, self.max_coefficient_discrepancy, self.max_nodal_residual
        )
    }
}

/// Fits `data` with the tableau method and checks it against `oracle`. `tolerance` is
/// the relative threshold for binary64 and is ignored in exact mode.
pub fn verify<S: Scalar>(
    data: &DataSet<S>,
    oracle: Oracle,
    tolerance: f64,
) -> Result<VerificationReport<S>, FitError> {
    let model = fit_polynomial(data)?;
    let coefficients = model.coefficients();

    let max_coefficient_discrepancy = match oracle {
        Oracle::Newton | Oracle::Vandermonde => {
            let reference = match oracle {
                Oracle::Newton => newton_fit(data)?,
                _ => vandermonde_fit(data)?,
            };
            let reference = reference.coefficients();
            let diff = max_of(
                coefficients
                    .iter()
                    .zip(reference)
                    .map(|(c, r)| (c.clone() - r.clone()).abs()),
            );
            let scale = max_of(reference.iter().map(Scalar::abs));
            relative(diff, scale)?
        }
        Oracle::Barycentric => {
            let mut probes: Vec<S> = data.xs().cloned().collect();
            probes.sort_by(cmp_scalar);
            let two = S::from_i64(2);
            let midpoints = probes
                .windows(2)
                .map(|w| (w[0].clone() + w[1].clone()).checked_div(&two))
                .collect::<Result<Vec<_>, _>>()?;
            probes.extend(midpoints);
            let mut worst = S::zero();
            for x in &probes {
                let expected = barycentric_eval(data, x)?;
                let diff = (model.eval(x) - expected.clone()).abs();
                let scale = max_of([magnitude_sum(coefficients, x), expected.abs()]);
                worst = max_of([worst, relative(diff, scale)?]);
            }
            worst
        }
    };

    let mut max_nodal_residual = S::zero();
    for (x, y) in data.points() {
        let diff = (model.eval(x) - y.clone()).abs();
        let scale = max_of([magnitude_sum(coefficients, x), y.abs()]);
        max_nodal_residual = max_of([max_nodal_residual, relative(diff, scale)?]);
    }

    let within = |v: &S| match S::ARITH {
        Arith::Exact => v.is_zero(),
        Arith::F64 => v.to_f64() <= tolerance,
    };
    let pass = within(&max_coefficient_discrepancy) && within(&max_nodal_residual);
    Ok(VerificationReport {
        method: oracle,
        max_coefficient_discrepancy,
        max_nodal_residual,
        pass,
    })
}

fn max_of<S: Scalar>(values: impl IntoIterator<Item = S>) -> S {
    values
        .into_iter()
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}

/// Σ |c_j x^j|, the natural scale of a polynomial evaluation at `x`.
fn magnitude_sum<S: Scalar>(coefficients: &[S], x: &S) -> S {
    let x = x.abs();
    coefficients
        .iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * x.clone() + c.abs())
}

fn relative<S: Scalar>(diff: S, scale: S) -> Result<S, FitError> {
    match S::ARITH {
        Arith::Exact => Ok(diff),
        Arith::F64 if scale.is_zero() => Ok(diff),
        Arith::F64 => Ok(diff.checked_div(&scale)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn data(points: &[(i64, i64)]) -> DataSet<Rational> {
        DataSet::new(
            points
                .iter()
                .map(|&(x, y)| (Rational::from_i64(x), Rational::from_i64(y)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn newton_examples() {
        let m = newton_fit(&data(&[(2, 8), (3, 11), (5, 18)])).unwrap();
        assert_eq!(m.coefficients(), [q(3, 1), q(13, 6), q(1, 6)]);
        let m = newton_fit(&data(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(m.coefficients(), [q(1, 1), q(0, 1)]);
    }

    #[test]
    fn vandermonde_examples() {
        let m = vandermonde_fit(&data(&[(2, 50), (3, 250), (5, 6250)])).unwrap();
        assert_eq!(m.coefficients(), [q(5250, 1), q(-13400, 3), q(2800, 3)]);
        let m = vandermonde_fit(&data(&[(-4, 17)])).unwrap();
        assert_eq!(m.coefficients(), [q(17, 1)]);
        // Hand elimination: c0 + c1 + c2 = 2, c1 + 3 c2 = 1, 2 c2 = 1.
        let m = vandermonde_fit(&data(&[(1, 2), (2, 3), (3, 5)])).unwrap();
        assert_eq!(m.coefficients(), [q(2, 1), q(-1, 2), q(1, 2)]);
    }

    #[test]
    fn vandermonde_with_zero_node() {
        let m = vandermonde_fit(&data(&[(1, 1), (0, 0), (-1, 1)])).unwrap();
        assert_eq!(m.coefficients(), [q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn barycentric_examples() {
        let ds = data(&[(2, 8), (3, 11), (5, 18)]);
        assert_eq!(barycentric_eval(&ds, &q(3, 1)).unwrap(), q(11, 1));
        assert_eq!(barycentric_eval(&ds, &q(0, 1)).unwrap(), q(3, 1));
        let single = data(&[(4, -6)]);
        assert_eq!(barycentric_eval(&single, &q(-7, 3)).unwrap(), q(-6, 1));
    }

    #[test]
    fn five_point_newton_matches_vandermonde() {
        let ds = data(&[(-9, 4), (-2, -7), (0, 3), (5, 99), (8, -50)]);
        assert_eq!(newton_fit(&ds).unwrap(), vandermonde_fit(&ds).unwrap());
    }

    #[test]
    fn verify_exact_passes_on_worked_example() {
        let ds = data(&[(2, 8), (3, 11), (5, 18)]);
        for oracle in Oracle::ALL {
            let report = verify(&ds, oracle, 1e-8).unwrap();
            assert!(report.pass, "{report}");
            assert!(report.max_coefficient_discrepancy.is_zero());
            assert!(report.max_nodal_residual.is_zero());
        }
    }

    #[test]
    fn verify_f64_reports_relative_discrepancy() {
        let ds = DataSet::new(vec![(1.0, 2.0), (2.5, -1.0), (4.0, 7.0), (9.5, 3.0)]).unwrap();
        for oracle in Oracle::ALL {
            let report = verify(&ds, oracle, 1e-8).unwrap();
            assert!(report.pass, "{report}");
            assert!(report.max_coefficient_discrepancy < 1e-12);
        }
        let report = verify(&ds, Oracle::Newton, 0.0).unwrap();
        assert_eq!(
            report.pass,
            report.max_coefficient_discrepancy == 0.0 && report.max_nodal_residual == 0.0
        );
    }

    #[test]
    fn report_display() {
        let ds = data(&[(2, 8), (3, 11), (5, 18)]);
        let report = verify(&ds, Oracle::Vandermonde, 1e-8).unwrap();
        assert_eq!(
            report.to_string(),
            "method=vandermonde pass=true max_coefficient_discrepancy=0 max_nodal_residual=0"
        );
    }
}
