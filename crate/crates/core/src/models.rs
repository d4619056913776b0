//! Polynomial and exponential exact-fit models.
//!
//! Both fits take the first data point `(x_0, p)` as the base point. The polynomial
//! model is `Y = p + a_0 + a_1 X + ... + a_n X^n`, with each adjustment
//! `a_j = Σ_{k≥1} (y_k - p) F[k][j]`. The exponential model is
//! `Y = p · a_0 · a_1^X · ... · a_n^(X^n)` with `ln a_j = Σ_{k≥1} ln(y_k / p) F[k][j]`.

use crate::numeric::Scalar;
use crate::tableau::{basis_matrix, NodeSet};
use crate::FitError;

/// Ordered sample points with pairwise-distinct abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet<S> {
    points: Vec<(S, S)>,
}

impl<S: Scalar> DataSet<S> {
    pub fn new(points: Vec<(S, S)>) -> Result<Self, FitError> {
        if points.is_empty() {
            return Err(FitError::Empty);
        }
        for second in 0..points.len() {
            if let Some(first) = points[..second]
                .iter()
                .position(|p| p.0 == points[second].0)
            {
                return Err(FitError::DuplicateNode { first, second });
            }
        }
        Ok(DataSet { points })
    }

    pub fn from_columns(xs: Vec<S>, ys: Vec<S>) -> Result<Self, FitError> {
        if xs.len() != ys.len() {
            return Err(FitError::LengthMismatch {
                expected: xs.len(),
                found: ys.len(),
            });
        }
        DataSet::new(xs.into_iter().zip(ys).collect())
    }

    pub fn points(&self) -> &[(S, S)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xs(&self) -> impl Iterator<Item = &S> {
        self.points.iter().map(|(x, _)| x)
    }

    pub fn ys(&self) -> impl Iterator<Item = &S> {
        self.points.iter().map(|(_, y)| y)
    }

    pub fn nodes(&self) -> NodeSet<S> {
        NodeSet::from_validated(self.xs().cloned().collect())
    }

    /// Same points in a different order; `order` must be a permutation of `0..len`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.points.len(), "permutation length");
        DataSet {
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }
}

/// Fitted polynomial.
///
/// Keeps the base value `p` and the adjustments `a_j` alongside the combined monomial
/// coefficients `c_0 = p + a_0`, `c_j = a_j`. Equality compares `c` only: the split
/// depends on which point came first, the polynomial does not.
#[derive(Debug, Clone)]
pub struct PolynomialModel<S> {
    base_value: S,
    adjustments: Vec<S>,
    coefficients: Vec<S>,
}

impl<S: Scalar> PolynomialModel<S> {
    /// Model with the given monomial coefficients and no base split (`p = 0`).
    pub fn from_coefficients(coefficients: Vec<S>) -> Self {
        let coefficients = if coefficients.is_empty() {
            vec![S::zero()]
        } else {
            coefficients
        };
        PolynomialModel {
            base_value: S::zero(),
            adjustments: coefficients.clone(),
            coefficients,
        }
    }

    fn from_split(base_value: S, adjustments: Vec<S>) -> Self {
        let mut coefficients = adjustments.clone();
        coefficients[0] = base_value.clone() + coefficients[0].clone();
        PolynomialModel {
            base_value,
            adjustments,
            coefficients,
        }
    }

    pub fn base_value(&self) -> &S {
        &self.base_value
    }

    pub fn adjustments(&self) -> &[S] {
        &self.adjustments
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn eval(&self, x: &S) -> S {
        horner(&self.coefficients, x)
    }

    pub fn to_f64(&self) -> PolynomialModel<f64> {
        PolynomialModel {
            base_value: self.base_value.to_f64(),
            adjustments: self.adjustments.iter().map(Scalar::to_f64).collect(),
            coefficients: self.coefficients.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<S: Scalar> PartialEq for PolynomialModel<S> {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients
    }
}

/// Fitted exponential `Y = p · exp(Σ β_j X^j)`, i.e. factors `a_j = exp(β_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialModel {
    base_value: f64,
    log_coefficients: Vec<f64>,
}

impl ExponentialModel {
    /// Rejects `p <= 0`, non-finite values and an empty coefficient list.
    pub fn new(base_value: f64, log_coefficients: Vec<f64>) -> Result<Self, FitError> {
        if !(base_value > 0.0 && base_value.is_finite()) {
            return Err(FitError::NonPositiveOrdinate { index: 0 });
        }
        if log_coefficients.is_empty() {
            return Err(FitError::LengthMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(ExponentialModel {
            base_value,
            log_coefficients,
        })
    }

    pub fn base_value(&self) -> f64 {
        self.base_value
    }

    pub fn log_coefficients(&self) -> &[f64] {
        &self.log_coefficients
    }

    /// `a_j = exp(β_j)`.
    pub fn factors(&self) -> Vec<f64> {
        self.log_coefficients.iter().map(|b| b.exp()).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.base_value * horner(&self.log_coefficients, &x).exp()
    }
}

/// Σ c_j x^j by Horner's scheme; `coefficients` in ascending powers.
pub fn horner<S: Scalar>(coefficients: &[S], x: &S) -> S {
    coefficients
        .iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

pub fn fit_polynomial<S: Scalar>(data: &DataSet<S>) -> Result<PolynomialModel<S>, FitError> {
    let points = data.points();
    let base = points[0].1.clone();
    let n = data.len() - 1;
    let mut adjustments = vec![S::zero(); n + 1];
    if n > 0 {
        let basis = basis_matrix(&data.nodes())?;
        for (k, (_, y)) in points.iter().enumerate().skip(1) {
            let lift = y.clone() - base.clone();
            for (a, f) in adjustments.iter_mut().zip(basis.row(k)) {
                *a = a.clone() + lift.clone() * f.clone();
            }
        }
    }
    Ok(PolynomialModel::from_split(base, adjustments))
}

pub fn eval_polynomial<S: Scalar>(model: &PolynomialModel<S>, x: &S) -> S {
    model.eval(x)
}

/// The basis matrix is computed in `S` and converted to binary64 only at the end;
/// logarithms are always binary64.
pub fn fit_exponential<S: Scalar>(data: &DataSet<S>) -> Result<ExponentialModel, FitError> {
    let points = data.points();
    if let Some(index) = points.iter().position(|(_, y)| *y <= S::zero()) {
        return Err(FitError::NonPositiveOrdinate { index });
    }
    let base = &points[0].1;
    let n = data.len() - 1;
    let mut log_coefficients = vec![0.0; n + 1];
    if n > 0 {
        let basis = basis_matrix(&data.nodes())?.to_f64();
        for (k, (_, y)) in points.iter().enumerate().skip(1) {
            let log_ratio = y.checked_div(base)?.to_f64().ln();
            for (b, f) in log_coefficients.iter_mut().zip(basis.row(k)) {
                *b += log_ratio * f;
            }
        }
    }
    ExponentialModel::new(base.to_f64(), log_coefficients)
}

pub fn eval_exponential(model: &ExponentialModel, x: f64) -> f64 {
    model.eval(x)
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
    fn worked_polynomial_example() {
        let model = fit_polynomial(&data(&[(2, 8), (3, 11), (5, 18)])).unwrap();
        assert_eq!(model.base_value(), &q(8, 1));
        assert_eq!(model.adjustments(), [q(-5, 1), q(13, 6), q(1, 6)]);
        assert_eq!(model.coefficients(), [q(3, 1), q(13, 6), q(1, 6)]);
    }

    #[test]
    fn polynomial_refit_of_exponential_data() {
        let model = fit_polynomial(&data(&[(2, 50), (3, 250), (5, 6250)])).unwrap();
        assert_eq!(model.adjustments(), [q(5200, 1), q(-13400, 3), q(2800, 3)]);
        assert_eq!(model.coefficients(), [q(5250, 1), q(-13400, 3), q(2800, 3)]);
    }

    #[test]
    fn single_point_is_constant() {
        let model = fit_polynomial(&data(&[(7, 9)])).unwrap();
        assert_eq!(model.coefficients(), [q(9, 1)]);
        assert_eq!(model.adjustments(), [q(0, 1)]);
    }

    #[test]
    fn collinear_data_has_zero_leading_coefficient() {
        let model = fit_polynomial(&data(&[(0, 1), (1, 3), (2, 5)])).unwrap();
        assert_eq!(model.coefficients(), [q(1, 1), q(2, 1), q(0, 1)]);
    }

    #[test]
    fn horner_evaluation() {
        let model = PolynomialModel::from_coefficients(vec![q(3, 1), q(13, 6), q(1, 6)]);
        assert_eq!(eval_polynomial(&model, &q(5, 1)), q(18, 1));
        assert_eq!(eval_polynomial(&model, &q(0, 1)), q(3, 1));
        let refit = PolynomialModel::from_coefficients(vec![q(5250, 1), q(-13400, 3), q(2800, 3)]);
        assert_eq!(eval_polynomial(&refit, &q(3, 1)), q(250, 1));
    }

    #[test]
    fn worked_exponential_example() {
        let model = fit_exponential(&data(&[(2, 50), (3, 250), (5, 6250)])).unwrap();
        let factors = model.factors();
        assert!((factors[0] - 0.04).abs() <= 1e-12, "{factors:?}");
        assert!((factors[1] - 5.0).abs() <= 1e-12, "{factors:?}");
        assert!((factors[2] - 1.0).abs() <= 1e-12, "{factors:?}");
        let rel = |got: f64, want: f64| ((got - want) / want).abs();
        assert!(rel(model.eval(5.0), 6250.0) <= 1e-9);
        assert!(rel(model.eval(4.0), 1250.0) <= 1e-9);
    }

    #[test]
    fn exponential_single_point() {
        let model = fit_exponential(&data(&[(3, 7)])).unwrap();
        assert_eq!(model.log_coefficients(), [0.0]);
        assert_eq!(model.eval(3.0), 7.0);
        assert_eq!(model.eval(-100.0), 7.0);
    }

    #[test]
    fn exponential_through_e() {
        let ds = DataSet::new(vec![(0.0, 1.0), (1.0, std::f64::consts::E)]).unwrap();
        let model = fit_exponential(&ds).unwrap();
        assert!(model.log_coefficients()[0].abs() <= 1e-15);
        assert!((model.log_coefficients()[1] - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn exponential_rejects_non_positive() {
        assert_eq!(
            fit_exponential(&data(&[(1, 2), (2, -1)])),
            Err(FitError::NonPositiveOrdinate { index: 1 })
        );
        assert_eq!(
            fit_exponential(&data(&[(1, 0)])),
            Err(FitError::NonPositiveOrdinate { index: 0 })
        );
    }

    #[test]
    fn exponential_overflow_propagates() {
        let model = ExponentialModel::new(1.0, vec![0.0, 1.0]).unwrap();
        assert_eq!(model.eval(1e6), f64::INFINITY);
    }

    #[test]
    fn duplicate_x_rejected() {
        let points = vec![(q(1, 2), q(1, 1)), (q(2, 4), q(2, 1))];
        assert_eq!(
            DataSet::new(points),
            Err(FitError::DuplicateNode {
                first: 0,
                second: 1
            })
        );
    }
}
