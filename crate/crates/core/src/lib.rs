//! Exact-fit interpolation.
//!
//! Given `n + 1` points with distinct abscissae, builds the unique degree-`n`
//! interpolating polynomial directly in monomial coefficients, or the exponential
//! model `Y = p · a_0 · a_1^X · ... · a_n^(X^n)` that interpolates the same points.
//! Coefficients come from a row-by-row table of the node polynomial, a synthetic
//! division per node, and the resulting cardinal basis matrix.
//!
//! ```
//! use exactfit::{fit_polynomial, DataSet, Rational, Scalar};
//!
//! let points = [(2, 8), (3, 11), (5, 18)]
//!     .iter()
//!     .map(|&(x, y)| (Rational::from_i64(x), Rational::from_i64(y)))
//!     .collect();
//! let model = fit_polynomial(&DataSet::new(points).unwrap()).unwrap();
//! let shown: Vec<String> = model.coefficients().iter().map(|c| c.to_string()).collect();
//! assert_eq!(shown, ["3", "13/6", "1/6"]);
//! ```

pub mod cli;
mod error;
pub mod io;
pub mod models;
pub mod numeric;
pub mod oracles;
pub mod tableau;

pub use error::FitError;
pub use models::{
    eval_exponential, eval_polynomial, fit_exponential, fit_polynomial, DataSet, ExponentialModel,
    PolynomialModel,
};
pub use numeric::{Arith, NumericError, Rational, Scalar};
