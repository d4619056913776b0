//! Node polynomial table, per-node deflation and the cardinal basis matrix.
//!
//! Node indices are 0-based. The first node plays the role of the base point in the
//! fit formulas; the remaining nodes `1..=n` are the ones whose basis rows are summed.
//! Every coefficient vector is stored in ascending powers of `x`.

use crate::numeric::Scalar;
use crate::FitError;

/// Pairwise-distinct abscissae `x_0..x_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet<S> {
    nodes: Vec<S>,
}

impl<S: Scalar> NodeSet<S> {
    pub fn new(nodes: Vec<S>) -> Result<Self, FitError> {
        if nodes.is_empty() {
            return Err(FitError::Empty);
        }
        for (second, x) in nodes.iter().enumerate() {
            if let Some(first) = nodes[..second].iter().position(|y| y == x) {
                return Err(FitError::DuplicateNode { first, second });
            }
        }
        Ok(NodeSet { nodes })
    }

    /// Caller guarantees non-empty, pairwise distinct nodes.
    pub(crate) fn from_validated(nodes: Vec<S>) -> Self {
        debug_assert!(!nodes.is_empty());
        NodeSet { nodes }
    }

    pub fn nodes(&self) -> &[S] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Polynomial degree `n` supported by these `n + 1` nodes.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Negated monomial coefficients `N_0..N_{n+1}` of the node polynomial `Π (x - x_i)`.
///
/// The leading entry is always `-1`, and every node is a root.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeCoefficients<S> {
    values: Vec<S>,
}

impl<S: Scalar> NodeCoefficients<S> {
    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }
}

/// Monic coefficients of `Π_{m≠k} (x - x_m)`, obtained by dividing the node polynomial
/// by `(x - x_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflatedCoefficients<S> {
    node: usize,
    values: Vec<S>,
}

impl<S: Scalar> DeflatedCoefficients<S> {
    pub fn node(&self) -> usize {
        self.node
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// `F[k][j]`: coefficient of `x^j` in the cardinal basis polynomial of node `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisMatrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> BasisMatrix<S> {
    pub fn row(&self, node: usize) -> &[S] {
        &self.rows[node]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn get(&self, node: usize, power: usize) -> &S {
        &self.rows[node][power]
    }

    /// Number of rows, equal to the number of nodes.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_f64(&self) -> BasisMatrix<f64> {
        BasisMatrix {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }
}

/// Builds `N` row by row: start from `[-1]` and, for each node `x_i`, replace the row
/// `r` with `r'[m] = (-x_i) * r[m] + r[m - 1]` (a missing cell counts as zero).
pub fn node_coefficients<S: Scalar>(nodes: &NodeSet<S>) -> NodeCoefficients<S> {
    let mut row = vec![-S::one()];
    for x in nodes.nodes() {
        let neg_x = -x.clone();
        let mut next = Vec::with_capacity(row.len() + 1);
        for m in 0..=row.len() {
            let right = row
                .get(m)
                .map_or_else(S::zero, |r| neg_x.clone() * r.clone());
            let left = if m == 0 {
                S::zero()
            } else {
                row[m - 1].clone()
            };
            next.push(right + left);
        }
        row = next;
    }
    NodeCoefficients { values: row }
}

/// Synthetic division of the node polynomial by `(x - x_k)`:
/// `Q_n = 1`, then `Q_j = x_k * Q_{j+1} - N_{j+1}` for `j = n-1, ..., 0`.
pub fn deflate<S: Scalar>(
    coefficients: &NodeCoefficients<S>,
    nodes: &NodeSet<S>,
    node: usize,
) -> Result<DeflatedCoefficients<S>, FitError> {
    let n = nodes.degree();
    if node > n {
        return Err(FitError::NodeIndexOutOfRange {
            index: node,
            len: nodes.len(),
        });
    }
    let big_n = coefficients.values();
    if big_n.len() != n + 2 {
        return Err(FitError::LengthMismatch {
            expected: n + 2,
            found: big_n.len(),
        });
    }
    let x_k = &nodes.nodes()[node];
    let mut values = vec![S::zero(); n + 1];
    values[n] = S::one();
    for j in (0..n).rev() {
        values[j] = x_k.clone() * values[j + 1].clone() - big_n[j + 1].clone();
    }
    Ok(DeflatedCoefficients { node, values })
}

/// Cardinal basis matrix: row `k` is the deflation at node `k` divided by
/// `D_k = Π_{m≠k} (x_k - x_m)`. All rows are computed, including the base node's.
pub fn basis_matrix<S: Scalar>(nodes: &NodeSet<S>) -> Result<BasisMatrix<S>, FitError> {
    let big_n = node_coefficients(nodes);
    let xs = nodes.nodes();
    let mut rows = Vec::with_capacity(xs.len());
    for (k, x_k) in xs.iter().enumerate() {
        let denominator = xs
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .fold(S::one(), |acc, (_, x_m)| acc * (x_k.clone() - x_m.clone()));
        let deflated = deflate(&big_n, nodes, k)?;
        let row = deflated
            .values
            .iter()
            .map(|q| q.checked_div(&denominator))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(BasisMatrix { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| Rational::from_i64(v)).collect()
    }

    fn sample_nodes() -> NodeSet<Rational> {
        NodeSet::new(ints(&[2, 3, 5])).unwrap()
    }

    #[test]
    fn node_coefficients_examples() {
        assert_eq!(
            node_coefficients(&sample_nodes()).values(),
            ints(&[30, -31, 10, -1])
        );
        let single = NodeSet::new(ints(&[4])).unwrap();
        assert_eq!(node_coefficients(&single).values(), ints(&[4, -1]));
        let pair = NodeSet::new(ints(&[1, -1])).unwrap();
        assert_eq!(node_coefficients(&pair).values(), ints(&[1, 0, -1]));
    }

    #[test]
    fn node_coefficients_match_symmetric_sums_for_four_symbols() {
        // N0 = -abcd, N1 = abc+abd+acd+bcd, N2 = -(ab+ac+ad+bc+bd+cd), N3 = a+b+c+d, N4 = -1
        let (a, b, c, d) = (2i64, -3, 7, 11);
        let expected = [
            -(a * b * c * d),
            a * b * c + a * b * d + a * c * d + b * c * d,
            -(a * b + a * c + a * d + b * c + b * d + c * d),
            a + b + c + d,
            -1,
        ];
        let nodes = NodeSet::new(ints(&[a, b, c, d])).unwrap();
        assert_eq!(node_coefficients(&nodes).values(), ints(&expected));
    }

    #[test]
    fn deflate_examples() {
        let nodes = sample_nodes();
        let big_n = node_coefficients(&nodes);
        assert_eq!(
            deflate(&big_n, &nodes, 1).unwrap().values(),
            ints(&[10, -7, 1])
        );
        assert_eq!(
            deflate(&big_n, &nodes, 2).unwrap().values(),
            ints(&[6, -5, 1])
        );
        assert_eq!(
            deflate(&big_n, &nodes, 0).unwrap().values(),
            ints(&[15, -8, 1])
        );
    }

    #[test]
    fn deflate_rejects_bad_index() {
        let nodes = sample_nodes();
        let big_n = node_coefficients(&nodes);
        assert_eq!(
            deflate(&big_n, &nodes, 3),
            Err(FitError::NodeIndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn basis_rows_for_worked_example() {
        let f = basis_matrix(&sample_nodes()).unwrap();
        assert_eq!(f.row(1), [q(-5, 1), q(7, 2), q(-1, 2)]);
        assert_eq!(f.row(2), [q(1, 1), q(-5, 6), q(1, 6)]);
        assert_eq!(f.row(0), [q(5, 1), q(-8, 3), q(1, 3)]);
    }

    #[test]
    fn single_node_basis_is_constant_one() {
        let nodes = NodeSet::new(ints(&[7])).unwrap();
        let f = basis_matrix(&nodes).unwrap();
        assert_eq!(f.rows(), [ints(&[1])]);
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            NodeSet::new(ints(&[1, 2, 1])),
            Err(FitError::DuplicateNode {
                first: 0,
                second: 2
            })
        );
        assert_eq!(NodeSet::<Rational>::new(vec![]), Err(FitError::Empty));
        assert!(NodeSet::new(vec![0.0, -0.0]).is_err());
    }

    #[test]
    fn f64_root_property() {
        let nodes = NodeSet::new(vec![-9.5, -3.25, 0.5, 1.0, 4.75, 8.0, 9.9]).unwrap();
        let big_n = node_coefficients(&nodes);
        for x in nodes.nodes() {
            let (mut sum, mut scale, mut power) = (0.0, 0.0, 1.0);
            for n_m in big_n.values() {
                sum += n_m * power;
                scale += (n_m * power).abs();
                power *= x;
            }
            assert!(sum.abs() <= 1e-9 * scale, "residual {sum} at {x}");
        }
    }
}
