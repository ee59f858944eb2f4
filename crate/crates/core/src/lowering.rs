//! The double lowering space: a brute-force solver, the normalized
//! lowering matrix, the transition operator and its power-series forms.
//!
//! All matrices are in the `tau` basis unless tagged otherwise.

use serde::Serialize;

use crate::data::Data;
use crate::error::{Error, Result};
use crate::matrix::{matrix_polynomial, nilpotent_inverse, Basis, Matrix, OperatorMatrix};
use crate::poly::{coords_in_graded_basis, Poly};
use crate::scalar::Scalar;

/// Outcome of the brute-force solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoweringSolution {
    pub dim: usize,
    /// The element with `psi(x) = 1`, present iff `dim == 1`.
    pub psi: Option<OperatorMatrix>,
}

/// The matrix with `theta_i` at `(i-1, i)` and zeros elsewhere.
pub fn candidate_psi(data: &Data) -> OperatorMatrix {
    let t = data.vartheta();
    let n = data.n();
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| {
        if j == i + 1 {
            t.get(j).clone()
        } else {
            Scalar::zero()
        }
    });
    OperatorMatrix::new(Basis::Tau, m)
}

fn transition(from: &[Poly], to: &[Poly]) -> Matrix {
    let cols: Vec<Vec<Scalar>> = to
        .iter()
        .map(|p| coords_in_graded_basis(p, from).expect("graded bases of equal size").0)
        .collect();
    Matrix::from_columns(&cols).expect("square")
}

/// Transition matrix from `tau` to `eta`: column `j` holds the `tau`
/// coordinates of `eta_j`. Also the matrix of the map `tau_i -> eta_i`.
pub fn delta(data: &Data) -> OperatorMatrix {
    OperatorMatrix::new(Basis::Tau, transition(&data.tau_basis(), &data.eta_basis()))
}

/// Column `j` holds the `eta` coordinates of `tau_j`.
pub fn delta_inv(data: &Data) -> OperatorMatrix {
    OperatorMatrix::new(Basis::Tau, transition(&data.eta_basis(), &data.tau_basis()))
}

/// Solves the raw membership constraints for the lowering space.
///
/// Unknowns `c_1..c_N` with `psi tau_i = c_i tau_{i-1}`; every `eta`
/// coordinate of `psi eta_i` other than the `eta_{i-1}` slot must vanish.
pub fn solve_lowering_space(data: &Data) -> Result<LoweringSolution> {
    let n = data.n();
    let d = delta(data).matrix;
    let dinv = delta_inv(data).matrix;
    // psi eta_i = sum_k D[k][i] c_k tau_{k-1} = sum_m (sum_k D[k][i] Dinv[m][k-1] c_k) eta_m
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 1..=n {
        for m in 0..=n {
            if m + 1 == i {
                continue;
            }
            let row: Vec<Scalar> = (1..=n)
                .map(|k| &d[(k, i)] * &dinv[(m, k - 1)])
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, n)
    } else {
        Matrix::from_rows(rows)?
    };
    let null = system.null_space();
    match null.len() {
        0 => Ok(LoweringSolution { dim: 0, psi: None }),
        1 => {
            let c = &null[0];
            let c1 = c[0].inv().map_err(|_| Error::Internal("lowering solution has c_1 = 0".into()))?;
            let m = Matrix::from_fn(n + 1, n + 1, |i, j| {
                if j == i + 1 {
                    &c[i] * &c1
                } else {
                    Scalar::zero()
                }
            });
            Ok(LoweringSolution { dim: 1, psi: Some(OperatorMatrix::new(Basis::Tau, m)) })
        }
        k => Err(Error::Internal(format!("lowering space has dimension {k}"))),
    }
}

/// As [`solve_lowering_space`].
///
/// # Panics
/// Panics if the solver finds a space of dimension two or more, or a
/// solution that cannot be normalized. Both contradict the theory and
/// indicate a bug.
pub fn lowering_space(data: &Data) -> LoweringSolution {
    solve_lowering_space(data).unwrap_or_else(|e| panic!("{e}"))
}

/// First `j` where `eta_j != sum_i eta_{j-i}(a_0) [j over i] tau_i`.
pub fn first_expansion_failure(data: &Data) -> Option<usize> {
    expansion_failure(data.a(), data.b())
}

/// First `j` where `tau_j != sum_i tau_{j-i}(b_0) [j over i] eta_i`.
pub fn first_dual_expansion_failure(data: &Data) -> Option<usize> {
    expansion_failure(data.b(), data.a())
}

fn expansion_failure(a: &[Scalar], b: &[Scalar]) -> Option<usize> {
    // theta is symmetric under swapping a and b
    let data = Data::new(a.to_vec(), b.to_vec()).expect("validated");
    let theta = data.vartheta();
    let tau = data.tau_basis();
    let eta = data.eta_basis();
    let at = data.eta_at_a0();
    (0..=data.n()).find(|&j| {
        let coeffs: Vec<Scalar> = (0..=j).map(|i| &at[j - i] * theta.bracket(j, i)).collect();
        Poly::combination(coeffs.iter().zip(&tau)) != eta[j]
    })
}

/// True iff the `eta` expansion identity holds for every `j`.
pub fn is_double_lowering_via_expansion(data: &Data) -> bool {
    first_expansion_failure(data).is_none()
}

/// True iff the dual `tau` expansion identity holds for every `j`.
pub fn is_double_lowering_via_dual_expansion(data: &Data) -> bool {
    first_dual_expansion_failure(data).is_none()
}

/// `sum_i weights[i] / (theta_1...theta_i) psi^i`.
fn psi_series(data: &Data, weights: &[Scalar]) -> Matrix {
    let theta = data.vartheta();
    let psi = candidate_psi(data).matrix;
    let coeffs: Vec<Scalar> = weights
        .iter()
        .enumerate()
        .map(|(i, w)| w / theta.ascending(i))
        .collect();
    matrix_polynomial(&psi, &coeffs)
}

/// `sum_i eta_i(a_0)/(theta_1...theta_i) psi^i`.
pub fn delta_series(data: &Data) -> OperatorMatrix {
    OperatorMatrix::new(Basis::Tau, psi_series(data, &data.eta_at_a0()))
}

/// `sum_i tau_i(b_0)/(theta_1...theta_i) psi^i`.
pub fn delta_inv_series(data: &Data) -> OperatorMatrix {
    OperatorMatrix::new(Basis::Tau, psi_series(data, &data.tau_at_b0()))
}

/// `I + (a_0 - b_0) psi`.
pub fn shift_down_delta(data: &Data) -> Matrix {
    let psi = candidate_psi(data).matrix;
    let c = &data.a()[0] - &data.b()[0];
    Matrix::identity(data.n() + 1) + psi.scale(&c)
}

/// `I + (b_0 - a_0) psi`.
pub fn shift_up_delta_inv(data: &Data) -> Matrix {
    let psi = candidate_psi(data).matrix;
    let c = &data.b()[0] - &data.a()[0];
    Matrix::identity(data.n() + 1) + psi.scale(&c)
}

/// `(I + (theta - b_0) psi) / (I + (theta - a_0) psi)` and the same with
/// `a_0`, `b_0` exchanged, as exact matrix products. Errors if the
/// numerator and denominator fail to commute.
pub fn theta_family_delta(data: &Data, theta: &Scalar) -> Result<(Matrix, Matrix)> {
    let psi = candidate_psi(data).matrix;
    let id = Matrix::identity(data.n() + 1);
    let (a0, b0) = (&data.a()[0], &data.b()[0]);
    let ratio = |num_c: Scalar, den_c: Scalar| -> Result<Matrix> {
        let num = &id + &psi.scale(&num_c);
        let den = &id + &psi.scale(&den_c);
        if !num.commutator(&den).is_zero() {
            return Err(Error::Internal("ratio numerator and denominator do not commute".into()));
        }
        Ok(num * nilpotent_inverse(&psi.scale(&-den_c))?)
    };
    Ok((ratio(theta - b0, theta - a0)?, ratio(theta - a0, theta - b0)?))
}

/// Lowering matrix conjugated into the monomial basis `1, x, x^2, ...`.
pub fn to_monomial(data: &Data, m: &Matrix) -> Matrix {
    let tau = data.tau_basis();
    let n = data.n();
    // column j = monomial coordinates of tau_j
    let p = Matrix::from_fn(n + 1, n + 1, |i, j| tau[j].coeff(i));
    let p_inv = p.inverse().expect("unit triangular");
    &(&p * m) * &p_inv
}
