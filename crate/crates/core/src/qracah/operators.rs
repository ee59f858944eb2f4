//! The operators `psi`, `K`, `B`, `M`, `Delta` and `A` as exact matrices,
//! together with the closed-form entry formulas they are checked against.
//!
//! Operators are built in the `tau` basis from polynomial coordinates only
//! (no q-exponentials) and rebased on request.

use crate::data::Data;
use crate::error::{Error, Result};
use crate::lowering::{candidate_psi, delta};
use crate::matrix::{Basis, Matrix, OperatorMatrix};
use crate::poly::{coords_in_basis, Poly};
use crate::scalar::Scalar;

use super::wbasis::{w_hypergeometric, w_unprimed_hypergeometric};
use super::{binom2, bracket_closed, eta_at_a0, q_pochhammer, tau_at_b0, QRacahParams};

/// Every operator of the calculus, written in the `tau` basis.
#[derive(Clone, Debug)]
pub struct Operators {
    pub params: QRacahParams,
    pub data: Data,
    pub psi: Matrix,
    pub k: Matrix,
    pub k_inv: Matrix,
    pub b: Matrix,
    pub b_inv: Matrix,
    pub m: Matrix,
    pub m_inv: Matrix,
    /// `tau_i -> eta_i`; also the transition matrix from `tau` to `eta`.
    pub delta: Matrix,
    pub delta_inv: Matrix,
    /// Multiplication by `x` on `V_{N-1}`, an `(N+1) x N` matrix.
    pub a: Matrix,
    /// Transition matrices from `tau` to `w` and from `eta` to `w`.
    pub tau_to_w: Matrix,
    pub eta_to_w: Matrix,
    w: Vec<Poly>,
    w_prime: Vec<Poly>,
}

fn transition(from: &[Poly], to: &[Poly]) -> Result<Matrix> {
    let cols = to.iter().map(|p| coords_in_basis(p, from).map(|c| c.0)).collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(&cols)
}

fn conj(p: &Matrix, d: &Matrix, p_inv: &Matrix) -> Matrix {
    &(p * d) * p_inv
}

impl Operators {
    pub fn new(params: &QRacahParams) -> Result<Self> {
        let data = params.data();
        let n = params.n;
        let tau = data.tau_basis();
        let eta = data.eta_basis();
        let w = (0..=n).map(|j| w_unprimed_hypergeometric(params, j)).collect::<Result<Vec<_>>>()?;
        let w_prime = (0..=n).map(|j| w_hypergeometric(params, j)).collect::<Result<Vec<_>>>()?;
        let tau_to_w = transition(&tau, &w)?;
        let eta_to_w = transition(&eta, &w)?;
        let d = Matrix::diag((0..=n).map(|i| params.q.pow(-(i as i64))));
        let d_inv = Matrix::diag((0..=n).map(|i| params.q.pow(i as i64)));
        let delta = delta(&data).matrix;
        let delta_inv = delta.inverse()?;
        let tau_to_w_inv = tau_to_w.inverse()?;
        let a = a_matrix_in(&data, &tau)?;
        Ok(Operators {
            psi: candidate_psi(&data).matrix,
            k: d.clone(),
            k_inv: d_inv.clone(),
            b: conj(&delta, &d, &delta_inv),
            b_inv: conj(&delta, &d_inv, &delta_inv),
            m: conj(&tau_to_w, &d, &tau_to_w_inv),
            m_inv: conj(&tau_to_w, &d_inv, &tau_to_w_inv),
            delta,
            delta_inv,
            a,
            tau_to_w,
            eta_to_w,
            params: params.clone(),
            data,
            w,
            w_prime,
        })
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.params.n + 1)
    }

    /// The polynomials of `basis`, indexed `0..=N`.
    pub fn basis_polys(&self, basis: Basis) -> Vec<Poly> {
        match basis {
            Basis::Tau => self.data.tau_basis(),
            Basis::Eta => self.data.eta_basis(),
            Basis::W => self.w.clone(),
            Basis::WPrime => self.w_prime.clone(),
            Basis::Monomial => (0..=self.params.n).map(|i| Poly::monomial(i, Scalar::one())).collect(),
        }
    }

    /// Transition matrix from `tau` to `basis`.
    pub fn tau_to(&self, basis: Basis) -> Result<Matrix> {
        match basis {
            Basis::Tau => Ok(self.identity()),
            Basis::Eta => Ok(self.delta.clone()),
            Basis::W => Ok(self.tau_to_w.clone()),
            other => transition(&self.data.tau_basis(), &self.basis_polys(other)),
        }
    }

    /// Rewrites a `tau`-basis operator in `basis`.
    pub fn in_basis(&self, m: &Matrix, basis: Basis) -> Result<OperatorMatrix> {
        OperatorMatrix::new(Basis::Tau, m.clone()).rebased(basis, &self.tau_to(basis)?)
    }
}

fn a_matrix_in(data: &Data, basis: &[Poly]) -> Result<Matrix> {
    let n = data.n();
    let x = Poly::x();
    let cols = (0..n)
        .map(|j| coords_in_basis(&(&x * &basis[j]), basis).map(|c| c.0))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(&cols)
}

/// Multiplication by `x` from `V_{N-1}` to `V_N`: column `j` holds the
/// coordinates of `x * basis_j` for `0 <= j < N`.
pub fn a_matrix(p: &QRacahParams, basis: Basis) -> Result<OperatorMatrix> {
    let ops = Operators::new(p)?;
    let polys = ops.basis_polys(basis);
    Ok(OperatorMatrix::new(basis, a_matrix_in(&ops.data, &polys)?))
}

/// `K`, `B`, `M` in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KbmMatrices {
    pub k: OperatorMatrix,
    pub b: OperatorMatrix,
    pub m: OperatorMatrix,
}

pub fn kbm_matrices(p: &QRacahParams, basis: Basis) -> Result<KbmMatrices> {
    let ops = Operators::new(p)?;
    Ok(KbmMatrices { k: ops.in_basis(&ops.k, basis)?, b: ops.in_basis(&ops.b, basis)?, m: ops.in_basis(&ops.m, basis)? })
}

/// Which operator a closed-form entry formula describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorName {
    K,
    KInv,
    B,
    BInv,
    M,
    MInv,
}

impl Operators {
    pub fn named(&self, op: OperatorName) -> &Matrix {
        match op {
            OperatorName::K => &self.k,
            OperatorName::KInv => &self.k_inv,
            OperatorName::B => &self.b,
            OperatorName::BInv => &self.b_inv,
            OperatorName::M => &self.m,
            OperatorName::MInv => &self.m_inv,
        }
    }
}

/// A closed-form matrix for one operator in one basis.
#[derive(Clone, Debug)]
pub struct ClosedFormEntry {
    pub name: &'static str,
    pub operator: OperatorName,
    pub basis: Basis,
    pub matrix: Matrix,
}

fn diag_powers(p: &QRacahParams, sign: i64) -> Matrix {
    Matrix::diag((0..=p.n).map(|i| p.q.pow(sign * i as i64)))
}

/// Diagonal `q^{sign i}` and `(i-1, i)` entries `f(i)`.
fn bidiagonal(p: &QRacahParams, sign: i64, f: impl Fn(i64) -> Scalar) -> Matrix {
    let mut m = diag_powers(p, sign);
    for i in 1..=p.n {
        m[(i - 1, i)] = f(i as i64);
    }
    m
}

/// Upper triangular with `(i, j)` entry
/// `(-1)^{j-i} c^{i-j} (ab;q)_j (q;q)_j q^{C(i,2) - C(j,2) + e} / ((ab;q)_i (q;q)_i)`,
/// where `e = i` if `plus_i`, else `e = -j`. Off-diagonal entries are
/// scaled by `factor`; the diagonal is replaced by `q^{diag_sign i}` when given.
fn triangular(p: &QRacahParams, c: &Scalar, plus_i: bool, factor: &Scalar, diag_sign: Option<i64>) -> Matrix {
    let q = &p.q;
    let ab = &p.a * &p.b;
    let n = p.n;
    let poch_ab: Vec<Scalar> = (0..=n).map(|i| q_pochhammer(&ab, q, i)).collect();
    let poch_q: Vec<Scalar> = (0..=n).map(|i| q_pochhammer(q, q, i)).collect();
    Matrix::from_fn(n + 1, n + 1, |i, j| {
        if i > j {
            return Scalar::zero();
        }
        if i == j {
            if let Some(sign) = diag_sign {
                return q.pow(sign * i as i64);
            }
        }
        let e = if plus_i { i as i64 } else { -(j as i64) };
        let d = (j - i) as i64;
        let v = Scalar::sign_pow(d) * c.pow(-d) * &poch_ab[j] * &poch_q[j] * q.pow(binom2(i) - binom2(j) + e)
            / (&poch_ab[i] * &poch_q[i]);
        if i == j {
            v
        } else {
            v * factor
        }
    })
}

/// All closed-form entry formulas for `K^{+-1}`, `B^{+-1}`, `M^{+-1}`.
pub fn closed_form_entry_matrices(p: &QRacahParams) -> Vec<ClosedFormEntry> {
    use OperatorName::*;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let one = Scalar::one();
    let qp = |e: i64| q.pow(e);
    let b_minus_a_over_b = (b - a) / b;
    let a_minus_b_over_a = (a - b) / a;
    let entry = |name, operator, basis, matrix| ClosedFormEntry { name, operator, basis, matrix };
    vec![
        entry("k_diagonal_in_tau", K, Basis::Tau, diag_powers(p, -1)),
        entry("b_diagonal_in_eta", B, Basis::Eta, diag_powers(p, -1)),
        entry("m_diagonal_in_w", M, Basis::W, diag_powers(p, -1)),
        entry(
            "k_bidiagonal_in_w",
            K,
            Basis::W,
            bidiagonal(p, -1, |i| (&one - qp(-i)) * (a - b.pow(-1) * qp(1 - i))),
        ),
        entry(
            "b_bidiagonal_in_w",
            B,
            Basis::W,
            bidiagonal(p, -1, |i| (&one - qp(-i)) * (b - a.pow(-1) * qp(1 - i))),
        ),
        entry(
            "m_inv_bidiagonal_in_tau",
            MInv,
            Basis::Tau,
            bidiagonal(p, 1, |i| (qp(i) - &one) * (a * qp(i - 1) - b.pow(-1))),
        ),
        entry(
            "m_inv_bidiagonal_in_eta",
            MInv,
            Basis::Eta,
            bidiagonal(p, 1, |i| (qp(i) - &one) * (b * qp(i - 1) - a.pow(-1))),
        ),
        entry("m_triangular_in_tau", M, Basis::Tau, triangular(p, b, false, &one, None)),
        entry("k_inv_triangular_in_w", KInv, Basis::W, triangular(p, b, true, &one, None)),
        entry("m_triangular_in_eta", M, Basis::Eta, triangular(p, a, false, &one, None)),
        entry("b_inv_triangular_in_w", BInv, Basis::W, triangular(p, a, true, &one, None)),
        entry("k_triangular_in_eta", K, Basis::Eta, triangular(p, a, false, &b_minus_a_over_b, Some(-1))),
        entry("b_triangular_in_tau", B, Basis::Tau, triangular(p, b, false, &a_minus_b_over_a, Some(-1))),
        entry("k_inv_triangular_in_eta", KInv, Basis::Eta, triangular(p, b, true, &a_minus_b_over_a, Some(1))),
        entry("b_inv_triangular_in_tau", BInv, Basis::Tau, triangular(p, a, true, &b_minus_a_over_b, Some(1))),
    ]
}

/// Closed form of `exp_q(z xi psi)` (`inverse = false`) or
/// `exp_{1/q}(-z xi psi)` (`inverse = true`).
pub fn exp_entry_matrix(p: &QRacahParams, z: &Scalar, inverse: bool) -> Result<Matrix> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let q = &p.q;
    let ab = &p.a * &p.b;
    let n = p.n;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, j| {
        if i > j {
            return Scalar::zero();
        }
        let (ii, jj) = (i as i64, j as i64);
        let (sign, qe) = if inverse { (jj, ii * jj - binom2(j)) } else { (ii, ii + binom2(i)) };
        Scalar::sign_pow(sign) * z.pow(jj - ii) * q_pochhammer(&ab, q, j) * q_pochhammer(&q.pow(-jj), q, i) * q.pow(qe)
            / (q_pochhammer(&ab, q, i) * q_pochhammer(q, q, i))
    }))
}

/// `(i, j)` entry `eta_{j-i}(a_0) [j over i]`, all factors in closed form.
pub fn delta_closed_form(p: &QRacahParams) -> Matrix {
    Matrix::from_fn(p.n + 1, p.n + 1, |i, j| {
        if i > j {
            Scalar::zero()
        } else {
            eta_at_a0(p, j - i) * bracket_closed(p, j, i)
        }
    })
}

/// `(i, j)` entry `tau_{j-i}(b_0) [j over i]`.
pub fn delta_inv_closed_form(p: &QRacahParams) -> Matrix {
    Matrix::from_fn(p.n + 1, p.n + 1, |i, j| {
        if i > j {
            Scalar::zero()
        } else {
            tau_at_b0(p, j - i) * bracket_closed(p, j, i)
        }
    })
}
