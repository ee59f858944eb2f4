//! The q-Racah family `a_i = a q^i + a^{-1} q^{-i}`, `b_i = b q^i + b^{-1} q^{-i}`.
//!
//! Closed forms for the theta parameters, brackets and basis polynomials,
//! q-exponentials of the lowering matrix, the `w` / `w'` bases, the operators
//! `K`, `B`, `M`, `A`, and a suite that checks every operator relation exactly.

mod operators;
mod qexp;
mod relations;
mod wbasis;

pub use operators::{
    a_matrix, closed_form_entry_matrices, delta_closed_form, delta_inv_closed_form, exp_entry_matrix,
    kbm_matrices, ClosedFormEntry, KbmMatrices, OperatorName, Operators,
};
pub use qexp::{expq, expq_inv, expq_inv_nilpotent, expq_nilpotent};
pub use relations::{
    closed_form_suite, delta_factorization_check, full_suite, geometric_series_forms_check,
    kbm_closed_form_check, relation_suite, transition_check, w_basis_check, w_three_term_check,
};
pub use wbasis::{w_basis, w_basis_via_eta, w_hypergeometric, w_unprimed_hypergeometric, wprime_basis, wprime_basis_via_eta, WBasis};

use serde::Serialize;

use crate::data::Data;
use crate::error::{Error, ParamViolation, Result};
use crate::poly::LaurentPoly;
use crate::scalar::Scalar;

/// Validated `(q, a, b, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QRacahParams {
    pub q: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub n: usize,
}

impl QRacahParams {
    /// Rejects zero parameters, `a == b`, `q^i == 1` and `a b q^{i-1} == 1`
    /// for `1 <= i <= N`, in that order.
    pub fn new(q: Scalar, a: Scalar, b: Scalar, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyData);
        }
        for (name, v) in [("q", &q), ("a", &a), ("b", &b)] {
            if v.is_zero() {
                return Err(Error::InvalidParams(ParamViolation::ZeroParameter(name)));
            }
        }
        if a == b {
            return Err(Error::InvalidParams(ParamViolation::EqualAB));
        }
        let ab = &a * &b;
        for i in 1..=n {
            let qi = q.pow(i as i64);
            if qi.is_one() {
                return Err(Error::InvalidParams(ParamViolation::RootOfUnity { i }));
            }
            if (&ab * q.pow(i as i64 - 1)).is_one() {
                return Err(Error::InvalidParams(ParamViolation::Resonance { i }));
            }
        }
        Ok(QRacahParams { q, a, b, n })
    }

    /// `(1/q, 1/a, 1/b, N)`, which is again valid.
    pub fn inverted(&self) -> QRacahParams {
        QRacahParams { q: self.q.pow(-1), a: self.a.pow(-1), b: self.b.pow(-1), n: self.n }
    }

    /// `xi = 1 - ab`.
    pub fn xi(&self) -> Scalar {
        Scalar::one() - &self.a * &self.b
    }

    fn qp(&self, e: i64) -> Scalar {
        self.q.pow(e)
    }

    /// `c q^i + c^{-1} q^{-i}`.
    fn entry(&self, c: &Scalar, i: usize) -> Scalar {
        let i = i as i64;
        c * self.qp(i) + c.pow(-1) * self.qp(-i)
    }

    pub fn a_i(&self, i: usize) -> Scalar {
        self.entry(&self.a, i)
    }

    pub fn b_i(&self, i: usize) -> Scalar {
        self.entry(&self.b, i)
    }

    pub fn data(&self) -> Data {
        qracah_data(self)
    }
}

/// `i (i - 1) / 2`.
pub(crate) fn binom2(i: usize) -> i64 {
    (i as i64) * (i as i64 - 1) / 2
}

/// The data `a_i`, `b_i` for `0 <= i < N`.
pub fn qracah_data(p: &QRacahParams) -> Data {
    let a = (0..p.n).map(|i| p.a_i(i)).collect();
    let b = (0..p.n).map(|i| p.b_i(i)).collect();
    Data::new(a, b).expect("valid parameters give nondegenerate data")
}

/// `(alpha; q)_i = (1 - alpha)(1 - alpha q)...(1 - alpha q^{i-1})`.
pub fn q_pochhammer(alpha: &Scalar, q: &Scalar, i: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut term = alpha.clone();
    for _ in 0..i {
        acc *= Scalar::one() - &term;
        term *= q;
    }
    acc
}

/// `theta_i = ((1-q^i)/(1-q)) ((1-ab q^{i-1})/(1-ab)) q^{1-i}`.
pub fn vartheta_closed(p: &QRacahParams, i: usize) -> Scalar {
    let i = i as i64;
    let one = Scalar::one();
    let ab = &p.a * &p.b;
    (&one - p.qp(i)) / (&one - &p.q) * (&one - &ab * p.qp(i - 1)) / (&one - &ab) * p.qp(1 - i)
}

/// The same parameter written in `1/q`, `1/(ab)`.
pub fn vartheta_closed_inverse_form(p: &QRacahParams, i: usize) -> Scalar {
    let i = i as i64;
    let one = Scalar::one();
    let abi = (&p.a * &p.b).pow(-1);
    (&one - p.qp(-i)) / (&one - p.qp(-1)) * (&one - &abi * p.qp(1 - i)) / (&one - &abi) * p.qp(i - 1)
}

/// Closed forms for `theta_1...theta_i` and `theta_j...theta_{j-i+1}`.
pub fn vartheta_products(p: &QRacahParams, i: usize, j: usize) -> (Scalar, Scalar) {
    let q = &p.q;
    let one = Scalar::one();
    let ab = &p.a * &p.b;
    let ii = i as i64;
    let jj = j as i64;
    let ascending = q_pochhammer(q, q, i) * q_pochhammer(&ab, q, i) * q.pow(-binom2(i))
        / ((&one - q).pow(ii) * (&one - &ab).pow(ii));
    let abi = ab.pow(-1);
    let descending = q_pochhammer(&q.pow(-jj), q, i) * q_pochhammer(&(&abi * q.pow(1 - jj)), q, i)
        * q.pow(ii * (jj - ii) + binom2(i))
        / ((&one - q.pow(-1)).pow(ii) * (&one - &abi).pow(ii));
    (ascending, descending)
}

/// `[j over i]` in closed form.
pub fn bracket_closed(p: &QRacahParams, j: usize, i: usize) -> Scalar {
    let q = &p.q;
    let ab = &p.a * &p.b;
    let (ii, jj) = (i as i64, j as i64);
    q_pochhammer(&q.pow(-jj), q, i) * q_pochhammer(&(ab.pow(-1) * q.pow(1 - jj)), q, i) * q.pow(ii * jj)
        * ab.pow(ii)
        / (q_pochhammer(q, q, i) * q_pochhammer(&ab, q, i))
}

/// `(c y; q)_i` or `(c / y; q)_i` as a Laurent polynomial in `y`.
fn laurent_pochhammer(c: &Scalar, q: &Scalar, i: usize, exponent: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut coef = c.clone();
    for _ in 0..i {
        let factor = LaurentPoly::from_terms([(0, Scalar::one()), (exponent, -&coef)]);
        acc = &acc * &factor;
        coef *= q;
    }
    acc
}

fn basis_laurent(c: &Scalar, q: &Scalar, i: usize) -> LaurentPoly {
    let scale = Scalar::sign_pow(i as i64) * c.pow(-(i as i64)) * q.pow(-binom2(i));
    (&laurent_pochhammer(c, q, i, 1) * &laurent_pochhammer(c, q, i, -1)).scale(&scale)
}

/// `tau_i` with `x = y + 1/y`: `(-1)^i a^{-i} q^{-C(i,2)} (ay;q)_i (a/y;q)_i`.
pub fn tau_laurent(p: &QRacahParams, i: usize) -> LaurentPoly {
    basis_laurent(&p.a, &p.q, i)
}

/// `eta_i` with `x = y + 1/y`.
pub fn eta_laurent(p: &QRacahParams, i: usize) -> LaurentPoly {
    basis_laurent(&p.b, &p.q, i)
}

/// `tau_i(b_0) = (-1)^i a^{-i} q^{-C(i,2)} (ab;q)_i (a/b;q)_i`.
pub fn tau_at_b0(p: &QRacahParams, i: usize) -> Scalar {
    let ab = &p.a * &p.b;
    Scalar::sign_pow(i as i64) * p.a.pow(-(i as i64)) * p.q.pow(-binom2(i))
        * q_pochhammer(&ab, &p.q, i)
        * q_pochhammer(&(&p.a / &p.b), &p.q, i)
}

/// `eta_i(a_0) = (-1)^i b^{-i} q^{-C(i,2)} (ab;q)_i (b/a;q)_i`.
pub fn eta_at_a0(p: &QRacahParams, i: usize) -> Scalar {
    let ab = &p.a * &p.b;
    Scalar::sign_pow(i as i64) * p.b.pow(-(i as i64)) * p.q.pow(-binom2(i))
        * q_pochhammer(&ab, &p.q, i)
        * q_pochhammer(&(&p.b / &p.a), &p.q, i)
}

/// Both sides of `(q^{-j};q)_i (q;q)_{j-i} = (-1)^i (q;q)_j q^{C(i,2)} q^{-ij}`.
pub fn q_int_sides(q: &Scalar, i: usize, j: usize) -> (Scalar, Scalar) {
    assert!(i <= j, "requires i <= j");
    let lhs = q_pochhammer(&q.pow(-(j as i64)), q, i) * q_pochhammer(q, q, j - i);
    let rhs = Scalar::sign_pow(i as i64) * q_pochhammer(q, q, j) * q.pow(binom2(i) - (i * j) as i64);
    (lhs, rhs)
}

/// Both sides of the terminating q-binomial sum
/// `(z q^{-j}; q)_j = sum_{i<=j} (q^{-j};q)_i z^i / (q;q)_i`.
pub fn q_binomial_sides(q: &Scalar, z: &Scalar, j: usize) -> (Scalar, Scalar) {
    let qj = q.pow(-(j as i64));
    let lhs = q_pochhammer(&(z * &qj), q, j);
    let rhs = (0..=j)
        .map(|i| q_pochhammer(&qj, q, i) * z.pow(i as i64) / q_pochhammer(q, q, i))
        .sum();
    (lhs, rhs)
}
