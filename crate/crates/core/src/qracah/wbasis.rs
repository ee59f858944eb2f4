//! The `w` and `w'` bases.
//!
//! `w_i = exp_{1/q}(-b^{-1} xi psi) tau_i = exp_{1/q}(-a^{-1} xi psi) eta_i` and
//! `w'_i = exp_q(a^{-1} xi psi) tau_i = exp_q(b^{-1} xi psi) eta_i`.

use serde::Serialize;

use crate::error::Result;
use crate::lowering::candidate_psi;
use crate::matrix::Matrix;
use crate::poly::{pullback_symmetric, LaurentPoly, Poly};
use crate::scalar::Scalar;

use super::qexp::{expq, expq_inv};
use super::{q_pochhammer, QRacahParams};

/// Monic degree-graded polynomials `w_0..w_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WBasis(pub Vec<Poly>);

impl WBasis {
    pub fn get(&self, i: usize) -> &Poly {
        &self.0[i]
    }

    pub fn polys(&self) -> &[Poly] {
        &self.0
    }
}

/// `psi-hat` scaled by `c^{-1} xi`.
pub(crate) fn scaled_psi(p: &QRacahParams, c: &Scalar) -> Matrix {
    candidate_psi(&p.data()).matrix.scale(&(c.pow(-1) * p.xi()))
}

/// Column `j` of `m` read as coordinates against `basis`.
fn apply_columns(m: &Matrix, basis: &[Poly]) -> WBasis {
    WBasis((0..m.cols()).map(|j| Poly::combination(m.column(j).iter().zip(basis))).collect())
}

fn exp_matrix(p: &QRacahParams, c: &Scalar, inverse: bool) -> Matrix {
    let t = scaled_psi(p, c);
    let m = if inverse { expq_inv(&t, &p.q) } else { expq(&t, &p.q) };
    m.expect("(q;q)_i is nonzero for valid parameters")
}

pub fn w_basis(p: &QRacahParams) -> WBasis {
    apply_columns(&exp_matrix(p, &p.b, true), &p.data().tau_basis())
}

pub fn w_basis_via_eta(p: &QRacahParams) -> WBasis {
    apply_columns(&exp_matrix(p, &p.a, true), &p.data().eta_basis())
}

pub fn wprime_basis(p: &QRacahParams) -> WBasis {
    apply_columns(&exp_matrix(p, &p.a, false), &p.data().tau_basis())
}

pub fn wprime_basis_via_eta(p: &QRacahParams) -> WBasis {
    apply_columns(&exp_matrix(p, &p.b, false), &p.data().eta_basis())
}

/// `w'_j` from its terminating basic hypergeometric sum in `y` with
/// `x = y + 1/y`, pulled back to a polynomial in `x`.
pub fn w_hypergeometric(p: &QRacahParams, j: usize) -> Result<Poly> {
    let q = &p.q;
    let ab = &p.a * &p.b;
    let qj = q.pow(-(j as i64));
    let mut sum = LaurentPoly::zero();
    // (ay;q)_i (a/y;q)_i built up one factor at a time.
    let mut pair = LaurentPoly::one();
    let mut aqk = p.a.clone();
    for i in 0..=j {
        let c = q_pochhammer(&qj, q, i) * q.pow(i as i64) / (q_pochhammer(&ab, q, i) * q_pochhammer(q, q, i));
        sum = &sum + &pair.scale(&c);
        let up = LaurentPoly::from_terms([(0, Scalar::one()), (1, -&aqk)]);
        let down = LaurentPoly::from_terms([(0, Scalar::one()), (-1, -&aqk)]);
        pair = &(&pair * &up) * &down;
        aqk *= q;
    }
    let lead = p.a.pow(-(j as i64)) * q_pochhammer(&ab, q, j);
    pullback_symmetric(&sum.scale(&lead))
}

/// `w_j`: the same sum with `q`, `a`, `b` inverted.
pub fn w_unprimed_hypergeometric(p: &QRacahParams, j: usize) -> Result<Poly> {
    w_hypergeometric(&p.inverted(), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::check_graded_basis;
    use crate::scalar::s;

    fn p(n: usize) -> QRacahParams {
        QRacahParams::new(s("5"), s("2"), s("3"), n).unwrap()
    }

    #[test]
    fn small_w() {
        let pp = p(3);
        let (a, b, q) = (&pp.a, &pp.b, &pp.q);
        let w = w_basis(&pp);
        check_graded_basis(w.polys()).unwrap();
        assert_eq!(w.get(0), &Poly::one());
        let w1 = Poly::linear_root(&(a.pow(-1) + b.pow(-1)));
        assert_eq!(w.get(1), &w1);
        let w1q = Poly::linear_root(&(q.pow(-1) * a.pow(-1) + q.pow(-1) * b.pow(-1)));
        let tail = (q.pow(-1) - Scalar::one()) * (Scalar::one() - a.pow(-1) * b.pow(-1));
        assert_eq!(w.get(2), &(&(&w1 * &w1q) + &Poly::constant(tail)));
        assert_eq!(w, w_basis_via_eta(&pp));
        assert_eq!(wprime_basis(&pp), wprime_basis_via_eta(&pp));
        assert_eq!(wprime_basis(&pp).get(1), &Poly::linear_root(&(a + b)));
        assert_eq!(wprime_basis(&pp), w_basis(&pp.inverted()));
    }

    #[test]
    fn hypergeometric_matches() {
        let pp = p(4);
        assert_eq!(w_hypergeometric(&pp, 0).unwrap(), Poly::one());
        assert_eq!(w_hypergeometric(&pp, 1).unwrap(), Poly::linear_root(&s("5")));
        let wp = wprime_basis(&pp);
        let w = w_basis(&pp);
        for j in 0..=4 {
            assert_eq!(&w_hypergeometric(&pp, j).unwrap(), wp.get(j));
            assert_eq!(&w_unprimed_hypergeometric(&pp, j).unwrap(), w.get(j));
        }
    }
}
