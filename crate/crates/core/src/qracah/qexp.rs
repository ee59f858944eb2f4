//! Truncated q-exponentials of strictly upper triangular matrices.

use crate::error::{Error, Result};
use crate::matrix::{matrix_polynomial, Matrix, OperatorMatrix};
use crate::scalar::Scalar;

use super::{binom2, q_pochhammer};

/// Coefficients `c_i` of `T^i` for `0 <= i < len`, with `c_i = num_i / (q;q)_i`.
fn coefficients(q: &Scalar, len: usize, num: impl Fn(usize) -> Scalar) -> Result<Vec<Scalar>> {
    (0..len)
        .map(|i| {
            let den = q_pochhammer(q, q, i);
            if den.is_zero() {
                return Err(Error::InvalidQ(format!("(q;q)_{i} vanishes")));
            }
            Ok(num(i) / den)
        })
        .collect()
}

/// `exp_q(T) = sum_i q^{C(i,2)} (1-q)^i T^i / (q;q)_i`.
pub fn expq(t: &Matrix, q: &Scalar) -> Result<Matrix> {
    if !t.is_strictly_upper() {
        return Err(Error::NotNilpotent);
    }
    let one_minus_q = Scalar::one() - q;
    let c = coefficients(q, t.rows(), |i| q.pow(binom2(i)) * one_minus_q.pow(i as i64))?;
    Ok(matrix_polynomial(t, &c))
}

/// `exp_{1/q}(-T) = sum_i (-1)^i (1-q)^i T^i / (q;q)_i`, the inverse of [`expq`].
pub fn expq_inv(t: &Matrix, q: &Scalar) -> Result<Matrix> {
    if !t.is_strictly_upper() {
        return Err(Error::NotNilpotent);
    }
    let q_minus_one = q - Scalar::one();
    let c = coefficients(q, t.rows(), |i| q_minus_one.pow(i as i64))?;
    Ok(matrix_polynomial(t, &c))
}

pub fn expq_nilpotent(t: &OperatorMatrix, q: &Scalar) -> Result<OperatorMatrix> {
    Ok(OperatorMatrix::new(t.basis, expq(&t.matrix, q)?))
}

pub fn expq_inv_nilpotent(t: &OperatorMatrix, q: &Scalar) -> Result<OperatorMatrix> {
    Ok(OperatorMatrix::new(t.basis, expq_inv(&t.matrix, q)?))
}
