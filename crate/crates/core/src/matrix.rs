//! Dense exact matrices and basis-tagged operator matrices.
//!
//! Column convention: a matrix `m` represents the map sending `basis_j` to
//! `sum_i m[i][j] basis_i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diag<I: IntoIterator<Item = Scalar>>(entries: I) -> Self {
        let entries: Vec<Scalar> = entries.into_iter().collect();
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose column `j` is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Scalar>]) -> Result<Self> {
        let c = columns.len();
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|col| col.len() != r) {
            return Err(Error::Shape("ragged columns".into()));
        }
        Ok(Matrix::from_fn(r, c, |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_upper(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self[(i, j)].is_zero()))
    }

    fn same_shape(&self, rhs: &Matrix, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("apply: {} columns, vector {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        (0..e).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &-&f);
                    inv.add_row_multiple(r, col, &-&f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, f: &Scalar) {
        for c in 0..self.cols {
            self.data[i * self.cols + c] *= f;
        }
    }

    /// row_i += f * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, f: &Scalar) {
        for c in 0..self.cols {
            let v = &self.data[j * self.cols + c] * f;
            self.data[i * self.cols + c] += v;
        }
    }

    /// Basis of the right null space, from the reduced row echelon form.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let mut a = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let f = a[(row, col)].inv().expect("nonzero pivot");
            a.scale_row(row, &f);
            for r in 0..a.rows {
                if r != row && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, row, &-&f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(); a.cols];
                v[fc] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[(r, fc)];
                }
                v
            })
            .collect()
    }

    /// First `(i, j)` in row-major order where the matrices differ.
    pub fn first_mismatch(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != other[(i, j)])
    }

    /// Keeps columns `0..n`.
    pub fn leading_columns(&self, n: usize) -> Matrix {
        Matrix::from_fn(self.rows, n, |i, j| self[(i, j)].clone())
    }

    /// Keeps the top-left `r x c` block.
    pub fn block(&self, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(r, c, |i, j| self[(i, j)].clone())
    }

    /// Commutator `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        &(self * rhs) - &(rhs * self)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// Operator impls panic on shape mismatch; use the checked_ forms for
// caller-supplied shapes.
impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shapes")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shapes")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shapes")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Scalar::one())
    }
}

macro_rules! owned_matrix_op {
    ($trait:ident, $method:ident) => {
        impl $trait<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                $trait::$method(self, &rhs)
            }
        }
    };
}

owned_matrix_op!(Add, add);
owned_matrix_op!(Sub, sub);
owned_matrix_op!(Mul, mul);

/// `sum_k coeffs[k] T^k`, accumulated Horner style.
pub fn matrix_polynomial(t: &Matrix, coeffs: &[Scalar]) -> Matrix {
    let n = t.rows();
    coeffs.iter().rev().fold(Matrix::zeros(n, n), |acc, c| {
        let mut next = &acc * t;
        for i in 0..n {
            next[(i, i)] += c;
        }
        next
    })
}

/// `(I - T)^{-1} = sum_{i <= n} T^i` for strictly upper triangular `T`.
pub fn nilpotent_inverse(t: &Matrix) -> Result<Matrix> {
    if !t.is_strictly_upper() {
        return Err(Error::NotNilpotent);
    }
    Ok(matrix_polynomial(t, &vec![Scalar::one(); t.rows()]))
}

/// Which basis of the polynomial space an operator matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Tau,
    Eta,
    W,
    WPrime,
    Monomial,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Basis::Tau => "Tau",
            Basis::Eta => "Eta",
            Basis::W => "W",
            Basis::WPrime => "WPrime",
            Basis::Monomial => "Monomial",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tau" => Ok(Basis::Tau),
            "eta" => Ok(Basis::Eta),
            "w" => Ok(Basis::W),
            "wprime" => Ok(Basis::WPrime),
            "monomial" => Ok(Basis::Monomial),
            _ => Err(Error::Shape(format!("unknown basis {s:?}"))),
        }
    }
}

/// A matrix together with the basis it is written in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOperator", into = "RawOperator")]
pub struct OperatorMatrix {
    pub basis: Basis,
    pub matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    basis: Basis,
    rows: Vec<Vec<Scalar>>,
}

impl TryFrom<RawOperator> for OperatorMatrix {
    type Error = Error;
    fn try_from(raw: RawOperator) -> Result<Self> {
        Ok(OperatorMatrix { basis: raw.basis, matrix: Matrix::from_rows(raw.rows)? })
    }
}

impl From<OperatorMatrix> for RawOperator {
    fn from(op: OperatorMatrix) -> Self {
        RawOperator { basis: op.basis, rows: op.matrix.to_rows() }
    }
}

impl OperatorMatrix {
    pub fn new(basis: Basis, matrix: Matrix) -> Self {
        OperatorMatrix { basis, matrix }
    }

    /// Rewrites the operator in basis `Y`, given the transition matrix
    /// `P` from the current basis `X` to `Y` (`Y_j = sum_i P[i][j] X_i`).
    pub fn rebased(&self, target: Basis, transition: &Matrix) -> Result<OperatorMatrix> {
        let p_inv = transition.inverse()?;
        Ok(OperatorMatrix::new(target, &(&p_inv * &self.matrix) * transition))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;
    use proptest::prelude::*;

    fn m(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|x| s(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_and_singular() {
        let a = m(&[&["2", "1"], &["1", "1"]]);
        assert_eq!(&a * &a.inverse().unwrap(), Matrix::identity(2));
        let sing = m(&[&["1", "2"], &["2", "4"]]);
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = m(&[&["1", "2", "3"], &["2", "4", "6"]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
        assert!(Matrix::identity(3).null_space().is_empty());
    }

    #[test]
    fn nilpotent_inverse_examples() {
        assert_eq!(nilpotent_inverse(&Matrix::zeros(3, 3)).unwrap(), Matrix::identity(3));
        let t = m(&[&["0", "1", "0"], &["0", "0", "1"], &["0", "0", "0"]]);
        let expected = &(&Matrix::identity(3) + &t) + &t.pow(2);
        assert_eq!(nilpotent_inverse(&t).unwrap(), expected);
        assert_eq!(nilpotent_inverse(&Matrix::identity(2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn operator_json_shape() {
        let op = OperatorMatrix::new(Basis::Tau, m(&[&["1", "1/2"], &["0", "1"]]));
        let text = serde_json::to_string(&op).unwrap();
        assert_eq!(text, r#"{"basis":"Tau","rows":[["1","1/2"],["0","1"]]}"#);
        let back: OperatorMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, op);
    }

    fn arb_strict_upper(n: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec((-9i64..9, 1i64..5), n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |i, j| {
                if j > i {
                    let (a, b) = v[i * n + j];
                    Scalar::ratio(a, b).unwrap()
                } else {
                    Scalar::zero()
                }
            })
        })
    }

    proptest! {
        #[test]
        fn nilpotent_inverse_inverts(t in (1usize..7).prop_flat_map(arb_strict_upper)) {
            let n = t.rows();
            let inv = nilpotent_inverse(&t).unwrap();
            prop_assert_eq!(&(&Matrix::identity(n) - &t) * &inv, Matrix::identity(n));
            prop_assert!(t.pow(n).is_zero());
        }
    }
}
