//! Dense univariate polynomials, symmetric Laurent polynomials and
//! coordinates against monic degree-graded bases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial in `x` with coefficients in ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and its degree is `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl From<Vec<Scalar>> for Poly {
    fn from(coeffs: Vec<Scalar>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Scalar> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Poly::monomial(1, Scalar::one())
    }

    /// `c x^k`.
    pub fn monomial(k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Poly::new(vec![-r, Scalar::one()])
    }

    /// `(x - r_0)(x - r_1)...`.
    pub fn from_roots<'a, I: IntoIterator<Item = &'a Scalar>>(roots: I) -> Self {
        roots.into_iter().fold(Poly::one(), |acc, r| acc.mul_linear(r))
    }

    /// Multiplies by `(x - r)`.
    pub fn mul_linear(&self, r: &Scalar) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * r;
        }
        Poly::new(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, c: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, k| acc * c + k)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Linear combination `sum c_i p_i`.
    pub fn combination<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a Scalar, &'a Poly)>,
    {
        let mut out: Vec<Scalar> = Vec::new();
        for (c, p) in terms {
            if c.is_zero() {
                continue;
            }
            if out.len() < p.coeffs.len() {
                out.resize(p.coeffs.len(), Scalar::zero());
            }
            for (k, pk) in p.coeffs.iter().enumerate() {
                out[k] += c * pk;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! owned_poly_op {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $trait::$method(&self, rhs)
            }
        }
    };
}

owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

/// `p(c)`.
pub fn poly_eval(p: &Poly, c: &Scalar) -> Scalar {
    p.eval(c)
}

/// Laurent polynomial in `y`, stored sparsely by exponent.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Scalar::one())
    }

    /// `c y^k`.
    pub fn monomial(k: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(terms: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// `coefficient(k) == coefficient(-k)` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.coeff(-k) == *c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("({c})y^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

/// Image of `p` under `x -> y + 1/y`.
pub fn embed_symmetric(p: &Poly) -> LaurentPoly {
    let x = LaurentPoly::from_terms([(1, Scalar::one()), (-1, Scalar::one())]);
    // Horner in the Laurent ring.
    p.coeffs()
        .iter()
        .rev()
        .fold(LaurentPoly::zero(), |acc, c| {
            &(&acc * &x) + &LaurentPoly::monomial(0, c.clone())
        })
}

/// Inverse of [`embed_symmetric`] on the symmetric part.
pub fn pullback_symmetric(l: &LaurentPoly) -> Result<Poly> {
    if !l.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut rest = l.clone();
    let mut coeffs: Vec<Scalar> = Vec::new();
    while let Some(d) = rest.max_exponent() {
        // Symmetric with a nonzero top term forces d >= 0.
        let d_usize = usize::try_from(d).map_err(|_| Error::NotSymmetric)?;
        let c = rest.coeff(d);
        if coeffs.len() <= d_usize {
            coeffs.resize(d_usize + 1, Scalar::zero());
        }
        coeffs[d_usize] += &c;
        rest = &rest - &embed_symmetric(&Poly::monomial(d_usize, c));
    }
    Ok(Poly::new(coeffs))
}

/// Coordinates of a polynomial against a monic degree-graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCoords(pub Vec<Scalar>);

impl BasisCoords {
    /// `sum d_i basis_i`.
    pub fn reconstruct(&self, basis: &[Poly]) -> Poly {
        Poly::combination(self.0.iter().zip(basis))
    }
}

/// Checks that `basis[i]` is monic of degree `i` for every `i`.
pub fn check_graded_basis(basis: &[Poly]) -> Result<()> {
    for (i, b) in basis.iter().enumerate() {
        if b.degree() != Some(i) || !b.is_monic() {
            return Err(Error::NonMonicBasis { index: i });
        }
    }
    Ok(())
}

/// Back-substitution on the unit upper triangular change of basis.
pub fn coords_in_basis(p: &Poly, basis: &[Poly]) -> Result<BasisCoords> {
    check_graded_basis(basis)?;
    coords_in_graded_basis(p, basis)
}

/// As [`coords_in_basis`] without re-validating the basis.
pub(crate) fn coords_in_graded_basis(p: &Poly, basis: &[Poly]) -> Result<BasisCoords> {
    let n = basis.len();
    if let Some(d) = p.degree() {
        if d >= n {
            return Err(Error::DegreeOverflow { degree: d, basis_len: n });
        }
    }
    let mut rest: Vec<Scalar> = p.coeffs().to_vec();
    rest.resize(n, Scalar::zero());
    let mut out = vec![Scalar::zero(); n];
    for k in (0..n).rev() {
        let d = rest[k].clone();
        if d.is_zero() {
            continue;
        }
        for (m, c) in basis[k].coeffs().iter().enumerate() {
            rest[m] -= &d * c;
        }
        out[k] = d;
    }
    Ok(BasisCoords(out))
}
