//! Exact computation with double lowering data.
//!
//! Given two scalar sequences `a_0..a_{N-1}` and `b_0..b_{N-1}`, the
//! polynomial bases `tau_i = (x-a_0)...(x-a_{i-1})` and
//! `eta_i = (x-b_0)...(x-b_{i-1})` span the same space of polynomials of
//! degree at most `N`. A linear map lowering both bases one step at a time
//! is a double lowering map. This crate decides when one exists, builds it
//! as an exact rational matrix, and checks the operator identities of the
//! q-Racah family.
//!
//! Everything is computed over the rationals with no rounding.

pub mod corpus;
pub mod data;
pub mod error;
pub mod lowering;
pub mod matrix;
pub mod poly;
pub mod qracah;
pub mod recurrence;
pub mod report;
pub mod scalar;

pub use data::{Data, VarthetaTable};
pub use error::{Error, ParamViolation, Result};
pub use lowering::{candidate_psi, delta, delta_inv, lowering_space, LoweringSolution};
pub use matrix::{nilpotent_inverse, Basis, Matrix, OperatorMatrix};
pub use poly::{coords_in_basis, embed_symmetric, poly_eval, pullback_symmetric, BasisCoords, LaurentPoly, Poly};
pub use qracah::QRacahParams;
pub use recurrence::{are_twins, classify, Case, Classification, ParameterTriple, Verdict};
pub use report::{IdentityReport, Status};
pub use scalar::{parse_scalar, Scalar};
