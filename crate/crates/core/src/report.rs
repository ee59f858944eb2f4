//! Pass/fail records for identity checks.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one identity check. `first_mismatch` is a matrix entry
/// `(i, j)`; scalar and polynomial checks report `(i, 0)` with `i` the
/// failing index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub status: Status,
    pub first_mismatch: Option<(usize, usize)>,
}

impl IdentityReport {
    pub fn pass(identity: impl Into<String>) -> Self {
        IdentityReport { identity: identity.into(), status: Status::Pass, first_mismatch: None }
    }

    pub fn fail(identity: impl Into<String>, at: (usize, usize)) -> Self {
        IdentityReport { identity: identity.into(), status: Status::Fail, first_mismatch: Some(at) }
    }

    /// Compares two matrices entrywise.
    pub fn matrices(identity: impl Into<String>, lhs: &Matrix, rhs: &Matrix) -> Self {
        match lhs.first_mismatch(rhs) {
            None => IdentityReport::pass(identity),
            Some(at) => IdentityReport::fail(identity, at),
        }
    }

    /// Passes iff `failure` is `None`; otherwise records index `i`.
    pub fn indexed(identity: impl Into<String>, failure: Option<usize>) -> Self {
        match failure {
            None => IdentityReport::pass(identity),
            Some(i) => IdentityReport::fail(identity, (i, 0)),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// True iff every report passed.
pub fn all_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = IdentityReport::fail("x", (1, 2));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"identity":"x","status":"fail","first_mismatch":[1,2]}"#
        );
        let p = IdentityReport::pass("y");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"identity":"y","status":"pass","first_mismatch":null}"#
        );
    }
}
