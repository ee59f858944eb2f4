//! The data pair `{a_i}`, `{b_i}` and everything derived from it directly:
//! the `tau`/`eta` bases, the theta parameters, theta-binomial brackets,
//! the affine action and the one-step extension test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Two sequences `a_0..a_{N-1}`, `b_0..b_{N-1}` whose partial sums never
/// agree. Only constructible through validation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawData")]
pub struct Data {
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

/// Unvalidated wire form of [`Data`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawData {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl TryFrom<RawData> for Data {
    type Error = Error;
    fn try_from(raw: RawData) -> Result<Self> {
        Data::new(raw.a, raw.b)
    }
}

/// Checks equal nonzero lengths and `sum_{h<i} a_h != sum_{h<i} b_h` for
/// `1 <= i <= N`, reporting the first violated `i`.
pub fn validate(a: &[Scalar], b: &[Scalar]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
    }
    if a.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut diff = Scalar::zero();
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        diff += x - y;
        if diff.is_zero() {
            return Err(Error::DegenerateData { index: i + 1 });
        }
    }
    Ok(())
}

impl Data {
    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Self> {
        validate(&a, &b)?;
        Ok(Data { a, b })
    }

    /// Parses `{"a": [...], "b": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawData = serde_json::from_str(text)?;
        Data::new(raw.a, raw.b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("data serializes")
    }

    /// Truncation length `N`.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    /// Swaps the roles of the two sequences.
    pub fn swapped(&self) -> Data {
        Data { a: self.b.clone(), b: self.a.clone() }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(())
    }

    /// `tau_i = prod_{h<i} (x - a_h)`.
    pub fn tau(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        Ok(Poly::from_roots(&self.a[..i]))
    }

    /// `eta_i = prod_{h<i} (x - b_h)`.
    pub fn eta(&self, i: usize) -> Result<Poly> {
        self.check_index(i)?;
        Ok(Poly::from_roots(&self.b[..i]))
    }

    /// `tau_0..tau_N`.
    pub fn tau_basis(&self) -> Vec<Poly> {
        running_products(&self.a)
    }

    /// `eta_0..eta_N`.
    pub fn eta_basis(&self) -> Vec<Poly> {
        running_products(&self.b)
    }

    /// `tau_i(b_0)` for `0 <= i <= N`, without building polynomials.
    pub fn tau_at_b0(&self) -> Vec<Scalar> {
        running_evaluations(&self.a, &self.b[0])
    }

    /// `eta_i(a_0)` for `0 <= i <= N`.
    pub fn eta_at_a0(&self) -> Vec<Scalar> {
        running_evaluations(&self.b, &self.a[0])
    }

    /// `sum_{h<i} (a_h - b_h)` for `0 <= i <= N`.
    pub fn partial_differences(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut acc = Scalar::zero();
        out.push(acc.clone());
        for (x, y) in self.a.iter().zip(&self.b) {
            acc += x - y;
            out.push(acc.clone());
        }
        out
    }

    pub fn vartheta(&self) -> VarthetaTable {
        let sums = self.partial_differences();
        let d0 = &self.a[0] - &self.b[0];
        let inv = d0.inv().expect("validated data has a_0 != b_0");
        VarthetaTable(sums.iter().map(|x| x * &inv).collect())
    }

    /// Theta-binomial `[j over i]`.
    pub fn bracket(&self, j: usize, i: usize) -> Result<Scalar> {
        self.check_index(j)?;
        if i > j {
            return Err(Error::IndexOutOfRange { index: i, max: j });
        }
        Ok(self.vartheta().bracket(j, i))
    }

    /// Entries become `s a_i + t`, `s b_i + t`.
    pub fn affine(&self, s: &Scalar, t: &Scalar) -> Result<Data> {
        if s.is_zero() {
            return Err(Error::ZeroScale);
        }
        let map = |v: &[Scalar]| v.iter().map(|x| s * x + t).collect();
        Ok(Data { a: map(&self.a), b: map(&self.b) })
    }

    /// The `(s, t)` carrying `a_0, b_0` to the targets.
    pub fn endpoint_map(&self, a0_target: &Scalar, b0_target: &Scalar) -> Result<(Scalar, Scalar)> {
        if a0_target == b0_target {
            return Err(Error::ZeroScale);
        }
        let (a0, b0) = (&self.a[0], &self.b[0]);
        let d = a0 - b0;
        let s = (a0_target - b0_target).checked_div(&d)?;
        let t = (a0 * b0_target - a0_target * b0).checked_div(&d)?;
        Ok((s, t))
    }

    /// Affine image with `a_0 = 0`, `b_0 = 1`.
    pub fn normalize_endpoints(&self) -> Data {
        let (s, t) = self
            .endpoint_map(&Scalar::zero(), &Scalar::one())
            .expect("distinct targets and a_0 != b_0");
        self.affine(&s, &t).expect("nonzero scale")
    }

    /// Appends `(a_N, b_N)`, validating the longer data.
    pub fn extended(&self, a_n: &Scalar, b_n: &Scalar) -> Result<Data> {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.push(a_n.clone());
        b.push(b_n.clone());
        Data::new(a, b)
    }

    /// Decides whether appending `(a_N, b_N)` keeps the data double
    /// lowering, from the partial-sum equations alone.
    ///
    /// Requires `self` to be double lowering. Both the `a`-side and the
    /// `b`-side equation families are evaluated.
    pub fn extend_check(&self, a_n: &Scalar, b_n: &Scalar) -> Result<bool> {
        let n = self.n();
        let sums = self.partial_differences();
        if &sums[n] + a_n - b_n == Scalar::zero() {
            return Err(Error::DegenerateExtension);
        }
        if crate::lowering::lowering_space(self).dim == 0 {
            return Err(Error::NotDoubleLowering);
        }
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.push(a_n.clone());
        b.push(b_n.clone());
        Ok(extension_side_holds(&a, &b, &self.eta_at_a0())
            && extension_side_holds(&b, &a, &self.tau_at_b0()))
    }
}

/// For `0 <= i <= N-1` with `weights[i] != 0`:
/// `(sum_{h<=i}(a_h-b_h))(a_{N-i}-b_N) == (a_0-b_i)(sum_{h=N-i}^{N}(a_h-b_h))`.
fn extension_side_holds(a: &[Scalar], b: &[Scalar], weights: &[Scalar]) -> bool {
    let n = a.len() - 1;
    let d: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    (0..n).filter(|&i| !weights[i].is_zero()).all(|i| {
        let head: Scalar = d[..=i].iter().sum();
        let tail: Scalar = d[n - i..=n].iter().sum();
        head * (&a[n - i] - &b[n]) == (&a[0] - &b[i]) * tail
    })
}

fn running_products(roots: &[Scalar]) -> Vec<Poly> {
    let mut out = Vec::with_capacity(roots.len() + 1);
    out.push(Poly::one());
    for r in roots {
        let next = out.last().expect("nonempty").mul_linear(r);
        out.push(next);
    }
    out
}

fn running_evaluations(roots: &[Scalar], at: &Scalar) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(roots.len() + 1);
    let mut acc = Scalar::one();
    out.push(acc.clone());
    for r in roots {
        acc *= at - r;
        out.push(acc.clone());
    }
    out
}

/// `theta_0..theta_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarthetaTable(pub Vec<Scalar>);

impl VarthetaTable {
    pub fn get(&self, i: usize) -> &Scalar {
        &self.0[i]
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// `theta_1 ... theta_i`.
    pub fn ascending(&self, i: usize) -> Scalar {
        self.0[1..=i].iter().product()
    }

    /// `theta_j ... theta_{j-i+1}`.
    pub fn descending(&self, j: usize, i: usize) -> Scalar {
        self.0[j + 1 - i..=j].iter().product()
    }

    pub fn bracket(&self, j: usize, i: usize) -> Scalar {
        self.descending(j, i) / self.ascending(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;

    fn seq(v: &[&str]) -> Vec<Scalar> {
        v.iter().map(|x| s(x)).collect()
    }

    fn data(a: &[&str], b: &[&str]) -> Result<Data> {
        Data::new(seq(a), seq(b))
    }

    // q-Racah data with q=5, a=2, b=3 up to N=3.
    fn qr_sample() -> Data {
        let q = s("5");
        let make = |x: Scalar| -> Vec<Scalar> {
            (0..3).map(|i| &x * q.pow(i) + x.inv().unwrap() * q.pow(-i)).collect()
        };
        Data::new(make(s("2")), make(s("3"))).unwrap()
    }

    #[test]
    fn validation_examples() {
        // partial-sum differences by hand: -1,-1,-1,1
        assert!(data(&["1", "0", "0", "4"], &["2", "0", "0", "2"]).is_ok());
        assert_eq!(
            data(&["1", "0", "0", "2"], &["2", "0", "0", "1"]),
            Err(Error::DegenerateData { index: 4 })
        );
        assert_eq!(data(&["0"], &["0"]), Err(Error::DegenerateData { index: 1 }));
        assert_eq!(data(&["0"], &["0", "1"]), Err(Error::LengthMismatch { a: 1, b: 2 }));
        assert_eq!(data(&[], &[]), Err(Error::EmptyData));
    }

    #[test]
    fn tau_examples() {
        let d = data(&["1", "0", "0", "4"], &["2", "0", "0", "2"]).unwrap();
        assert_eq!(d.tau(0).unwrap(), Poly::one());
        assert_eq!(d.tau(1).unwrap(), Poly::new(seq(&["-1", "1"])));
        // (x-1) x^2 by repeated convolution of the factors
        let mut oracle = Poly::one();
        for f in [seq(&["-1", "1"]), seq(&["0", "1"]), seq(&["0", "1"])] {
            oracle = &oracle * &Poly::new(f);
        }
        assert_eq!(d.tau(3).unwrap(), oracle);
        assert_eq!(oracle, Poly::new(seq(&["0", "0", "-1", "1"])));
        assert_eq!(d.tau(5), Err(Error::IndexOutOfRange { index: 5, max: 4 }));
        for i in 0..4 {
            assert_eq!(d.tau(i).unwrap().mul_linear(&d.a()[i]), d.tau(i + 1).unwrap());
        }
    }

    #[test]
    fn vartheta_examples() {
        let d = qr_sample();
        let t = d.vartheta();
        assert_eq!(t.get(0), &s("0"));
        assert_eq!(t.get(1), &s("1"));
        // direct partial sums
        let num = &d.a()[0] + &d.a()[1] - &d.b()[0] - &d.b()[1];
        let oracle = num / (&d.a()[0] - &d.b()[0]);
        assert_eq!(t.get(2), &oracle);
        assert_eq!(oracle, s("174/25"));
    }

    #[test]
    fn bracket_examples() {
        let d = qr_sample();
        for j in 0..=3 {
            assert_eq!(d.bracket(j, 0).unwrap(), s("1"));
            assert_eq!(d.bracket(j, j).unwrap(), s("1"));
            for i in 0..=j {
                assert_eq!(d.bracket(j, i).unwrap(), d.bracket(j, j - i).unwrap());
            }
        }
        let t = d.vartheta();
        assert_eq!(d.bracket(2, 1).unwrap(), t.get(2) / t.get(1));
        assert_eq!(d.bracket(2, 1).unwrap(), s("174/25"));
        assert!(d.bracket(2, 3).is_err());
    }

    #[test]
    fn affine_examples() {
        let d = data(&["1", "0", "0", "4"], &["2", "0", "0", "2"]).unwrap();
        assert_eq!(d.affine(&s("1"), &s("0")).unwrap(), d);
        assert_eq!(d.affine(&s("-1"), &s("0")).unwrap().a(), &seq(&["-1", "0", "0", "-4"])[..]);
        assert_eq!(d.affine(&s("0"), &s("1")), Err(Error::ZeroScale));
        let n = d.normalize_endpoints();
        assert_eq!((&n.a()[0], &n.b()[0]), (&s("0"), &s("1")));
        let (sc, t) = (s("3/7"), s("-2"));
        let back = d.affine(&sc, &t).unwrap().affine(&sc.inv().unwrap(), &(-&t / &sc)).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn subleading_coefficients() {
        let d = qr_sample();
        let sums = d.partial_differences();
        for i in 1..=d.n() {
            let tau = d.tau(i).unwrap();
            let eta = d.eta(i).unwrap();
            let a_sum: Scalar = d.a()[..i].iter().sum();
            assert_eq!(tau.coeff(i - 1), -a_sum);
            let diff = &eta - &tau;
            assert!(diff.degree().is_none_or(|k| k < i));
            assert_eq!(diff.coeff(i - 1), sums[i]);
        }
    }

    #[test]
    fn json_round_trip() {
        let d = data(&["1/2", "0"], &["2", "-3/4"]).unwrap();
        let text = d.to_json();
        assert_eq!(text, r#"{"a":["1/2","0"],"b":["2","-3/4"]}"#);
        assert_eq!(Data::from_json(&text).unwrap(), d);
        assert_eq!(
            Data::from_json(r#"{"a":["0"],"b":["0"]}"#),
            Err(Error::DegenerateData { index: 1 })
        );
    }

    #[test]
    fn extension_examples() {
        let ap = data(&["0", "1"], &["3", "4"]).unwrap();
        assert!(ap.extend_check(&s("2"), &s("5")).unwrap());
        let ap3 = data(&["0", "1", "2"], &["3", "4", "5"]).unwrap();
        assert!(!ap3.extend_check(&s("3"), &s("7")).unwrap());
        assert!(ap3.extend_check(&s("3"), &s("6")).unwrap());
        assert_eq!(ap3.extend_check(&s("9"), &s("0")), Err(Error::DegenerateExtension));
        for (d, an, bn) in [(&ap, "2", "5"), (&ap3, "3", "7"), (&ap3, "3", "6")] {
            let ext = d.extended(&s(an), &s(bn)).unwrap();
            let oracle = crate::lowering::lowering_space(&ext).dim == 1;
            assert_eq!(d.extend_check(&s(an), &s(bn)).unwrap(), oracle);
        }
        // a_{i-1} = b_i family, extended with a_2 = b_3 and free a_3
        let shift = data(&["5", "1", "7"], &["2", "5", "1"]).unwrap();
        for a3 in ["0", "1/2", "-4", "11"] {
            assert!(shift.extend_check(&s(a3), &s("7")).unwrap());
            let ext = shift.extended(&s(a3), &s("7")).unwrap();
            assert_eq!(crate::lowering::lowering_space(&ext).dim, 1);
        }
        let bad = data(&["0", "1", "2"], &["3", "4", "6"]).unwrap();
        assert_eq!(bad.extend_check(&s("0"), &s("1")), Err(Error::NotDoubleLowering));
    }
}
