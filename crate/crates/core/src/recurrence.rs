//! Recurrent sequences, parameter triples, twins, the partial-sum
//! equations `E(i, j)`, closed-form recurrent sequences, and the
//! four-case classification of double lowering data.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::data::Data;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solution set of `a_{i-1} - beta a_i + a_{i+1} = gamma` over `(beta, gamma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaGammaSet {
    Empty,
    Unique { beta: Scalar, gamma: Scalar },
    /// `gamma = gamma_at_zero + slope * beta`, `beta` free.
    Line { gamma_at_zero: Scalar, slope: Scalar },
    /// Every pair; only possible with no equations at all.
    Plane,
}

impl BetaGammaSet {
    pub fn contains(&self, beta: &Scalar, gamma: &Scalar) -> bool {
        match self {
            BetaGammaSet::Empty => false,
            BetaGammaSet::Unique { beta: b, gamma: g } => b == beta && g == gamma,
            BetaGammaSet::Line { gamma_at_zero, slope } => *gamma == gamma_at_zero + slope * beta,
            BetaGammaSet::Plane => true,
        }
    }

    /// Intersection of two solution sets.
    pub fn intersect(&self, other: &BetaGammaSet) -> BetaGammaSet {
        use BetaGammaSet::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (Plane, x) | (x, Plane) => x.clone(),
            (Unique { beta, gamma }, x) | (x, Unique { beta, gamma }) => {
                if x.contains(beta, gamma) {
                    Unique { beta: beta.clone(), gamma: gamma.clone() }
                } else {
                    Empty
                }
            }
            (Line { gamma_at_zero: g1, slope: s1 }, Line { gamma_at_zero: g2, slope: s2 }) => {
                if s1 == s2 {
                    if g1 == g2 {
                        self.clone()
                    } else {
                        Empty
                    }
                } else {
                    // g1 + s1 beta = g2 + s2 beta
                    let beta = (g2 - g1) / (s1 - s2);
                    let gamma = g1 + s1 * &beta;
                    Unique { beta, gamma }
                }
            }
        }
    }
}

/// Exact solution set of the `(beta, gamma)` system for `1 <= i <= n-1`,
/// where `seq = a_0..a_n`.
pub fn beta_gamma_solutions(seq: &[Scalar]) -> Result<BetaGammaSet> {
    if seq.len() < 3 {
        return Err(Error::SequenceTooShort { len: seq.len(), min: 3 });
    }
    // Each equation reads gamma = s_i - a_i beta with s_i = a_{i-1} + a_{i+1}.
    let s = |i: usize| &seq[i - 1] + &seq[i + 1];
    let (a1, s1) = (&seq[1], s(1));
    let mut forced: Option<Scalar> = None;
    for i in 2..seq.len() - 1 {
        let (ai, si) = (&seq[i], s(i));
        if ai == a1 {
            if si != s1 {
                return Ok(BetaGammaSet::Empty);
            }
            continue;
        }
        let beta = (&si - &s1) / (ai - a1);
        match &forced {
            Some(b) if *b != beta => return Ok(BetaGammaSet::Empty),
            Some(_) => {}
            None => forced = Some(beta),
        }
    }
    Ok(match forced {
        Some(beta) => {
            let gamma = &s1 - a1 * &beta;
            BetaGammaSet::Unique { beta, gamma }
        }
        None => BetaGammaSet::Line { gamma_at_zero: s1, slope: -a1 },
    })
}

/// `a_{i-1}^2 - beta a_{i-1} a_i + a_i^2 - gamma (a_{i-1} + a_i)`.
fn rho_term(prev: &Scalar, cur: &Scalar, beta: &Scalar, gamma: &Scalar) -> Scalar {
    prev * prev - beta * prev * cur + cur * cur - gamma * (prev + cur)
}

/// The common value of the `rho` expression over `1 <= i <= n`, if any.
pub fn rho_for(seq: &[Scalar], beta: &Scalar, gamma: &Scalar) -> Result<Option<Scalar>> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort { len: seq.len(), min: 2 });
    }
    let first = rho_term(&seq[0], &seq[1], beta, gamma);
    let same = seq.windows(2).skip(1).all(|w| rho_term(&w[0], &w[1], beta, gamma) == first);
    Ok(same.then_some(first))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParameterTriple {
    pub beta: Scalar,
    pub gamma: Scalar,
    pub rho: Scalar,
}

impl ParameterTriple {
    /// True iff `seq` is `(beta, gamma)`- and `(beta, gamma, rho)`-recurrent.
    pub fn fits(&self, seq: &[Scalar]) -> bool {
        let bg = seq
            .windows(3)
            .all(|w| &w[0] - &self.beta * &w[1] + &w[2] == self.gamma);
        let r = seq
            .windows(2)
            .all(|w| rho_term(&w[0], &w[1], &self.beta, &self.gamma) == self.rho);
        bg && r
    }
}

/// A parameter triple shared by both sequences, if one exists.
///
/// On a one-parameter family of common `(beta, gamma)` the `rho`
/// agreement condition is linear in `beta`; its unique root is returned,
/// or `beta = 0` when it holds identically.
pub fn are_twins(a: &[Scalar], b: &[Scalar]) -> Result<Option<ParameterTriple>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
    }
    let common = beta_gamma_solutions(a)?.intersect(&beta_gamma_solutions(b)?);
    let (beta, gamma) = match common {
        BetaGammaSet::Empty => return Ok(None),
        BetaGammaSet::Unique { beta, gamma } => (beta, gamma),
        BetaGammaSet::Line { gamma_at_zero, slope } => {
            // rho_a - rho_b at i = 1 as c0 + c1 beta
            let at = |beta: &Scalar| {
                let gamma = &gamma_at_zero + &slope * beta;
                rho_term(&a[0], &a[1], beta, &gamma) - rho_term(&b[0], &b[1], beta, &gamma)
            };
            let c0 = at(&Scalar::zero());
            let c1 = at(&Scalar::one()) - &c0;
            let beta = if c0.is_zero() && c1.is_zero() {
                Scalar::zero()
            } else if c1.is_zero() {
                return Ok(None);
            } else {
                -c0 / c1
            };
            let gamma = &gamma_at_zero + &slope * &beta;
            (beta, gamma)
        }
        BetaGammaSet::Plane => unreachable!("sequences of length >= 3 give at least one equation"),
    };
    let ra = rho_for(a, &beta, &gamma)?;
    let rb = rho_for(b, &beta, &gamma)?;
    Ok(match (ra, rb) {
        (Some(x), Some(y)) if x == y => Some(ParameterTriple { beta, gamma, rho: x }),
        _ => None,
    })
}

/// `E(i, j)`:
/// `(sum_{h<=i}(a_h-b_h))(a_{j-i}-b_j) == (a_0-b_i)(sum_{h=j-i}^{j}(a_h-b_h))`.
pub fn e_equation(a: &[Scalar], b: &[Scalar], i: usize, j: usize) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { a: a.len(), b: b.len() });
    }
    if j >= a.len() {
        return Err(Error::IndexOutOfRange { index: j, max: a.len().saturating_sub(1) });
    }
    if i > j {
        return Err(Error::IndexOutOfRange { index: i, max: j });
    }
    let d = |h: usize| &a[h] - &b[h];
    let head: Scalar = (0..=i).map(d).sum();
    let tail: Scalar = (j - i..=j).map(d).sum();
    Ok(head * (&a[j - i] - &b[j]) == (&a[0] - &b[i]) * tail)
}

/// The three closed-form families of recurrent sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum RecurrentCase {
    /// `alpha_1 + alpha_2 q^i + alpha_3 q^{-i}`
    I { q: Scalar },
    /// `alpha_1 + alpha_2 i + alpha_3 C(i, 2)`
    II,
    /// `alpha_1 + alpha_2 (-1)^i + alpha_3 i (-1)^i`
    III,
}

impl RecurrentCase {
    fn check(&self) -> Result<()> {
        if let RecurrentCase::I { q } = self {
            if q.is_zero() || q.is_one() || *q == -Scalar::one() {
                return Err(Error::InvalidQ(format!("q = {q} must avoid 0, 1, -1")));
            }
        }
        Ok(())
    }

    /// Parses a case tag `I`, `II` or `III`; case I takes `q`.
    pub fn from_tag(tag: &str, q: Option<Scalar>) -> Result<Self> {
        let case = match (tag, q) {
            ("I", Some(q)) => RecurrentCase::I { q },
            ("I", None) => return Err(Error::InvalidQ("case I needs q".into())),
            ("II", _) => RecurrentCase::II,
            ("III", _) => RecurrentCase::III,
            _ => return Err(Error::Internal(format!("unknown case tag {tag:?}"))),
        };
        case.check()?;
        Ok(case)
    }
}

/// `(alpha_1, alpha_2, alpha_3)`.
pub type Alphas = [Scalar; 3];

fn binom(i: i64, k: i64) -> Scalar {
    let mut acc = Scalar::one();
    for t in 0..k {
        acc = acc * Scalar::from_int(i - t) / Scalar::from_int(t + 1);
    }
    acc
}

fn term(case: &RecurrentCase, al: &Alphas, i: i64) -> Scalar {
    let [a1, a2, a3] = al;
    match case {
        RecurrentCase::I { q } => a1 + a2 * q.pow(i) + a3 * q.pow(-i),
        RecurrentCase::II => a1 + a2 * Scalar::from_int(i) + a3 * binom(i, 2),
        RecurrentCase::III => {
            let sg = Scalar::sign_pow(i);
            a1 + a2 * &sg + a3 * Scalar::from_int(i) * sg
        }
    }
}

/// `a_0..a_n` from the closed form.
pub fn make_recurrent(case: &RecurrentCase, alphas: &Alphas, n: usize) -> Result<Vec<Scalar>> {
    case.check()?;
    Ok((0..=n as i64).map(|i| term(case, alphas, i)).collect())
}

/// `a_0 + ... + a_{i-1}` from the closed form.
pub fn partial_sum_closed(case: &RecurrentCase, alphas: &Alphas, i: usize) -> Result<Scalar> {
    case.check()?;
    let [a1, a2, a3] = alphas;
    let iv = Scalar::from_int(i as i64);
    let one = Scalar::one();
    Ok(match case {
        RecurrentCase::I { q } => {
            let qi = q.pow(i as i64);
            let qinv = q.inv()?;
            a1 * &iv
                + a2 * (&one - &qi) / (&one - q)
                + a3 * (&one - qi.inv()?) / (&one - &qinv)
        }
        RecurrentCase::II => a1 * &iv + a2 * binom(i as i64, 2) + a3 * binom(i as i64, 3),
        RecurrentCase::III => {
            let two = Scalar::from_int(2);
            let sg = Scalar::sign_pow(i as i64);
            (&two * a2 - a3 + Scalar::from_int(4) * a1 * &iv + (a3 - &two * a2) * &sg
                - two * a3 * iv * sg)
                / Scalar::from_int(4)
        }
    })
}

/// The parameter triple the closed form carries.
pub fn closed_form_triple(case: &RecurrentCase, alphas: &Alphas) -> Result<ParameterTriple> {
    case.check()?;
    let [a1, a2, a3] = alphas;
    Ok(match case {
        RecurrentCase::I { q } => {
            let qinv = q.inv()?;
            let qm1sq = (q - Scalar::one()).pow(2);
            ParameterTriple {
                beta: q + &qinv,
                gamma: -(a1 * &qm1sq * &qinv),
                rho: a1 * a1 * qm1sq * &qinv - a2 * a3 * (q - &qinv).pow(2),
            }
        }
        RecurrentCase::II => ParameterTriple {
            beta: Scalar::from_int(2),
            gamma: a3.clone(),
            rho: a2 * a2 - a2 * a3 - Scalar::from_int(2) * a1 * a3,
        },
        RecurrentCase::III => ParameterTriple {
            beta: Scalar::from_int(-2),
            gamma: Scalar::from_int(4) * a1,
            rho: a3 * a3 - Scalar::from_int(4) * a1 * a1,
        },
    })
}

/// Whether two closed forms of the same case are related so that they
/// share a parameter triple.
pub fn twin_relation_holds(case: &RecurrentCase, x: &Alphas, y: &Alphas) -> bool {
    let ([a1, a2, a3], [b1, b2, b3]) = (x, y);
    match case {
        RecurrentCase::I { .. } => a1 == b1 && a2 * a3 == b2 * b3,
        RecurrentCase::II => {
            a3 == b3 && (a2 - b2) * (a2 + b2 - a3) == Scalar::from_int(2) * (a1 - b1) * a3
        }
        RecurrentCase::III => a1 == b1 && (a3 == b3 || *a3 == -b3),
    }
}

/// Case I partner with `alpha_2' = new_a2`; needs `new_a2 != 0`.
pub fn twin_partner_i(x: &Alphas, new_a2: &Scalar) -> Result<Alphas> {
    let a3 = (&x[1] * &x[2]).checked_div(new_a2)?;
    Ok([x[0].clone(), new_a2.clone(), a3])
}

/// Case II partner with `alpha_2' = new_a2`; needs `alpha_3 != 0`.
pub fn twin_partner_ii(x: &Alphas, new_a2: &Scalar) -> Result<Alphas> {
    let [a1, a2, a3] = x;
    let shift = ((a2 - new_a2) * (a2 + new_a2 - a3)).checked_div(&(Scalar::from_int(2) * a3))?;
    Ok([a1 - shift, new_a2.clone(), a3.clone()])
}

/// Case III partner with `alpha_2' = new_a2` and `alpha_3' = +-alpha_3`.
pub fn twin_partner_iii(x: &Alphas, new_a2: &Scalar, flip: bool) -> Alphas {
    let a3 = if flip { -&x[2] } else { x[2].clone() };
    [x[0].clone(), new_a2.clone(), a3]
}

/// One of the four sufficient conditions for double lowering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Case {
    /// `a_{i-1} = b_i`
    ShiftDown,
    /// `a_i = b_{i-1}`
    ShiftUp,
    /// constant middle block `theta` with the endpoint condition
    Theta(Scalar),
    /// twin recurrent sequences
    Twins(ParameterTriple),
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::ShiftDown => "CaseI_shiftDown",
            Case::ShiftUp => "CaseII_shiftUp",
            Case::Theta(_) => "CaseIII_theta",
            Case::Twins(_) => "CaseIV_twins",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    DoubleLowering,
    NotDoubleLowering,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DoubleLowering => "DoubleLowering",
            Verdict::NotDoubleLowering => "NotDoubleLowering",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub cases: Vec<Case>,
}

impl Classification {
    pub fn theta(&self) -> Option<&Scalar> {
        self.cases.iter().find_map(|c| match c {
            Case::Theta(t) => Some(t),
            _ => None,
        })
    }

    pub fn triple(&self) -> Option<&ParameterTriple> {
        self.cases.iter().find_map(|c| match c {
            Case::Twins(t) => Some(t),
            _ => None,
        })
    }

    pub fn tags(&self) -> Vec<&'static str> {
        self.cases.iter().map(Case::tag).collect()
    }
}

#[derive(Serialize)]
struct Witness<'a> {
    theta: Option<&'a Scalar>,
    triple: Option<&'a ParameterTriple>,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Classification", 3)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("cases", &self.tags())?;
        st.serialize_field("witness", &Witness { theta: self.theta(), triple: self.triple() })?;
        st.end()
    }
}

fn shift_down(a: &[Scalar], b: &[Scalar]) -> bool {
    (1..a.len()).all(|i| a[i - 1] == b[i])
}

fn theta_case(a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let n = a.len();
    // n >= 3, so the middle block 1..=n-2 is nonempty and fixes theta.
    let theta = &a[1];
    if (1..=n - 2).any(|i| a[i] != *theta || b[i] != *theta) {
        return None;
    }
    if a[0] == *theta || b[0] == *theta {
        return None;
    }
    let lhs = (theta - &a[n - 1]) * (theta - &a[0]);
    let rhs = (theta - &b[n - 1]) * (theta - &b[0]);
    (lhs == rhs).then(|| theta.clone())
}

/// Decides double lowering from the four sufficient-and-necessary
/// conditions, reporting every one that holds. Data with `N <= 2` is
/// always double lowering and gets an empty case list.
pub fn classify(data: &Data) -> Classification {
    let (a, b) = (data.a(), data.b());
    if data.n() <= 2 {
        return Classification { verdict: Verdict::DoubleLowering, cases: Vec::new() };
    }
    let mut cases = Vec::new();
    if shift_down(a, b) {
        cases.push(Case::ShiftDown);
    }
    if shift_down(b, a) {
        cases.push(Case::ShiftUp);
    }
    if let Some(theta) = theta_case(a, b) {
        cases.push(Case::Theta(theta));
    }
    if let Some(t) = are_twins(a, b).expect("equal lengths >= 3") {
        cases.push(Case::Twins(t));
    }
    let verdict = if cases.is_empty() { Verdict::NotDoubleLowering } else { Verdict::DoubleLowering };
    Classification { verdict, cases }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;
    use proptest::prelude::*;

    fn seq(v: &[&str]) -> Vec<Scalar> {
        v.iter().map(|x| s(x)).collect()
    }

    fn rho_direct(v: &[Scalar], beta: &Scalar, gamma: &Scalar, i: usize) -> Scalar {
        let (p, c) = (&v[i - 1], &v[i]);
        p * p - beta * p * c + c * c - gamma * (p + c)
    }

    #[test]
    fn beta_gamma_examples() {
        let ap = beta_gamma_solutions(&seq(&["0", "1", "2", "3"])).unwrap();
        assert!(ap.contains(&s("2"), &s("0")));
        let c = s("7/3");
        let constant = beta_gamma_solutions(&vec![c.clone(); 4]).unwrap();
        assert_eq!(constant, BetaGammaSet::Line { gamma_at_zero: s("14/3"), slope: -&c });
        for beta in [s("0"), s("-5/2"), s("9")] {
            assert!(constant.contains(&beta, &(&c * (s("2") - &beta))));
        }
        let short = beta_gamma_solutions(&seq(&["0", "1", "2"])).unwrap();
        assert_eq!(short, BetaGammaSet::Line { gamma_at_zero: s("2"), slope: s("-1") });
        assert_eq!(
            beta_gamma_solutions(&seq(&["0", "1"])),
            Err(Error::SequenceTooShort { len: 2, min: 3 })
        );
        assert_eq!(beta_gamma_solutions(&seq(&["0", "1", "1", "5"])).unwrap(), BetaGammaSet::Empty);
    }

    #[test]
    fn rho_examples() {
        let ap = seq(&["0", "1", "2", "3"]);
        assert_eq!(rho_for(&ap, &s("2"), &s("0")).unwrap(), Some(s("1")));
        let (beta, gamma) = (s("7/3"), s("-1/3"));
        // direct evaluation at i = 1, 2
        let v = seq(&["0", "1", "2"]);
        assert_eq!(rho_direct(&v, &beta, &gamma, 1), s("4/3"));
        assert_eq!(rho_direct(&v, &beta, &gamma, 2), s("4/3"));
        assert_eq!(rho_for(&v, &beta, &gamma).unwrap(), Some(s("4/3")));
        // (3,4,6) is (7/3,-1/3)-recurrent, so rho exists
        let w = seq(&["3", "4", "6"]);
        assert_eq!(rho_direct(&w, &beta, &gamma, 1), s("-2/3"));
        assert_eq!(rho_direct(&w, &beta, &gamma, 2), s("-2/3"));
        assert_eq!(rho_for(&w, &beta, &gamma).unwrap(), Some(s("-2/3")));
        // off the recurrence the values differ: 1 vs 4
        let u = seq(&["0", "1", "3"]);
        assert_eq!(rho_direct(&u, &s("2"), &s("0"), 1), s("1"));
        assert_eq!(rho_direct(&u, &s("2"), &s("0"), 2), s("4"));
        assert_eq!(rho_for(&u, &s("2"), &s("0")).unwrap(), None);
    }

    #[test]
    fn twin_examples() {
        let t = are_twins(&seq(&["0", "1", "2", "3"]), &seq(&["3", "4", "5", "6"])).unwrap().unwrap();
        assert_eq!(t, ParameterTriple { beta: s("2"), gamma: s("0"), rho: s("1") });
        assert_eq!(are_twins(&seq(&["0", "1", "2"]), &seq(&["3", "4", "6"])).unwrap(), None);
        let a = seq(&["1", "4", "2", "-3"]);
        let t = are_twins(&a, &a).unwrap().unwrap();
        assert!(t.fits(&a));
        assert_eq!(
            are_twins(&seq(&["0", "1", "2"]), &seq(&["0", "1"])),
            Err(Error::LengthMismatch { a: 3, b: 2 })
        );
    }

    #[test]
    fn e_equation_examples() {
        let a = seq(&["0", "1", "0", "1"]);
        let b = seq(&["0", "0", "1", "0"]);
        assert!(!e_equation(&a, &b, 2, 3).unwrap());
        for j in 0..4 {
            assert!(e_equation(&a, &b, 0, j).unwrap());
            assert!(e_equation(&a, &b, j, j).unwrap());
        }
        for j in 1..4 {
            assert!(e_equation(&a, &b, 1, j).unwrap());
        }
        assert!(e_equation(&a, &b, 3, 4).is_err());
        assert!(e_equation(&a, &b, 3, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let ii = make_recurrent(&RecurrentCase::II, &[s("0"), s("1"), s("0")], 3).unwrap();
        assert_eq!(ii, seq(&["0", "1", "2", "3"]));
        let q = RecurrentCase::I { q: s("5") };
        let i = make_recurrent(&q, &[s("0"), s("2"), s("1/2")], 1).unwrap();
        assert_eq!(i, seq(&["5/2", "101/10"]));
        let iii = make_recurrent(&RecurrentCase::III, &[s("0"), s("1"), s("1")], 3).unwrap();
        assert_eq!(iii, seq(&["1", "-2", "3", "-4"]));
        assert!(matches!(
            make_recurrent(&RecurrentCase::I { q: s("-1") }, &[s("0"), s("0"), s("0")], 2),
            Err(Error::InvalidQ(_))
        ));
        assert!(RecurrentCase::from_tag("IV", None).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        let al = [s("0"), s("1"), s("0")];
        assert_eq!(partial_sum_closed(&RecurrentCase::II, &al, 0).unwrap(), s("0"));
        assert_eq!(partial_sum_closed(&RecurrentCase::II, &al, 4).unwrap(), s("0") + s("1") + s("2") + s("3"));
        let q = RecurrentCase::I { q: s("5") };
        let al = [s("0"), s("2"), s("1/2")];
        assert_eq!(partial_sum_closed(&q, &al, 2).unwrap(), s("5/2") + s("101/10"));
        assert_eq!(partial_sum_closed(&q, &al, 2).unwrap(), s("63/5"));
        assert_eq!(partial_sum_closed(&RecurrentCase::III, &al, 0).unwrap(), s("0"));
    }

    #[test]
    fn classify_examples() {
        let d = Data::new(seq(&["1", "0", "0", "4"]), seq(&["2", "0", "0", "2"])).unwrap();
        let c = classify(&d);
        assert_eq!(c.verdict, Verdict::DoubleLowering);
        assert_eq!(c.cases, vec![Case::Theta(s("0"))]);
        let d = Data::new(seq(&["0", "1", "2"]), seq(&["3", "4", "6"])).unwrap();
        assert_eq!(classify(&d).verdict, Verdict::NotDoubleLowering);
        let q = s("5");
        let make = |x: Scalar| -> Vec<Scalar> {
            (0..6).map(|i| &x * q.pow(i) + x.inv().unwrap() * q.pow(-i)).collect()
        };
        let d = Data::new(make(s("2")), make(s("3"))).unwrap();
        let c = classify(&d);
        assert_eq!(c.verdict, Verdict::DoubleLowering);
        let expected = closed_form_triple(&RecurrentCase::I { q: q.clone() }, &[s("0"), s("2"), s("1/2")]).unwrap();
        assert_eq!(expected.beta, s("26/5"));
        assert_eq!(expected.gamma, s("0"));
        assert_eq!(c.cases, vec![Case::Twins(expected)]);
        let small = Data::new(seq(&["1", "5"]), seq(&["2", "3"])).unwrap();
        assert_eq!(classify(&small), Classification { verdict: Verdict::DoubleLowering, cases: vec![] });
    }

    #[test]
    fn classification_json_shape() {
        let d = Data::new(seq(&["1", "0", "0", "4"]), seq(&["2", "0", "0", "2"])).unwrap();
        let text = serde_json::to_string(&classify(&d)).unwrap();
        assert_eq!(
            text,
            r#"{"verdict":"DoubleLowering","cases":["CaseIII_theta"],"witness":{"theta":"0","triple":null}}"#
        );
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-9i64..10, 1i64..5).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
    }

    fn arb_case() -> impl Strategy<Value = RecurrentCase> {
        prop_oneof![
            arb_scalar()
                .prop_filter("q avoids 0, 1, -1", |q| !q.is_zero() && !q.is_one() && *q != -Scalar::one())
                .prop_map(|q| RecurrentCase::I { q }),
            Just(RecurrentCase::II),
            Just(RecurrentCase::III),
        ]
    }

    proptest! {
        #[test]
        fn closed_forms_carry_their_triple(
            case in arb_case(),
            al in [arb_scalar(), arb_scalar(), arb_scalar()],
            n in 2usize..9,
        ) {
            let v = make_recurrent(&case, &al, n).unwrap();
            let t = closed_form_triple(&case, &al).unwrap();
            prop_assert!(t.fits(&v));
            let mut acc = Scalar::zero();
            for i in 0..=n + 1 {
                prop_assert_eq!(partial_sum_closed(&case, &al, i).unwrap(), acc.clone());
                if i <= n {
                    acc += &v[i];
                }
            }
        }

        #[test]
        fn rho_exists_on_recurrence(v in prop::collection::vec(arb_scalar(), 3..8)) {
            match beta_gamma_solutions(&v).unwrap() {
                BetaGammaSet::Unique { beta, gamma } => {
                    prop_assert!(rho_for(&v, &beta, &gamma).unwrap().is_some());
                }
                BetaGammaSet::Line { gamma_at_zero, slope } => {
                    for beta in [s("0"), s("3/2"), s("-7")] {
                        let gamma = &gamma_at_zero + &slope * &beta;
                        prop_assert!(rho_for(&v, &beta, &gamma).unwrap().is_some());
                    }
                }
                _ => {}
            }
        }
    }
}
