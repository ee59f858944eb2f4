//! Seeded random data sets covering every route to double lowering, plus
//! perturbed negatives.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{validate, Data};
use crate::error::{Error, Result};
use crate::lowering::lowering_space;
use crate::recurrence::{make_recurrent, twin_partner_i, twin_partner_ii, twin_partner_iii, Alphas, RecurrentCase};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    /// `a_{i-1} = b_i`.
    ShiftDown,
    /// `b_{i-1} = a_i`.
    ShiftUp,
    /// Constant middle block with matching endpoints.
    Theta,
    /// Twin sequences `alpha_1 + alpha_2 q^i + alpha_3 q^{-i}`.
    TwinsQ,
    /// Twin sequences quadratic in `i`.
    TwinsQuadratic,
    /// Twin sequences with alternating sign.
    TwinsAlternating,
    /// A twin pair with one `b_j` (`j >= 2`) bumped by one, kept only if the
    /// result is not double lowering.
    Perturbed,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 7] = [
        CorpusKind::ShiftDown,
        CorpusKind::ShiftUp,
        CorpusKind::Theta,
        CorpusKind::TwinsQ,
        CorpusKind::TwinsQuadratic,
        CorpusKind::TwinsAlternating,
        CorpusKind::Perturbed,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CorpusKind::ShiftDown => "shift_down",
            CorpusKind::ShiftUp => "shift_up",
            CorpusKind::Theta => "theta",
            CorpusKind::TwinsQ => "twins_q",
            CorpusKind::TwinsQuadratic => "twins_quadratic",
            CorpusKind::TwinsAlternating => "twins_alternating",
            CorpusKind::Perturbed => "perturbed",
        }
    }

    /// Whether entries of this kind are double lowering by construction.
    pub fn is_positive(&self) -> bool {
        *self != CorpusKind::Perturbed
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Shape(format!("unknown corpus kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub kind: CorpusKind,
    #[serde(flatten)]
    pub data: Data,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    /// Kinds to draw from, in rotation. Empty means all.
    pub kinds: Vec<CorpusKind>,
}

impl CorpusConfig {
    pub fn new(seed: u64, count: usize, max_n: usize) -> Self {
        CorpusConfig { seed, count, min_n: 3, max_n, kinds: Vec::new() }
    }
}

/// A rational with numerator in `-9..=9` and denominator in `1..=5`.
pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=5);
    Scalar::from_int(num) / Scalar::from_int(den)
}

pub fn random_nonzero<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let x = random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

fn random_alphas<R: Rng>(rng: &mut R) -> Alphas {
    [random_scalar(rng), random_nonzero(rng), random_nonzero(rng)]
}

fn random_q<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let q = random_nonzero(rng);
        if !q.is_one() && q != -Scalar::one() {
            return q;
        }
    }
}

fn shift_down<R: Rng>(rng: &mut R, n: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let a = random_vec(rng, n);
    let mut b = vec![random_scalar(rng)];
    b.extend_from_slice(&a[..n - 1]);
    (a, b)
}

fn theta<R: Rng>(rng: &mut R, n: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let t = random_scalar(rng);
    let (a0, b0, a_last) = (random_scalar(rng), random_scalar(rng), random_scalar(rng));
    if a0 == t || b0 == t {
        return None;
    }
    // (t - a_last)(t - a0) = (t - b_last)(t - b0)
    let b_last = &t - (&t - &a_last) * (&t - &a0) / (&t - &b0);
    let mut a = vec![t.clone(); n];
    let mut b = vec![t; n];
    a[0] = a0;
    b[0] = b0;
    a[n - 1] = a_last;
    b[n - 1] = b_last;
    Some((a, b))
}

fn twins<R: Rng>(rng: &mut R, n: usize, which: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let x = random_alphas(rng);
    let new_a2 = random_nonzero(rng);
    let (case, y) = match which {
        0 => (RecurrentCase::I { q: random_q(rng) }, twin_partner_i(&x, &new_a2).ok()?),
        1 => (RecurrentCase::II, twin_partner_ii(&x, &new_a2).ok()?),
        _ => (RecurrentCase::III, twin_partner_iii(&x, &new_a2, rng.gen_bool(0.5))),
    };
    let a = make_recurrent(&case, &x, n - 1).ok()?;
    let b = make_recurrent(&case, &y, n - 1).ok()?;
    Some((a, b))
}

fn draw<R: Rng>(rng: &mut R, kind: CorpusKind, n: usize) -> Option<Data> {
    let (a, b) = match kind {
        CorpusKind::ShiftDown => shift_down(rng, n),
        CorpusKind::ShiftUp => {
            let (a, b) = shift_down(rng, n);
            (b, a)
        }
        CorpusKind::Theta => theta(rng, n)?,
        CorpusKind::TwinsQ => twins(rng, n, 0)?,
        CorpusKind::TwinsQuadratic => twins(rng, n, 1)?,
        CorpusKind::TwinsAlternating => twins(rng, n, 2)?,
        CorpusKind::Perturbed => {
            let which = rng.gen_range(0..3);
            let (a, mut b) = twins(rng, n, which)?;
            let j = rng.gen_range(2..n);
            b[j] += Scalar::one();
            validate(&a, &b).ok()?;
            let d = Data::new(a, b).ok()?;
            return (lowering_space(&d).dim == 0).then_some(d);
        }
    };
    validate(&a, &b).ok()?;
    Data::new(a, b).ok()
}

/// Draws `count` entries, rotating through the requested kinds. Rejected
/// draws are repeated from the same stream, so output depends only on the
/// configuration.
pub fn generate(config: &CorpusConfig) -> Result<Vec<CorpusEntry>> {
    if config.min_n < 3 || config.max_n < config.min_n {
        return Err(Error::Shape(format!("need 3 <= min_n <= max_n, got {}..={}", config.min_n, config.max_n)));
    }
    let kinds: &[CorpusKind] = if config.kinds.is_empty() { &CorpusKind::ALL } else { &config.kinds };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.count);
    for idx in 0..config.count {
        let kind = kinds[idx % kinds.len()];
        let data = loop {
            let n = rng.gen_range(config.min_n..=config.max_n);
            if let Some(d) = draw(&mut rng, kind, n) {
                break d;
            }
        };
        out.push(CorpusEntry { kind, data });
    }
    Ok(out)
}

/// The corpus as pretty-printed JSON.
pub fn to_json(entries: &[CorpusEntry]) -> String {
    serde_json::to_string_pretty(entries).expect("corpus entries serialize")
}

pub fn from_json(text: &str) -> Result<Vec<CorpusEntry>> {
    Ok(serde_json::from_str(text)?)
}
