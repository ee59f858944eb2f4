//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every comparison is exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use double_lowering::corpus::{self, random_nonzero, random_scalar, CorpusConfig, CorpusEntry, CorpusKind};
use double_lowering::lowering::{
    candidate_psi, delta, delta_inv, delta_inv_series, delta_series, lowering_space, shift_down_delta,
    shift_up_delta_inv, theta_family_delta, to_monomial,
};
use double_lowering::qracah::{
    closed_form_suite, full_suite, q_binomial_sides, q_int_sides, w_basis, wprime_basis, Operators, QRacahParams,
};
use double_lowering::recurrence::{
    are_twins, classify, e_equation, make_recurrent, twin_partner_i, twin_partner_ii, twin_partner_iii,
    RecurrentCase, Verdict,
};
use double_lowering::{coords_in_basis, report::all_pass, Data, Matrix, Poly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    corpus::generate(&CorpusConfig::new(seed, count, 10)).expect("valid config")
}

fn positives(entries: &[CorpusEntry]) -> impl Iterator<Item = &Data> {
    entries.iter().filter(|e| e.kind.is_positive()).map(|e| &e.data)
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Classification verdict against the brute-force dimension.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let entries = corpus(1, 560);
    let mut bad = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        let dim = lowering_space(&e.data).dim;
        let dl = classify(&e.data).verdict == Verdict::DoubleLowering;
        if dim > 1 || dl != (dim == 1) {
            bad.push(idx);
        }
    }
    let elapsed = start.elapsed();
    let negatives = entries.iter().filter(|e| !e.kind.is_positive()).count();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(10),
        format!("{} sets ({negatives} negative), mismatches {bad:?}, {}", entries.len(), secs(elapsed)),
    )
}

/// `psi eta_i` computed through `tau` coordinates, compared with `theta_i eta_{i-1}`.
fn eta_lowering_failures(d: &Data) -> usize {
    let psi = candidate_psi(d).matrix;
    let theta = d.vartheta();
    let tau = d.tau_basis();
    let eta = d.eta_basis();
    let lower = |p: &Poly| {
        let c = coords_in_basis(p, &tau).expect("graded").0;
        Poly::combination(psi.apply(&c).expect("square").iter().zip(&tau))
    };
    let tau_ok = (1..=d.n()).all(|i| lower(&tau[i]) == tau[i - 1].scale(theta.get(i)));
    assert!(tau_ok, "tau lowering is built in");
    (1..=d.n()).filter(|&i| lower(&eta[i]) != eta[i - 1].scale(theta.get(i))).count()
}

fn criterion_2() -> Outcome {
    let entries = corpus(2, 210);
    let mut pos_bad = 0;
    let mut neg_bad = 0;
    for e in &entries {
        let fails = eta_lowering_failures(&e.data);
        if e.kind.is_positive() && fails != 0 {
            pos_bad += 1;
        }
        if !e.kind.is_positive() && fails == 0 {
            neg_bad += 1;
        }
    }
    outcome(
        pos_bad == 0 && neg_bad == 0,
        format!("{} sets, positives failing {pos_bad}, negatives passing {neg_bad}", entries.len()),
    )
}

fn criterion_3() -> Outcome {
    let entries = corpus(3, 210);
    let mut bad = 0;
    let mut checked = 0;
    for d in positives(&entries) {
        checked += 1;
        let dl = delta(d).matrix;
        let psi = candidate_psi(d).matrix;
        let ok = dl == delta_series(d).matrix
            && delta_inv(d).matrix == delta_inv_series(d).matrix
            && &dl * &psi == &psi * &dl;
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0 && checked > 0, format!("{checked} double lowering sets, failures {bad}"))
}

fn kind_corpus(seed: u64, kind: CorpusKind, count: usize) -> Vec<Data> {
    let cfg = CorpusConfig { kinds: vec![kind], ..CorpusConfig::new(seed, count, 10) };
    corpus::generate(&cfg).expect("valid config").into_iter().map(|e| e.data).collect()
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for d in kind_corpus(41, CorpusKind::ShiftDown, 20) {
        if delta(&d).matrix != shift_down_delta(&d) {
            bad.push("shift_down");
        }
    }
    for d in kind_corpus(42, CorpusKind::ShiftUp, 20) {
        if delta_inv(&d).matrix != shift_up_delta_inv(&d) {
            bad.push("shift_up");
        }
    }
    for d in kind_corpus(43, CorpusKind::Theta, 20) {
        let theta = d.a()[1].clone();
        match theta_family_delta(&d, &theta) {
            Ok((dl, dli)) if dl == delta(&d).matrix && dli == delta_inv(&d).matrix => {}
            _ => bad.push("theta"),
        }
    }
    outcome(bad.is_empty(), format!("60 sets, failures {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let kinds = [CorpusKind::ShiftDown, CorpusKind::ShiftUp, CorpusKind::TwinsQ, CorpusKind::TwinsQuadratic, CorpusKind::TwinsAlternating];
    let cfg = CorpusConfig { kinds: kinds.to_vec(), min_n: 4, ..CorpusConfig::new(55, 100, 10) };
    let entries = corpus::generate(&cfg).expect("valid config");
    let (mut agree, mut yes, mut no, mut bad) = (0, 0, 0, Vec::new());
    for (idx, e) in entries.iter().enumerate() {
        let n = e.data.n();
        let base = Data::new(e.data.a()[..n - 1].to_vec(), e.data.b()[..n - 1].to_vec()).expect("prefix is valid");
        // Alternate the family's own next term, a one-off bump of it, and random values.
        let (an, bn) = loop {
            let (an, bn) = match idx % 3 {
                0 => (e.data.a()[n - 1].clone(), e.data.b()[n - 1].clone()),
                1 => (e.data.a()[n - 1].clone(), &e.data.b()[n - 1] + &random_nonzero(&mut rng)),
                _ => (random_scalar(&mut rng), random_scalar(&mut rng)),
            };
            if base.extended(&an, &bn).is_ok() {
                break (an, bn);
            }
        };
        let fast = match base.extend_check(&an, &bn) {
            Ok(v) => v,
            Err(err) => {
                bad.push(format!("{idx}: {err}"));
                continue;
            }
        };
        let brute = lowering_space(&base.extended(&an, &bn).expect("checked")).dim == 1;
        if fast == brute {
            agree += 1;
        } else {
            bad.push(format!("{idx}: disagreement"));
        }
        if brute {
            yes += 1;
        } else {
            no += 1;
        }
    }
    outcome(
        bad.is_empty() && yes > 0 && no > 0,
        format!("{agree}/100 agree ({yes} extendable, {no} not), problems {bad:?}"),
    )
}

fn all_e_hold(a: &[Scalar], b: &[Scalar]) -> bool {
    let n = a.len() - 1;
    (0..=n).all(|j| (0..=j).all(|i| e_equation(a, b, i, j).expect("equal lengths")))
}

fn twin_pair(rng: &mut ChaCha8Rng, which: usize, n: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let x = [random_scalar(rng), random_nonzero(rng), random_nonzero(rng)];
    let new_a2 = random_nonzero(rng);
    let (case, y) = match which {
        0 => {
            let q = random_nonzero(rng);
            if q.is_one() || q == -Scalar::one() {
                return None;
            }
            (RecurrentCase::I { q }, twin_partner_i(&x, &new_a2).ok()?)
        }
        1 => (RecurrentCase::II, twin_partner_ii(&x, &new_a2).ok()?),
        _ => (RecurrentCase::III, twin_partner_iii(&x, &new_a2, rng.gen_bool(0.5))),
    };
    Some((make_recurrent(&case, &x, n).ok()?, make_recurrent(&case, &y, n).ok()?))
}

/// Builds `a_0..a_n`, `b_0..b_n` from `E(1, j)` and `E(2, j)` alone.
fn from_e_equations(rng: &mut ChaCha8Rng, n: usize) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
    let (a0, a1, a2, b0, b1) = (random_scalar(rng), random_scalar(rng), random_scalar(rng), random_scalar(rng), random_scalar(rng));
    if a1 == b0 || a1 == b1 {
        return None;
    }
    // E(1, 2): (a0 - b1)(a2 - b1) = (b0 - a1)(b2 - a1)
    let b2 = &a1 + (&a0 - &b1) * (&a2 - &b1) / (&b0 - &a1);
    let mut a = vec![a0, a1, a2];
    let mut b = vec![b0, b1, b2];
    for j in 3..=n {
        let s1: Scalar = (0..2).map(|h| &a[h] - &b[h]).sum();
        let s2: Scalar = (0..3).map(|h| &a[h] - &b[h]).sum();
        let c1 = &a[0] - &b[1];
        let c2 = &a[0] - &b[2];
        let m = Matrix::from_rows(vec![vec![c1.clone(), &s1 - &c1], vec![c2.clone(), &s2 - &c2]]).ok()?;
        let r1 = &s1 * &a[j - 1] - &c1 * (&a[j - 1] - &b[j - 1]);
        let r2 = &s2 * &a[j - 2] - &c2 * (&a[j - 2] + &a[j - 1] - &b[j - 2] - &b[j - 1]);
        let sol = m.inverse().ok()?.apply(&[r1, r2]).ok()?;
        a.push(sol[0].clone());
        b.push(sol[1].clone());
    }
    Some((a, b))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut forward_bad = 0;
    for which in 0..3 {
        let mut made = 0;
        while made < 100 {
            let n = rng.gen_range(2..=9);
            let Some((a, b)) = twin_pair(&mut rng, which, n) else { continue };
            made += 1;
            if !all_e_hold(&a, &b) {
                forward_bad += 1;
            }
        }
    }
    let mut converse_bad = 0;
    let mut made = 0;
    while made < 100 {
        let n = rng.gen_range(3..=9);
        let Some((a, b)) = from_e_equations(&mut rng, n) else { continue };
        made += 1;
        let twins = are_twins(&a, &b).expect("equal lengths");
        let ok = matches!(&twins, Some(t) if t.fits(&a) && t.fits(&b)) && all_e_hold(&a, &b);
        if !ok {
            converse_bad += 1;
        }
    }
    let s = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
    let (ca, cb) = (s(&[0, 1, 0, 1]), s(&[0, 0, 1, 0]));
    let counter = !e_equation(&ca, &cb, 2, 3).expect("lengths")
        && (1..=3).all(|j| e_equation(&ca, &cb, 1, j).expect("lengths"));
    outcome(
        forward_bad == 0 && converse_bad == 0 && counter,
        format!("twins->E failures {forward_bad}/300, E->twins failures {converse_bad}/100, counterexample reproduced {counter}"),
    )
}

fn random_params(rng: &mut ChaCha8Rng, n: usize) -> QRacahParams {
    loop {
        let (q, a, b) = (random_nonzero(rng), random_nonzero(rng), random_nonzero(rng));
        if let Ok(p) = QRacahParams::new(q, a, b, n) {
            return p;
        }
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut identities = 0;
    for k in 0..25 {
        let n = 2 + k % 11;
        let p = random_params(&mut rng, n);
        let reports = full_suite(&p).expect("valid params");
        identities += reports.len();
        for r in reports.iter().filter(|r| !r.passed()) {
            failures.push(format!("q={} a={} b={} N={n}: {} at {:?}", p.q, p.a, p.b, r.identity, r.first_mismatch));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("25 parameter sets, {identities} identity checks, failures {failures:?}, {}", secs(elapsed)),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    for k in 0..20 {
        let n = 1 + k % 8;
        let p = random_params(&mut rng, n);
        let ops = Operators::new(&p).expect("valid params");
        for r in closed_form_suite(&ops).iter().filter(|r| !r.passed()) {
            bad.push(r.identity.clone());
        }
        if wprime_basis(&p) != w_basis(&p.inverted()) {
            bad.push("w_prime_inversion".into());
        }
        if p.inverted().data() != p.data() {
            bad.push("data_inversion".into());
        }
        let j = rng.gen_range(0..14usize);
        let i = rng.gen_range(0..=j);
        let (l, r) = q_int_sides(&p.q, i, j);
        if l != r {
            bad.push(format!("q_int {i} {j}"));
        }
        let z = p.a.pow(-1) * &p.b * p.q.pow(j as i64);
        let (l, r) = q_binomial_sides(&p.q, &z, j);
        if l != r {
            bad.push(format!("q_binomial {j}"));
        }
        let z = random_nonzero(&mut rng);
        let (l, r) = q_binomial_sides(&p.q, &z, j);
        if l != r {
            bad.push(format!("q_binomial generic {j}"));
        }
    }
    outcome(bad.is_empty(), format!("20 parameter sets, failures {bad:?}"))
}

/// Matrix of `f(x) -> f((x - t)/s)` on polynomials of degree <= n in the
/// monomial basis.
fn substitution(s: &Scalar, t: &Scalar, n: usize) -> Matrix {
    let lin = Poly::new(vec![-(t / s), s.pow(-1)]);
    let cols: Vec<Vec<Scalar>> = (0..=n)
        .map(|j| {
            let p = lin.pow(j);
            (0..=n).map(|i| p.coeff(i)).collect()
        })
        .collect();
    Matrix::from_columns(&cols).expect("square")
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let entries = corpus(99, 42);
    let mut bad = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        let d = &e.data;
        let base = lowering_space(d);
        let verdict = classify(d).verdict;
        for _ in 0..50 {
            let s = random_nonzero(&mut rng);
            let t = random_scalar(&mut rng);
            let moved = d.affine(&s, &t).expect("nonzero scale");
            let sol = lowering_space(&moved);
            if sol.dim != base.dim || classify(&moved).verdict != verdict {
                bad.push(format!("{idx}: status changed"));
                break;
            }
            if let (Some(old), Some(new)) = (&base.psi, &sol.psi) {
                let g = substitution(&s, &t, d.n());
                let g_inv = g.inverse().expect("invertible");
                let conj = (&(&g * &to_monomial(d, &old.matrix)) * &g_inv).scale(&s.pow(-1));
                if conj != to_monomial(&moved, &new.matrix) {
                    bad.push(format!("{idx}: conjugated psi differs"));
                    break;
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{} sets x 50 affine maps, failures {bad:?}", entries.len()))
}

fn criterion_10() -> Outcome {
    let cfg = CorpusConfig::new(10, 80, 10);
    let c1 = corpus::to_json(&corpus::generate(&cfg).expect("valid"));
    let c2 = corpus::to_json(&corpus::generate(&cfg).expect("valid"));
    let suite_json = |seed: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_params(&mut rng, 5);
        serde_json::to_string(&full_suite(&p).expect("valid")).expect("serializes")
    };
    let (s1, s2) = (suite_json(10), suite_json(10));
    let corpus_same = c1 == c2;
    let suite_same = s1 == s2;
    let suite_ok = all_pass(&serde_json::from_str::<Vec<double_lowering::IdentityReport>>(&s1).expect("parses"));
    outcome(
        corpus_same && suite_same && suite_ok,
        format!("corpus identical {corpus_same} ({} bytes), suite report identical {suite_same} ({} bytes)", c1.len(), s1.len()),
    )
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "classification agrees with brute-force dimension", criterion_1),
        (2, "normalized lowering matrix lowers both bases", criterion_2),
        (3, "transition operator power series", criterion_3),
        (4, "degenerate family formulas", criterion_4),
        (5, "one-step extension test", criterion_5),
        (6, "twin and partial-sum equations", criterion_6),
        (7, "q-Racah identity suite", criterion_7),
        (8, "q-Racah closed forms and symmetries", criterion_8),
        (9, "affine invariance", criterion_9),
        (10, "deterministic output", criterion_10),
    ];
    let mut all = true;
    for (id, name, run) in criteria {
        let o = run();
        all &= o.pass;
        println!("criterion {id} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
