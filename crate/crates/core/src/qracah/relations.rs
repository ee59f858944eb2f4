//! Exact checks of the q-Racah operator calculus.
//!
//! Each check returns one [`IdentityReport`] per identity. Every identity
//! here is a theorem, so a failure means a bug in this crate.

use crate::data::Data;
use crate::matrix::{matrix_polynomial, nilpotent_inverse, Basis, Matrix};
use crate::poly::{check_graded_basis, coords_in_basis, embed_symmetric, poly_eval, Poly};
use crate::report::IdentityReport;
use crate::scalar::Scalar;

use super::operators::{closed_form_entry_matrices, delta_closed_form, delta_inv_closed_form, exp_entry_matrix, Operators};
use super::qexp::{expq, expq_inv};
use super::wbasis::{scaled_psi, w_basis, w_basis_via_eta, wprime_basis, wprime_basis_via_eta};
use super::{
    bracket_closed, eta_at_a0, eta_laurent, q_binomial_sides, q_int_sides, tau_at_b0, tau_laurent, vartheta_closed,
    vartheta_closed_inverse_form, vartheta_products, QRacahParams,
};
use crate::error::Result;

fn sc(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// The four q-exponentials `exp_q(c^{-1} xi psi)` and their inverses for `c = a, b`.
struct Exps {
    a: Matrix,
    a_inv: Matrix,
    b: Matrix,
    b_inv: Matrix,
}

impl Exps {
    fn new(p: &QRacahParams) -> Exps {
        let ta = scaled_psi(p, &p.a);
        let tb = scaled_psi(p, &p.b);
        let e = |r: Result<Matrix>| r.expect("(q;q)_i is nonzero for valid parameters");
        Exps {
            a: e(expq(&ta, &p.q)),
            a_inv: e(expq_inv(&ta, &p.q)),
            b: e(expq(&tb, &p.q)),
            b_inv: e(expq_inv(&tb, &p.q)),
        }
    }
}

/// The factorization of `Delta` into q-exponentials and its consequences.
pub fn delta_factorization_check(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let e = Exps::new(p);
    let id = ops.identity();
    let mut out = vec![
        IdentityReport::matrices("delta_equals_expq_product", &ops.delta, &(&e.a * &e.b_inv)),
        IdentityReport::matrices("expq_factors_commute", &(&e.a * &e.b_inv), &(&e.b_inv * &e.a)),
        IdentityReport::matrices("delta_inverse_equals_expq_product", &ops.delta_inv, &(&e.b * &e.a_inv)),
        IdentityReport::matrices("expq_a_inverse_pair", &(&e.a * &e.a_inv), &id),
        IdentityReport::matrices("expq_b_inverse_pair", &(&e.b * &e.b_inv), &id),
        IdentityReport::matrices("expq_inv_a_times_delta", &(&e.a_inv * &ops.delta), &e.b_inv),
        IdentityReport::matrices("expq_b_times_delta", &(&e.b * &ops.delta), &e.a),
        IdentityReport::matrices("delta_entries_closed_form", &ops.delta, &delta_closed_form(p)),
        IdentityReport::matrices("delta_inv_entries_closed_form", &ops.delta_inv, &delta_inv_closed_form(p)),
    ];
    let z_fail = (0..=p.n).find(|&j| {
        let z = p.a.pow(-1) * &p.b * p.q.pow(j as i64);
        let (l, r) = q_binomial_sides(&p.q, &z, j);
        l != r
    });
    out.push(IdentityReport::indexed("q_binomial_coefficient_match", z_fail));
    out
}

/// `x p_i` against the three-term right-hand side for `0 <= i < N`.
fn three_term_failure(basis: &[Poly], n: usize, mid: impl Fn(i64) -> Scalar, low: impl Fn(i64) -> Scalar) -> Option<usize> {
    let x = Poly::x();
    (0..n).find(|&i| {
        let lhs = &x * &basis[i];
        let ii = i as i64;
        let mut rhs = &basis[i + 1] + &basis[i].scale(&mid(ii));
        if i > 0 {
            rhs = &rhs + &basis[i - 1].scale(&low(ii));
        }
        lhs != rhs
    })
}

/// Three-term recurrences of `w` and `w'`.
pub fn w_three_term_check(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let one = Scalar::one();
    let w = w_basis(p);
    let wp = wprime_basis(p);
    let w_fail = three_term_failure(
        w.polys(),
        p.n,
        |i| q.pow(-i) * (a.pow(-1) + b.pow(-1)),
        |i| (&one - q.pow(-i)) * (&one - q.pow(1 - i) * a.pow(-1) * b.pow(-1)),
    );
    let wp_fail = three_term_failure(
        wp.polys(),
        p.n,
        |i| q.pow(i) * (a + b),
        |i| (&one - q.pow(i)) * (&one - q.pow(i - 1) * a * b),
    );
    vec![
        IdentityReport::indexed("w_three_term_recurrence", w_fail),
        IdentityReport::indexed("w_prime_three_term_recurrence", wp_fail),
    ]
}

fn first_poly_mismatch(lhs: &[Poly], rhs: &[Poly]) -> Option<usize> {
    if lhs.len() != rhs.len() {
        return Some(lhs.len().min(rhs.len()));
    }
    lhs.iter().zip(rhs).position(|(x, y)| x != y)
}

/// The two constructions of each of `w`, `w'`, the basic hypergeometric
/// forms, parameter inversion, and `psi w_i = theta_i w_{i-1}`.
pub fn w_basis_check(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let w = w_basis(p);
    let wp = wprime_basis(p);
    let hyper_w = ops.basis_polys(Basis::W);
    let hyper_wp = ops.basis_polys(Basis::WPrime);
    let theta = ops.data.vartheta();
    let tau = ops.data.tau_basis();
    let lower_fail = (0..=p.n).find(|&i| {
        let coords = match coords_in_basis(w.get(i), &tau) {
            Ok(c) => c.0,
            Err(_) => return true,
        };
        let image = ops.psi.apply(&coords).expect("square");
        let lowered = Poly::combination(image.iter().zip(&tau));
        let want = if i == 0 { Poly::zero() } else { w.get(i - 1).scale(theta.get(i)) };
        lowered != want
    });
    let graded = |basis: &[Poly]| check_graded_basis(basis).err().map(|_| 0);
    vec![
        IdentityReport::indexed("w_monic_graded", graded(w.polys())),
        IdentityReport::indexed("w_prime_monic_graded", graded(wp.polys())),
        IdentityReport::indexed("w_from_tau_equals_w_from_eta", first_poly_mismatch(w.polys(), w_basis_via_eta(p).polys())),
        IdentityReport::indexed(
            "w_prime_from_tau_equals_w_prime_from_eta",
            first_poly_mismatch(wp.polys(), wprime_basis_via_eta(p).polys()),
        ),
        IdentityReport::indexed("w_hypergeometric_matches_basis", first_poly_mismatch(&hyper_w, w.polys())),
        IdentityReport::indexed("w_prime_hypergeometric_matches_basis", first_poly_mismatch(&hyper_wp, wp.polys())),
        IdentityReport::indexed(
            "w_prime_is_w_with_inverted_parameters",
            first_poly_mismatch(wp.polys(), w_basis(&p.inverted()).polys()),
        ),
        IdentityReport::indexed("psi_lowers_w", lower_fail),
    ]
}

/// The q-exponential transition matrices, their closed-form entries, and
/// `psi-hat` representing `psi` in every basis.
pub fn transition_check(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let e = Exps::new(p);
    let w_to_tau = ops.tau_to_w.inverse().expect("transition matrices are invertible");
    let w_to_eta = ops.eta_to_w.inverse().expect("transition matrices are invertible");
    let rebased = |m: &Matrix, basis| ops.in_basis(m, basis).expect("transition matrices are invertible").matrix;
    let closed = |z: &Scalar, inv| exp_entry_matrix(p, z, inv).expect("nonzero parameters");
    let (ai, bi) = (p.a.pow(-1), p.b.pow(-1));
    vec![
        IdentityReport::matrices("psi_hat_in_eta_basis", &rebased(&ops.psi, Basis::Eta), &ops.psi),
        IdentityReport::matrices("psi_hat_in_w_basis", &rebased(&ops.psi, Basis::W), &ops.psi),
        IdentityReport::matrices("transition_tau_to_w", &ops.tau_to_w, &e.b_inv),
        IdentityReport::matrices("transition_w_to_tau", &w_to_tau, &e.b),
        IdentityReport::matrices("transition_eta_to_w", &ops.eta_to_w, &e.a_inv),
        IdentityReport::matrices("transition_w_to_eta", &w_to_eta, &e.a),
        IdentityReport::matrices("transition_tau_to_eta", &(&ops.tau_to_w * &w_to_eta), &(&e.a * &e.b_inv)),
        IdentityReport::matrices("transition_eta_to_tau", &(&ops.eta_to_w * &w_to_tau), &(&e.b * &e.a_inv)),
        IdentityReport::matrices("delta_product_in_eta_basis", &rebased(&ops.delta, Basis::Eta), &(&e.a * &e.b_inv)),
        IdentityReport::matrices("delta_product_in_w_basis", &rebased(&ops.delta, Basis::W), &(&e.a * &e.b_inv)),
        IdentityReport::matrices("delta_inv_product_in_w_basis", &rebased(&ops.delta_inv, Basis::W), &(&e.b * &e.a_inv)),
        IdentityReport::matrices("expq_a_entries", &e.a, &closed(&ai, false)),
        IdentityReport::matrices("expq_b_entries", &e.b, &closed(&bi, false)),
        IdentityReport::matrices("expq_inv_a_entries", &e.a_inv, &closed(&ai, true)),
        IdentityReport::matrices("expq_inv_b_entries", &e.b_inv, &closed(&bi, true)),
    ]
}

/// Every closed-form entry formula for `K^{+-1}`, `B^{+-1}`, `M^{+-1}`
/// against the operator rebased through exact transition matrices.
pub fn kbm_closed_form_check(ops: &Operators) -> Vec<IdentityReport> {
    closed_form_entry_matrices(&ops.params)
        .into_iter()
        .map(|e| {
            let got = ops.in_basis(ops.named(e.operator), e.basis).expect("transition matrices are invertible");
            IdentityReport::matrices(e.name, &got.matrix, &e.matrix)
        })
        .collect()
}

/// One factor of an operator word.
#[derive(Clone, Copy)]
enum Op<'a> {
    Mat(&'a Matrix),
    /// Multiplication by `x`; only defined on `V_{N-1}`.
    A,
}

type Expr<'a> = Vec<(Scalar, Vec<Op<'a>>)>;

/// Applies a word right to left to `tau_j`; `None` when `A` meets a
/// vector outside `V_{N-1}`.
fn apply_word(ops: &Operators, word: &[Op], j: usize) -> Option<Vec<Scalar>> {
    let n = ops.params.n;
    let mut v = vec![Scalar::zero(); n + 1];
    v[j] = Scalar::one();
    for op in word.iter().rev() {
        v = match op {
            Op::Mat(m) => m.apply(&v).expect("square"),
            Op::A => {
                if !v[n].is_zero() {
                    return None;
                }
                ops.a.apply(&v[..n]).expect("shape")
            }
        };
    }
    Some(v)
}

fn apply_expr(ops: &Operators, expr: &Expr, j: usize) -> Option<Vec<Scalar>> {
    let mut acc = vec![Scalar::zero(); ops.params.n + 1];
    for (c, word) in expr {
        let v = apply_word(ops, word, j)?;
        for (x, y) in acc.iter_mut().zip(v) {
            *x += c * &y;
        }
    }
    Some(acc)
}

/// Compares two expressions on `tau_0..tau_{cols-1}`.
fn on_subspace(ops: &Operators, name: &str, lhs: &Expr, rhs: &Expr, cols: usize) -> IdentityReport {
    let n = ops.params.n;
    for j in 0..cols {
        match (apply_expr(ops, lhs, j), apply_expr(ops, rhs, j)) {
            (Some(l), Some(r)) => {
                if let Some(i) = l.iter().zip(&r).position(|(x, y)| x != y) {
                    return IdentityReport::fail(name, (i, j));
                }
            }
            _ => return IdentityReport::fail(name, (n, j)),
        }
    }
    IdentityReport::pass(name)
}

fn commute_report(name: &str, ms: &[&Matrix]) -> IdentityReport {
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            let c = x.commutator(y);
            if let Some(at) = c.first_mismatch(&Matrix::zeros(c.rows(), c.cols())) {
                return IdentityReport::fail(name, at);
            }
        }
    }
    IdentityReport::pass(name)
}

/// The relation between `K` and `B` in four equivalent shapes, for
/// parameters `(q, a, b)` and operators `(K, B)` with known inverses.
fn k_b_relations(
    suffix: &str,
    q: &Scalar,
    a: &Scalar,
    b: &Scalar,
    (k, k_inv): (&Matrix, &Matrix),
    (bm, b_inv): (&Matrix, &Matrix),
    id: &Matrix,
) -> Vec<IdentityReport> {
    let one = Scalar::one();
    let name = |s: &str| format!("{s}{suffix}");
    let bk_minus_ab = &k.scale(b) - &bm.scale(a);
    let k_minus_b = k - bm;
    let quad = &(&(&(bm * bm).scale(&(a * (q - &one))) - &(bm * k).scale(&(b * q - a)))
        - &(k * bm).scale(&(a * q - b)))
        + &(k * k).scale(&(b * (q - &one)));
    let kb = k * b_inv;
    let bk = bm * k_inv;
    let kib = k_inv * bm;
    let bik = b_inv * k;
    let lin = |x: &Scalar, m: &Matrix, y: &Scalar| &id.scale(x) - &m.scale(y);
    let i_minus = |m: &Matrix| id - m;
    vec![
        IdentityReport::matrices(
            name("k_b_q_commutation"),
            &(&bk_minus_ab * &k_minus_b),
            &(&k_minus_b * &bk_minus_ab).scale(q),
        ),
        IdentityReport::matrices(name("k_b_quadratic"), &quad, &Matrix::zeros(id.rows(), id.cols())),
        IdentityReport::matrices(
            name("k_b_factored_kib_kbi"),
            &(&lin(b, &kib, a) * &i_minus(&kb)),
            &(&i_minus(&kib) * &lin(a, &kb, b)).scale(q),
        ),
        IdentityReport::matrices(
            name("k_b_factored_bik_kbi"),
            &(&lin(a, &bik, b) * &i_minus(&kb)),
            &(&i_minus(&bik) * &lin(a, &kb, b)).scale(q),
        ),
        IdentityReport::matrices(
            name("k_b_factored_bik_bki"),
            &(&lin(a, &bik, b) * &i_minus(&bk)),
            &(&i_minus(&bik) * &lin(b, &bk, a)).scale(q),
        ),
        IdentityReport::matrices(
            name("k_b_factored_kib_bki"),
            &(&lin(b, &kib, a) * &i_minus(&bk)),
            &(&i_minus(&kib) * &lin(b, &bk, a)).scale(q),
        ),
    ]
}

/// The operator relations among `psi`, `K`, `B`, `M`, `Delta` and `A`.
pub fn relation_suite(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let one = Scalar::one();
    let ab = a * b;
    let xi = p.xi();
    let (ai, bi, qi) = (a.pow(-1), b.pow(-1), q.pow(-1));
    let id = ops.identity();
    let psi = &ops.psi;
    let (k, k_inv, bm, b_inv, m, m_inv) = (&ops.k, &ops.k_inv, &ops.b, &ops.b_inv, &ops.m, &ops.m_inv);
    let e = Exps::new(p);
    let lin_psi = |c: Scalar| &id + &psi.scale(&c);
    let mut out = vec![
        IdentityReport::matrices("k_psi_q_commutation", &(k * psi), &(psi * k).scale(q)),
        IdentityReport::matrices("b_psi_q_commutation", &(bm * psi), &(psi * bm).scale(q)),
        IdentityReport::matrices("m_psi_q_commutation", &(m * psi), &(psi * m).scale(q)),
        IdentityReport::matrices("b_delta_equals_delta_k", &(bm * &ops.delta), &(&ops.delta * k)),
        IdentityReport::matrices("k_intertwines_expq_b_with_m", &(k * &e.b), &(&e.b * m)),
        IdentityReport::matrices("b_intertwines_expq_a_with_m", &(bm * &e.a), &(&e.a * m)),
        IdentityReport::matrices("k_m_inv_linear_in_psi", &(k * m_inv), &lin_psi((q - &one) * (a - &bi))),
        IdentityReport::matrices("m_inv_k_linear_in_psi", &(m_inv * k), &lin_psi((&qi - &one) * (&bi - a))),
        IdentityReport::matrices("b_m_inv_linear_in_psi", &(bm * m_inv), &lin_psi((q - &one) * (b - &ai))),
        IdentityReport::matrices("m_inv_b_linear_in_psi", &(m_inv * bm), &lin_psi((&qi - &one) * (&ai - b))),
        IdentityReport::matrices(
            "psi_from_m_inv_k_commutator",
            &psi.scale(&(&xi * (q - &one).pow(2))),
            &(&(m_inv * k) - &(k * m_inv)).scale(&(b * q)),
        ),
        IdentityReport::matrices(
            "psi_from_m_inv_b_commutator",
            &psi.scale(&(&xi * (q - &one).pow(2))),
            &(&(m_inv * bm) - &(bm * m_inv)).scale(&(a * q)),
        ),
        IdentityReport::matrices("m_from_k_and_b", &m.scale(&(b - a)), &(&k.scale(b) - &bm.scale(a))),
        IdentityReport::indexed(
            "k_b_denominators_invertible",
            [
                &id.scale(a) - &(b_inv * k).scale(b),
                &id.scale(b) - &(k_inv * bm).scale(a),
                &id.scale(&ai) - &(bm * k_inv).scale(&bi),
                &id.scale(&bi) - &(k * b_inv).scale(&ai),
            ]
            .iter()
            .position(|d| d.inverse().is_err()),
        ),
        IdentityReport::matrices(
            "psi_m_from_k_minus_b",
            &(psi * m).scale(&((&one - q) * &xi * (a - b))),
            &(k - bm).scale(&ab),
        ),
        IdentityReport::matrices(
            "m_psi_from_k_minus_b",
            &(m * psi).scale(&((&one - q) * &xi * (a - b))),
            &(k - bm).scale(&(q * &ab)),
        ),
        IdentityReport::matrices("q_weyl_m_inv_k", &(&(m_inv * k).scale(q) - &(k * m_inv)), &id.scale(&(q - &one))),
        IdentityReport::matrices("q_weyl_m_inv_b", &(&(m_inv * bm).scale(q) - &(bm * m_inv)), &id.scale(&(q - &one))),
    ];
    out.extend(k_b_relations("", q, a, b, (k, k_inv), (bm, b_inv), &id));
    out.extend(k_b_relations("_inverted", &qi, &ai, &bi, (k_inv, k), (b_inv, bm), &id));

    // K B^{-1} and friends as ratios of polynomials in psi.
    let ratio = |name: &str, lhs: &Matrix, num_c: Scalar, den_c: Scalar| -> Vec<IdentityReport> {
        let num = lin_psi(num_c);
        let den = lin_psi(den_c.clone());
        let den_inv = nilpotent_inverse(&psi.scale(&-den_c)).expect("psi-hat is strictly upper");
        vec![
            IdentityReport::matrices(format!("{name}_factors_commute"), &(&num * &den), &(&den * &num)),
            IdentityReport::matrices(name, lhs, &(&num * &den_inv)),
        ]
    };
    let kb = k * b_inv;
    let bk = bm * k_inv;
    let kib = k_inv * bm;
    let bik = b_inv * k;
    out.extend(ratio("k_b_inv_ratio", &kb, (q - &one) * (a - &bi), (q - &one) * (b - &ai)));
    out.extend(ratio("b_k_inv_ratio", &bk, (q - &one) * (b - &ai), (q - &one) * (a - &bi)));
    out.extend(ratio("k_inv_b_ratio", &kib, (&qi - &one) * (&ai - b), (&qi - &one) * (&bi - a)));
    out.extend(ratio("b_inv_k_ratio", &bik, (&qi - &one) * (&bi - a), (&qi - &one) * (&ai - b)));
    out.push(commute_report("psi_and_k_b_ratios_commute", &[psi, &kb, &bk, &kib, &bik]));

    // psi as a ratio in K B^{-1} etc.; the denominators are invertible.
    let psi_ratio = |name: &str, scale: Scalar, num: Matrix, den: Matrix| -> IdentityReport {
        match den.inverse() {
            Ok(inv) => IdentityReport::matrices(name, psi, &(&num * &inv).scale(&scale.pow(-1))),
            Err(_) => IdentityReport::fail(name, (0, 0)),
        }
    };
    let s_direct = (q - &one) * &xi;
    let s_inverse = (&qi - &one) * (&one - &ai * &bi);
    out.push(psi_ratio("psi_ratio_k_b_inv", s_direct.clone(), &id - &kb, &id.scale(&bi) - &kb.scale(&ai)));
    out.push(psi_ratio("psi_ratio_b_k_inv", s_direct, &id - &bk, &id.scale(&ai) - &bk.scale(&bi)));
    out.push(psi_ratio("psi_ratio_k_inv_b", s_inverse.clone(), &id - &kib, &id.scale(b) - &kib.scale(a)));
    out.push(psi_ratio("psi_ratio_b_inv_k", s_inverse, &id - &bik, &id.scale(a) - &bik.scale(b)));

    // Relations with A, on V_{N-1} and V_{N-2}.
    let n = p.n;
    let (mk, mb, mpsi, mminv) = (Op::Mat(k), Op::Mat(bm), Op::Mat(psi), Op::Mat(m_inv));
    let aa = Op::A;
    let q_plus_qi = q + &qi;
    let q_minus_qi = q - &qi;
    let qm1 = q - &one;
    let c_lin = (&one - q) * (&one + &qi * &ab);
    out.push(on_subspace(
        ops,
        "a_k_relation",
        &vec![(q.clone(), vec![mk, aa]), (-&one, vec![aa, mk])],
        &vec![(&qm1 * &ai, vec![mk, mk]), (&qm1 * a, vec![])],
        n,
    ));
    out.push(on_subspace(
        ops,
        "a_b_relation",
        &vec![(q.clone(), vec![mb, aa]), (-&one, vec![aa, mb])],
        &vec![(&qm1 * &bi, vec![mb, mb]), (&qm1 * b, vec![])],
        n,
    ));
    out.push(on_subspace(
        ops,
        "a_psi_relation",
        &vec![(q * (&ab - &one), vec![mpsi, aa]), (&one - &ab, vec![aa, mpsi])],
        &vec![((q + &one) * &ab, vec![mminv]), (-(q + &ab), vec![])],
        n,
    ));
    out.push(on_subspace(
        ops,
        "a_m_inv_relation",
        &vec![(q.clone(), vec![aa, mminv]), (-&one, vec![mminv, aa])],
        &vec![(&qm1 * (&ai + &bi), vec![]), (&qm1 * &q_minus_qi * (&one - &ai * &bi), vec![mpsi])],
        n,
    ));
    out.push(on_subspace(
        ops,
        "a_a_psi_relation",
        &vec![
            (xi.clone(), vec![aa, aa, mpsi]),
            (-(&xi * &q_plus_qi), vec![aa, mpsi, aa]),
            (xi.clone(), vec![mpsi, aa, aa]),
            (&xi * q_minus_qi.pow(2), vec![mpsi]),
        ],
        &vec![(c_lin.clone(), vec![aa]), (&q_minus_qi * (a + b), vec![])],
        n.saturating_sub(1),
    ));
    out.push(on_subspace(
        ops,
        "psi_psi_a_relation",
        &vec![
            (xi.clone(), vec![mpsi, mpsi, aa]),
            (-(&xi * &q_plus_qi), vec![mpsi, aa, mpsi]),
            (xi.clone(), vec![aa, mpsi, mpsi]),
        ],
        &vec![(c_lin, vec![mpsi])],
        n,
    ));
    out.push(on_subspace(
        ops,
        "a_a_m_inv_relation",
        &vec![
            (one.clone(), vec![aa, aa, mminv]),
            (-q_plus_qi.clone(), vec![aa, mminv, aa]),
            (one.clone(), vec![mminv, aa, aa]),
            (q_minus_qi.pow(2), vec![mminv]),
        ],
        &vec![
            (&qm1 * &q_minus_qi * (&qi + &ai * &bi), vec![]),
            (-(&qi * qm1.pow(2) * (&ai + &bi)), vec![aa]),
        ],
        n.saturating_sub(1),
    ));
    out.push(on_subspace(
        ops,
        "m_inv_m_inv_a_relation",
        &vec![
            (one.clone(), vec![mminv, mminv, aa]),
            (-q_plus_qi, vec![mminv, aa, mminv]),
            (one.clone(), vec![aa, mminv, mminv]),
        ],
        &vec![(&qm1 * (&qi - &one) * (&ai + &bi), vec![mminv])],
        n,
    ));
    out
}

/// Truncated geometric series in `psi-hat` for `M K^{-1}`, `K B^{-1}` and
/// their companions.
pub fn geometric_series_forms_check(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let one = Scalar::one();
    let step = -(&one - q) * p.xi();
    let len = p.n + 1;
    // sum_{i<=N} r^i psi^i
    let series = |r: Scalar| {
        let coeffs: Vec<Scalar> = (0..len).map(|i| r.pow(i as i64)).collect();
        matrix_polynomial(&ops.psi, &coeffs)
    };
    // I + f sum_{i>=1} r^i psi^i
    let shifted = |f: Scalar, r: Scalar| {
        let coeffs: Vec<Scalar> =
            (0..len).map(|i| if i == 0 { one.clone() } else { &f * r.pow(i as i64) }).collect();
        matrix_polynomial(&ops.psi, &coeffs)
    };
    let r = |c: &Scalar| &step / c;
    let (k, k_inv, bm, b_inv, m) = (&ops.k, &ops.k_inv, &ops.b, &ops.b_inv, &ops.m);
    let qb = q * b;
    let qa = q * a;
    let b_minus_a_over_b = (b - a) / b;
    let a_minus_b_over_a = (a - b) / a;
    vec![
        IdentityReport::matrices("m_k_inv_series", &(m * k_inv), &series(r(b))),
        IdentityReport::matrices("k_inv_m_series", &(k_inv * m), &series(r(&qb))),
        IdentityReport::matrices("m_b_inv_series", &(m * b_inv), &series(r(a))),
        IdentityReport::matrices("b_inv_m_series", &(b_inv * m), &series(r(&qa))),
        IdentityReport::matrices("k_b_inv_series", &(k * b_inv), &shifted(b_minus_a_over_b.clone(), r(a))),
        IdentityReport::matrices("b_k_inv_series", &(bm * k_inv), &shifted(a_minus_b_over_a.clone(), r(b))),
        IdentityReport::matrices("k_inv_b_series", &(k_inv * bm), &shifted(a_minus_b_over_a, r(&qb))),
        IdentityReport::matrices("b_inv_k_series", &(b_inv * k), &shifted(b_minus_a_over_b, r(&qa))),
    ]
}

fn scalar_report(name: &str, n: usize, holds: impl Fn(usize) -> bool) -> IdentityReport {
    IdentityReport::indexed(name, (0..n).find(|&i| !holds(i)))
}

/// Scalar closed forms against the general definitions.
pub fn closed_form_suite(ops: &Operators) -> Vec<IdentityReport> {
    let p = &ops.params;
    let (q, a, b) = (&p.q, &p.a, &p.b);
    let n = p.n;
    let d: &Data = &ops.data;
    let one = Scalar::one();
    let theta = d.vartheta();
    let xi = p.xi();
    let ab = a * b;
    let tau = d.tau_basis();
    let eta = d.eta_basis();
    let (a0, b0) = (&d.a()[0], &d.b()[0]);
    let psum = |c: &Scalar, i: usize| {
        let ii = i as i64;
        (&one - q.pow(ii)) / (&one - q) * (c + c.pow(-1) * q.pow(1 - ii))
    };
    let a_prefix = |i: usize| d.a()[..i].iter().sum::<Scalar>();
    let b_prefix = |i: usize| d.b()[..i].iter().sum::<Scalar>();
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|j| (0..=j).map(move |i| (i, j))).collect();
    let pair_report = |name: &str, holds: &dyn Fn(usize, usize) -> bool| {
        IdentityReport::indexed(name, pairs.iter().position(|&(i, j)| !holds(i, j)))
    };
    let diffs = |c: &Scalar, seq: &[Scalar], i: usize| {
        let ii = i as i64;
        let (x, y) = (&seq[i], &seq[i - 1]);
        q * x - y == (q - q.pow(-1)) * c * q.pow(ii)
            && x - y == (q - &one) * (c * q.pow(ii - 1) - c.pow(-1) * q.pow(-ii))
            && x - q * y == (&one - q.pow(2)) * c.pow(-1) * q.pow(-ii)
    };
    let theta_diff = |i: usize| {
        let ii = i as i64;
        let (t1, t0) = (theta.get(i + 1), theta.get(i));
        q * t1 - t0 == (q + &ab - (q + &one) * &ab * q.pow(ii)) / &xi
            && t1 - t0 == (q.pow(-ii) - &ab * q.pow(ii)) / &xi
            && t1 - q * t0 == ((&one + q) * q.pow(-ii) - q - &ab) / &xi
    };
    vec![
        scalar_report("a_b_differences", n.saturating_sub(1), |i| {
            let i = i + 1;
            diffs(a, d.a(), i) && diffs(b, d.b(), i)
        }),
        scalar_report("a_b_partial_sums", n + 1, |i| a_prefix(i) == psum(a, i) && b_prefix(i) == psum(b, i)),
        scalar_report("vartheta_closed_form", n + 1, |i| &vartheta_closed(p, i) == theta.get(i)),
        scalar_report("vartheta_inverse_closed_form", n + 1, |i| &vartheta_closed_inverse_form(p, i) == theta.get(i)),
        scalar_report("vartheta_differences", n, theta_diff),
        pair_report("vartheta_products", &|i, j| vartheta_products(p, i, j) == (theta.ascending(i), theta.descending(j, i))),
        pair_report("bracket_closed_form", &|i, j| bracket_closed(p, j, i) == theta.bracket(j, i)),
        scalar_report("tau_laurent_form", n + 1, |i| tau_laurent(p, i) == embed_symmetric(&tau[i])),
        scalar_report("eta_laurent_form", n + 1, |i| eta_laurent(p, i) == embed_symmetric(&eta[i])),
        scalar_report("tau_at_b0_closed_form", n + 1, |i| tau_at_b0(p, i) == poly_eval(&tau[i], b0)),
        scalar_report("eta_at_a0_closed_form", n + 1, |i| eta_at_a0(p, i) == poly_eval(&eta[i], a0)),
        pair_report("q_pochhammer_reversal", &|i, j| {
            let (l, r) = q_int_sides(q, i, j);
            l == r
        }),
        scalar_report("data_invariant_under_inversion", 1, |_| p.inverted().data() == *d),
        scalar_report("q_binomial_identity_generic_z", n + 1, |j| {
            let z = sc(3) * a * q.pow(-(j as i64));
            let (l, r) = q_binomial_sides(q, &z, j);
            l == r
        }),
    ]
}

/// Every check above for one parameter set, in a fixed order.
pub fn full_suite(p: &QRacahParams) -> Result<Vec<IdentityReport>> {
    let ops = Operators::new(p)?;
    let mut out = Vec::new();
    out.extend(closed_form_suite(&ops));
    out.extend(delta_factorization_check(&ops));
    out.extend(w_basis_check(&ops));
    out.extend(w_three_term_check(&ops));
    out.extend(transition_check(&ops));
    out.extend(kbm_closed_form_check(&ops));
    out.extend(relation_suite(&ops));
    out.extend(geometric_series_forms_check(&ops));
    Ok(out)
}
