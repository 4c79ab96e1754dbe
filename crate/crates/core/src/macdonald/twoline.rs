//! Two-row queues whose top row carries arbitrary labels, and the identities they satisfy.

use std::collections::HashMap;

use serde::Serialize;

use crate::mlq::{enumerate_pass, event_weight, Composition};
use crate::ring::{QTRational, XPolynomial};

use super::poly::fmu;

/// Sum of `wt_qt · ∏_{μ_i>0} x_i` over two-row queues with bottom labels `mu` and top labels `top`.
///
/// Zero when some top label equals 1, since row 2 only carries labels `>= 2`.
pub fn two_line_f(mu: &Composition, top: &Composition) -> XPolynomial {
    let n = mu.len();
    assert_eq!(n, top.len(), "rows of unequal length");
    if top.parts().contains(&1) {
        return XPolynomial::zero(n);
    }
    let lower: Vec<bool> = mu.parts().iter().map(|&p| p > 0).collect();
    let xw: Vec<u32> = lower.iter().map(|&b| b as u32).collect();
    let passes = enumerate_pass(top.parts(), &lower, 2, Some(mu.parts()));
    XPolynomial::from_terms(n, passes.iter().map(|p| (xw.clone(), event_weight(&p.events))))
}

/// Candidate top rows: compositions over `{0, 2, …, max}`.
pub fn top_rows(n: usize, max: u32) -> Vec<Composition> {
    let alphabet: Vec<u32> = std::iter::once(0).chain(2..=max).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                alphabet.iter().map(move |&a| {
                    let mut v = v.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|v| Composition::new(v).expect("n >= 1")).collect()
}

/// `Σ_λ F_μ^λ F_{λ⁻}`.
pub fn recursion_sum(mu: &Composition, cache: &mut HashMap<Composition, XPolynomial>) -> XPolynomial {
    let n = mu.len();
    let mut acc = XPolynomial::zero(n);
    for top in top_rows(n, mu.max_part()) {
        let head = two_line_f(mu, &top);
        if head.is_zero() {
            continue;
        }
        let lower = top.decrement();
        let tail = cache.entry(lower.clone()).or_insert_with(|| fmu(&lower));
        acc = &acc + &(&head * tail);
    }
    acc
}

/// `F_μ = Σ_λ F_μ^λ F_{λ⁻}`.
pub fn recursion_holds(mu: &Composition) -> bool {
    let mut cache = HashMap::new();
    recursion_sum(mu, &mut cache) == fmu(mu)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    pub mu: Composition,
    pub top: Composition,
    pub index: usize,
    pub holds: bool,
}

fn x(n: usize, i: usize) -> XPolynomial {
    XPolynomial::var(n, i)
}

fn t() -> QTRational {
    QTRational::qt(0, 1)
}

/// Identities relating `F_μ^λ`, `F_{s_iμ}^λ`, `F_μ^{s_iλ}`, `F_{s_iμ}^{s_iλ}` at position `i`,
/// plus the cyclic identity. Only identities whose hypotheses hold are returned.
pub fn lemma_checks(mu: &Composition, top: &Composition, i: usize) -> Vec<LemmaCheck> {
    let n = mu.len();
    let (m, l) = (mu.parts(), top.parts());
    let f = |a: &Composition, b: &Composition| two_line_f(a, b);
    let (smu, stop) = (mu.swap(i), top.swap(i));
    let f00 = f(mu, top);
    let f10 = f(&smu, top);
    let f01 = f(mu, &stop);
    let f11 = f(&smu, &stop);
    let mut out = Vec::new();
    let mut push = |lemma, holds| out.push(LemmaCheck { lemma, mu: mu.clone(), top: top.clone(), index: i, holds });
    let xi = x(n, i);
    let xj = x(n, i + 1);
    let txj = xj.scale(&t());

    if m[i] == m[i + 1] {
        push("equal-bottom", f00 == f10 && f00 == f01 && f00 == f11);
    }
    if l[i] == l[i + 1] {
        push("equal-top", f00 == f01 && f10 == f11);
    }
    if m[i] > m[i + 1] && m[i + 1] > 0 && l[i] > l[i + 1] {
        if m[i + 1] > l[i] {
            let tf00 = f00.scale(&t());
            let tf01 = f01.scale(&t());
            push("distinct-positive-above", tf00 == f10 && f10 == tf01 && tf01 == f11);
        } else if m[i + 1] == l[i] {
            push("distinct-positive-equal", &f00 + &f10 == &f01 + &f11);
        } else {
            push("distinct-positive-below", f00 == f11 && f10.is_zero() && f01.is_zero());
        }
    }
    if m[i] > m[i + 1] && m[i + 1] == 0 && l[i] >= l[i + 1] {
        let lhs = &(&txj * &f00) + &(&xi * &f10);
        let rhs = &(&txj * &f01) + &(&xi * &f11);
        push("weighted-exchange", lhs == rhs);
        if l[i] == l[i + 1] || (m[i] > l[i] && m[i] > l[i + 1]) {
            let a = &xj * &f00;
            let b = &xi * &f10;
            let c = &xj * &f01;
            let d = &xi * &f11;
            push("vacancy-free", a == b && b == c && c == d);
        } else if m[i] == l[i] && l[i] > l[i + 1] {
            let first = lhs == rhs;
            let second = &xj * &f00 == &xi * &f11;
            let one_minus_t = &QTRational::one() - &t();
            let third = &(&txj * &f01) + &(&xj * &f00).scale(&one_minus_t) == &xi * &f10;
            push("vacancy-equal", first && second && third);
        } else if l[i] > m[i] && m[i] >= l[i + 1] {
            push("vacancy-straddle", &xi * &f10 == &txj * &f01 && f00.is_zero() && f11.is_zero());
        } else if l[i] > l[i + 1] && l[i + 1] > m[i] {
            push("vacancy-below", f00.is_zero() && f11.is_zero() && f01.is_zero() && f10.is_zero());
        }
    }
    // F_{ωμ}^{ωλ}(x_n, x_1, …) = q^e F_μ^λ with e = max(μ_n - 1, 0) - max(λ_n - 1, 0)
    let e = m[n - 1].saturating_sub(1) as i64 - l[n - 1].saturating_sub(1) as i64;
    let back: Vec<usize> = (0..n).map(|k| (k + n - 1) % n).collect();
    let rotated = f(&mu.rotate(), &top.rotate()).permute_vars(&back);
    let lhs = if e >= 0 {
        f00.map_coeffs(|c| c.shift(e as u32, 0))
    } else {
        f00.map_coeffs(|c| c.unshift((-e) as u32, 0))
    };
    push("cyclic", rotated == lhs);
    out
}
