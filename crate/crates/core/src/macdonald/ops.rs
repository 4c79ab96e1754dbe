//! Hecke generators, the affine shift and Cherednik operators on `XPolynomial`.
//!
//! Indices are zero-based: `T_i` exchanges positions `i` and `i + 1`.

use crate::ring::{QTRational, XPolynomial};

fn linear(n: usize, t_coeff: QTRational, i: usize, j: usize, j_coeff: QTRational) -> XPolynomial {
    let mut e_i = vec![0; n];
    e_i[i] = 1;
    let mut e_j = vec![0; n];
    e_j[j] = 1;
    XPolynomial::from_terms(n, [(e_i, t_coeff), (e_j, j_coeff)])
}

/// `T_i f = t f - (t x_i - x_{i+1}) (f - s_i f)/(x_i - x_{i+1})`.
pub fn hecke_t(f: &XPolynomial, i: usize) -> XPolynomial {
    let n = f.nvars();
    let t = QTRational::qt(0, 1);
    let tx_minus = linear(n, t.clone(), i, i + 1, -QTRational::one());
    &f.scale(&t) - &(&tx_minus * &f.divided_difference(i))
}

/// `T_i^{-1} f = (T_i f + (1 - t) f) / t`.
pub fn hecke_t_inverse(f: &XPolynomial, i: usize) -> XPolynomial {
    let one_minus_t = &QTRational::one() - &QTRational::qt(0, 1);
    (&hecke_t(f, i) + &f.scale(&one_minus_t)).map_coeffs(|c| c.unshift(0, 1))
}

/// `(ω f)(x_1, …, x_n) = f(q x_n, x_1, …, x_{n-1})`.
pub fn shift_omega(f: &XPolynomial) -> XPolynomial {
    let n = f.nvars();
    XPolynomial::from_terms(
        n,
        f.terms().map(|(e, c)| {
            let mut out = e[1..].to_vec();
            out.push(e[0]);
            (out, c.shift(e[0], 0))
        }),
    )
}

/// `Y_i = T_i^{-1} ⋯ T_{n-2}^{-1} ω T_0 ⋯ T_{i-1}`, rightmost factor first.
pub fn cherednik_y(f: &XPolynomial, i: usize) -> XPolynomial {
    let n = f.nvars();
    assert!(i < n, "Cherednik index out of range");
    let mut g = f.clone();
    for k in (0..i).rev() {
        g = hecke_t(&g, k);
    }
    g = shift_omega(&g);
    for k in (i..n - 1).rev() {
        g = hecke_t_inverse(&g, k);
    }
    g
}

/// Eigenvalue `q^{λ_i} t^{#{j<i: λ_j=λ_i} - #{j>i: λ_j=λ_i}}` of `Y_i` on `E_λ`.
pub fn cherednik_eigenvalue(lambda: &[u32], i: usize) -> QTRational {
    let before = lambda[..i].iter().filter(|&&p| p == lambda[i]).count() as i64;
    let after = lambda[i + 1..].iter().filter(|&&p| p == lambda[i]).count() as i64;
    let e = before - after;
    let q = QTRational::qt(lambda[i], 0);
    if e >= 0 {
        q.shift(0, e as u32)
    } else {
        q.unshift(0, (-e) as u32)
    }
}

/// Applies `(q, t)` to every coefficient, leaving a polynomial in `x` with constant coefficients.
pub fn specialize_qt(
    f: &XPolynomial,
    q: &crate::ring::BigRat,
    t: &crate::ring::BigRat,
) -> Result<XPolynomial, crate::ring::RingError> {
    let mut out = Vec::with_capacity(f.len());
    for (e, c) in f.terms() {
        out.push((e.clone(), QTRational::constant(c.eval(q, t)?)));
    }
    Ok(XPolynomial::from_terms(f.nvars(), out))
}
