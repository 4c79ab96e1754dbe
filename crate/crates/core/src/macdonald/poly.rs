use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::mlq::{enumerate_mlq, Composition, MultilineQueue};
use crate::ring::{QTRational, XPolynomial};

use super::ops::{cherednik_eigenvalue, cherednik_y};
use super::MacdonaldError;

/// `Σ_Q wt_x(Q) wt_qt(Q)` over the queues of type `mu`.
pub fn fmu(mu: &Composition) -> XPolynomial {
    weight_sum(mu.len(), &enumerate_mlq(mu))
}

pub fn weight_sum(n: usize, queues: &[MultilineQueue]) -> XPolynomial {
    XPolynomial::from_terms(n, queues.iter().map(|q| (q.wt_x(), q.wt_qt())))
}

/// The polynomials `F_μ` for every rearrangement `μ` of `λ`.
#[derive(Clone, Debug)]
pub struct QkzFamily {
    pub lambda: Composition,
    pub members: BTreeMap<Composition, XPolynomial>,
}

impl QkzFamily {
    pub fn build(lambda: &Composition) -> Self {
        let members = lambda.rearrangements().into_par_iter().map(|mu| {
            let f = fmu(&mu);
            (mu, f)
        });
        QkzFamily { lambda: lambda.sorted(), members: members.collect() }
    }

    pub fn get(&self, mu: &Composition) -> &XPolynomial {
        &self.members[mu]
    }

    pub fn sum(&self) -> XPolynomial {
        let n = self.lambda.len();
        XPolynomial::from_terms(n, self.members.values().flat_map(|f| f.terms().map(|(e, c)| (e.clone(), c.clone()))))
    }
}

/// `Z_λ = Σ_μ F_μ` over distinct rearrangements.
pub fn zlambda(lambda: &Composition) -> Result<XPolynomial, MacdonaldError> {
    if !lambda.is_partition() {
        return Err(MacdonaldError::NotPartition(lambda.clone()));
    }
    Ok(QkzFamily::build(lambda).sum())
}

/// `F_λ` after certifying it is monic in `x^λ` and a joint Cherednik eigenvector.
pub fn e_nonsymmetric(lambda: &Composition) -> Result<XPolynomial, MacdonaldError> {
    if !lambda.is_partition() {
        return Err(MacdonaldError::NotPartition(lambda.clone()));
    }
    let f = fmu(lambda);
    if !f.coeff(lambda.parts()).is_one() {
        return Err(MacdonaldError::CharacterizationFailed(format!("coefficient of x^{lambda} is not 1")));
    }
    for i in 0..lambda.len() {
        if !is_eigenvector(&f, lambda, i) {
            return Err(MacdonaldError::CharacterizationFailed(format!(
                "F_{lambda} is not an eigenvector of Y_{}",
                i + 1
            )));
        }
    }
    Ok(f)
}

/// `Y_i f = y_i(λ) f`.
pub fn is_eigenvector(f: &XPolynomial, lambda: &Composition, i: usize) -> bool {
    let y: QTRational = cherednik_eigenvalue(lambda.parts(), i);
    cherednik_y(f, i) == f.scale(&y)
}

/// Schur polynomial `s_λ(x_1..x_n)` by enumerating semistandard tableaux.
pub fn schur_oracle(lambda: &[u32], n: usize) -> XPolynomial {
    let shape: Vec<usize> = lambda.iter().filter(|&&p| p > 0).map(|&p| p as usize).collect();
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut fill: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        n: usize,
        fill: &mut Vec<Vec<usize>>,
        out: &mut Vec<(Vec<u32>, QTRational)>,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; n];
            for row in fill.iter() {
                for &v in row {
                    e[v - 1] += 1;
                }
            }
            out.push((e, QTRational::one()));
            return;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { fill[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { fill[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            fill[r][c] = v;
            go(k + 1, cells, n, fill, out);
        }
        fill[r][c] = 0;
    }
    go(0, &cells, n, &mut fill, &mut out);
    XPolynomial::from_terms(n, out)
}
