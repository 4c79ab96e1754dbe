use std::fmt;

use serde::Serialize;

use crate::mlq::Composition;
use crate::ring::{QTRational, XPolynomial};

use super::ops::{hecke_t, shift_omega};
use super::poly::QkzFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `T_i F_μ = F_{s_i μ}` for `μ_i > μ_{i+1}`.
    Exchange,
    /// `T_i F_μ = t F_μ` for `μ_i = μ_{i+1}`.
    Stable,
    /// `q^{μ_n} F_μ(x) = F_{ωμ}(q x_n, x_1, …)`.
    Cyclic,
    /// The divided-difference form of `Exchange`.
    ExchangeExpanded,
    /// `F_μ = s_i F_μ` for `μ_i = μ_{i+1}`.
    Symmetric,
    /// `F_μ + F_{s_i μ}` is `s_i`-invariant.
    PairSum,
    /// `t x_{i+1} F_μ + x_i F_{s_i μ}` is `s_i`-invariant for `μ_i > μ_{i+1}`.
    WeightedPairSum,
}

#[derive(Clone, Debug, Serialize)]
pub struct QkzCheck {
    pub relation: Relation,
    pub mu: Composition,
    /// Zero-based position; `None` for the cyclic relation.
    pub index: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QkzReport {
    pub lambda: Composition,
    pub checks: Vec<QkzCheck>,
}

impl QkzReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &QkzCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for QkzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "lambda = {}: {passed}/{} relations hold", self.lambda, self.checks.len())?;
        for c in self.failures() {
            match c.index {
                Some(i) => writeln!(f, "  FAIL {:?} mu={} i={}", c.relation, c.mu, i + 1)?,
                None => writeln!(f, "  FAIL {:?} mu={}", c.relation, c.mu)?,
            }
        }
        Ok(())
    }
}

fn mono(n: usize, i: usize, c: QTRational) -> XPolynomial {
    let mut e = vec![0; n];
    e[i] = 1;
    XPolynomial::term(e, c)
}

/// Every qKZ relation and its symmetric reformulations over the rearrangements of `lambda`.
pub fn check_qkz(lambda: &Composition) -> QkzReport {
    check_family(&QkzFamily::build(lambda))
}

pub fn check_family(family: &QkzFamily) -> QkzReport {
    let n = family.lambda.len();
    let t = QTRational::qt(0, 1);
    let one = QTRational::one();
    let mut checks = Vec::new();
    let mut push = |relation, mu: &Composition, index, passed| {
        checks.push(QkzCheck { relation, mu: mu.clone(), index, passed });
    };
    for (mu, f) in &family.members {
        let p = mu.parts();
        for i in 0..n.saturating_sub(1) {
            let swapped = mu.swap(i);
            let g = family.get(&swapped);
            let sf = f.swap_vars(i);
            let sum = f + g;
            push(Relation::PairSum, mu, Some(i), sum.swap_vars(i) == sum);
            if p[i] > p[i + 1] {
                push(Relation::Exchange, mu, Some(i), hecke_t(f, i) == *g);
                // (1-t) x_{i+1} F + (t x_i - x_{i+1}) s_i F - (x_i - x_{i+1}) F_{s_i μ}
                let lhs = &(&(&mono(n, i + 1, &one - &t) * f) + &(&(&mono(n, i, t.clone()) - &mono(n, i + 1, one.clone())) * &sf))
                    - &(&(&mono(n, i, one.clone()) - &mono(n, i + 1, one.clone())) * g);
                push(Relation::ExchangeExpanded, mu, Some(i), lhs.is_zero());
                let w = &(&mono(n, i + 1, t.clone()) * f) + &(&mono(n, i, one.clone()) * g);
                push(Relation::WeightedPairSum, mu, Some(i), w.swap_vars(i) == w);
            } else if p[i] == p[i + 1] {
                push(Relation::Stable, mu, Some(i), hecke_t(f, i) == f.scale(&t));
                push(Relation::Symmetric, mu, Some(i), sf == *f);
            }
        }
        let rotated = family.get(&mu.rotate());
        let lhs = f.map_coeffs(|c| c.shift(p[n - 1], 0));
        push(Relation::Cyclic, mu, None, shift_omega(rotated) == lhs);
    }
    QkzReport { lambda: family.lambda.clone(), checks }
}
