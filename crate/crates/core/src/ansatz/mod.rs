//! Matrix-product traces proportional to `F_μ`.
//!
//! Level `L` carries `L - 1` oscillator modes, so `X^{(L)}_J` acts on
//! `L(L-1)/2` modes ordered level `L` first. A mode word is the sequence of single-mode
//! operators (one per site) met along the trace; its trace against the twist `D(q^s)` is
//! a finite sum of geometric series, computed exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::mlq::Composition;
use crate::ring::{int, Factor, QTPoly, QTRational, XMonomial, XPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnsatzError {
    #[error("truncated trace at dimension {dim} disagrees with the exact trace below q-order {needed}")]
    TruncationUnstable { dim: usize, needed: u32 },
    #[error("truncation dimension must be at least 1")]
    ZeroDimension,
}

/// Single-mode operators on `span{|0>, |1>, …}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeOp {
    I,
    /// `A|j> = t^j |j>`.
    A,
    /// Raising: `<j|ε|j+1> = 1`.
    Eps,
    /// Lowering: `<j+1|δ|j> = 1 - t^{j+1}`.
    Delta,
}

impl fmt::Display for ModeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeOp::I => "I",
            ModeOp::A => "A",
            ModeOp::Eps => "e",
            ModeOp::Delta => "d",
        })
    }
}

/// The tensor factors of `a^{(L)}_{JM}`, or `None` when it vanishes.
pub fn a_factors(j: u32, m: u32, l: u32) -> Option<Vec<ModeOp>> {
    use ModeOp::*;
    let rep = |op, k: u32| std::iter::repeat(op).take(k as usize);
    let v: Vec<ModeOp> = if m >= l || j > l || (0 < m && m < j) {
        return None;
    } else if 0 < j && j < m {
        rep(A, j - 1).chain([Delta]).chain(rep(I, m - j - 1)).chain([Eps]).chain(rep(I, l - m - 1)).collect()
    } else if j == 0 && 0 < m {
        rep(I, m - 1).chain([Eps]).chain(rep(I, l - m - 1)).collect()
    } else if 0 < j && j == m {
        rep(A, j - 1).chain(rep(I, l - j)).collect()
    } else if j == 0 {
        rep(I, l - 1).collect()
    } else if j < l {
        rep(A, j - 1).chain([Delta]).chain(rep(I, l - j - 1)).collect()
    } else {
        rep(A, l - 1).collect()
    };
    Some(v)
}

/// One summand of `X^{(L)}_J(x)`: `x^{x_power}` times a tensor product of mode operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorOp {
    pub x_power: u32,
    pub factors: Vec<ModeOp>,
}

/// `X^{(L)}_J(x) = Σ_M a_{JM}(x) ⊗ X^{(L-1)}_M(x)`, with `X^{(1)}_1 = x` and `X^{(1)}_0 = 1`.
pub fn build_x(j: u32, l: u32) -> Vec<TensorOp> {
    if l <= 1 {
        return vec![TensorOp { x_power: u32::from(j == 1), factors: vec![] }];
    }
    let mut out = Vec::new();
    for m in 0..l {
        let Some(a) = a_factors(j, m, l) else { continue };
        for low in build_x(m, l - 1) {
            let mut factors = a.clone();
            factors.extend(low.factors);
            out.push(TensorOp { x_power: u32::from(j > 0) + low.x_power, factors });
        }
    }
    out
}

/// q-exponents of the twist `S^{(L)}`, one per mode: level `k` contributes `k-1, …, 1`.
pub fn build_s(l: u32) -> Vec<u32> {
    (2..=l).rev().flat_map(|k| (1..k).rev()).collect()
}

/// Site-part `k > 0` enters as species `L + 1 - k`; holes stay holes.
pub fn species(part: u32, l: u32) -> u32 {
    if part == 0 {
        0
    } else {
        l + 1 - part
    }
}

/// Dense `d × d` truncation of a mode operator or twist, entries in `Z[q, t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncOp {
    pub d: usize,
    pub entries: Vec<Vec<QTPoly>>,
}

impl TruncOp {
    pub fn zero(d: usize) -> Self {
        TruncOp { d, entries: vec![vec![QTPoly::zero(); d]; d] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i][i] = QTPoly::one();
        }
        m
    }

    pub fn mode(op: ModeOp, d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            match op {
                ModeOp::I => m.entries[i][i] = QTPoly::one(),
                ModeOp::A => m.entries[i][i] = QTPoly::qt(0, i as u32),
                ModeOp::Eps if i + 1 < d => m.entries[i][i + 1] = QTPoly::one(),
                ModeOp::Delta if i + 1 < d => m.entries[i + 1][i] = QTPoly::one_minus(0, i as u32 + 1),
                _ => {}
            }
        }
        m
    }

    /// `D(q^s)`.
    pub fn twist(s: u32, d: usize) -> Self {
        let mut m = Self::zero(d);
        for i in 0..d {
            m.entries[i][i] = QTPoly::qt(s * i as u32, 0);
        }
        m
    }

    pub fn matmul(&self, o: &TruncOp) -> TruncOp {
        let mut m = Self::zero(self.d);
        for i in 0..self.d {
            for k in 0..self.d {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.d {
                    if !o.entries[k][j].is_zero() {
                        m.entries[i][j] = &m.entries[i][j] + &(&self.entries[i][k] * &o.entries[k][j]);
                    }
                }
            }
        }
        m
    }

    pub fn trace(&self) -> QTPoly {
        (0..self.d).fold(QTPoly::zero(), |acc, i| &acc + &self.entries[i][i])
    }
}

/// Offsets of a closed walk: per-op index shifts relative to the start, and the least start.
struct Walk {
    /// Offset of the current index before each `A` (relative to the least start).
    a_offsets: Vec<u32>,
    /// Index before each `δ`, relative to the least start.
    delta_offsets: Vec<u32>,
    least_start: u32,
}

fn walk(word: &[ModeOp]) -> Option<Walk> {
    let (mut cur, mut low) = (0i64, 0i64);
    let mut a = Vec::new();
    let mut dl = Vec::new();
    for op in word {
        match op {
            ModeOp::I => {}
            ModeOp::A => a.push(cur),
            ModeOp::Eps => cur += 1,
            ModeOp::Delta => {
                dl.push(cur);
                cur -= 1;
                low = low.min(cur);
            }
        }
    }
    if cur != 0 {
        return None;
    }
    let j0 = -low;
    Some(Walk {
        a_offsets: a.iter().map(|&o| (o + j0) as u32).collect(),
        delta_offsets: dl.iter().map(|&o| (o + j0) as u32).collect(),
        least_start: j0 as u32,
    })
}

/// `Tr(w_1 ⋯ w_n D(q^s))` over the full semi-infinite space.
pub fn mode_trace_exact(word: &[ModeOp], s: u32) -> QTRational {
    assert!(s >= 1, "untwisted traces diverge");
    let Some(w) = walk(word) else { return QTRational::zero() };
    // Starting index j0 + k contributes q^{s(j0+k)} t^{Σ(k + a)} Π(1 - t^{k + δ}).
    let mut expansion = vec![QTPoly::one()];
    for &o in &w.delta_offsets {
        let mut next = vec![QTPoly::zero(); expansion.len() + 1];
        for (r, c) in expansion.iter().enumerate() {
            next[r] = &next[r] + c;
            next[r + 1] = &next[r + 1] - &c.shift(0, o);
        }
        expansion = next;
    }
    let na = w.a_offsets.len() as u32;
    let base = QTPoly::qt(s * w.least_start, w.a_offsets.iter().sum());
    QTRational::sum_grouped(expansion.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| {
        let f = Factor::new(s, na + r as u32).expect("s >= 1");
        QTRational::over_factor(&c * &base, f)
    }))
}

/// The same trace with every operator truncated to dimension `d`.
pub fn mode_trace_truncated(word: &[ModeOp], s: u32, d: usize) -> QTPoly {
    let mut total = QTPoly::zero();
    for j in 0..d as u32 {
        let mut cur = j;
        let mut c = QTPoly::qt(s * j, 0);
        let mut alive = true;
        for op in word {
            match op {
                ModeOp::I => {}
                ModeOp::A => c = c.shift(0, cur),
                ModeOp::Eps if (cur as usize) + 1 < d => cur += 1,
                ModeOp::Delta if cur >= 1 => {
                    c = &c * &QTPoly::one_minus(0, cur);
                    cur -= 1;
                }
                _ => {
                    alive = false;
                    break;
                }
            }
        }
        if alive && cur == j {
            total = &total + &c;
        }
    }
    total
}

/// One summand of the trace product: `x^mono` times per-mode words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct TraceTerm {
    mono: XMonomial,
    words: Vec<Vec<ModeOp>>,
}

fn trace_terms(mu: &Composition, l: u32) -> Vec<TraceTerm> {
    let n = mu.len();
    let modes = (l * l.saturating_sub(1) / 2) as usize;
    let mut terms: HashMap<TraceTerm, i64> = HashMap::new();
    terms.insert(TraceTerm { mono: vec![0; n], words: vec![Vec::new(); modes] }, 1);
    let cache: BTreeMap<u32, Vec<TensorOp>> = (0..=l).map(|j| (j, build_x(j, l))).collect();
    for (i, &p) in mu.parts().iter().enumerate() {
        let mut next = HashMap::new();
        for (term, mult) in &terms {
            for op in &cache[&species(p, l)] {
                let mut t = term.clone();
                t.mono[i] += op.x_power;
                for (w, f) in t.words.iter_mut().zip(&op.factors) {
                    w.push(*f);
                }
                *next.entry(t).or_insert(0) += mult;
            }
        }
        terms = next;
    }
    terms
        .into_iter()
        .filter(|(t, _)| t.words.iter().all(|w| walk(w).is_some()))
        .flat_map(|(t, m)| std::iter::repeat(t).take(m as usize))
        .collect()
}

/// Exact and truncated traces `Y_μ`, memoized per mode word.
#[derive(Default)]
pub struct Ansatz {
    exact: Mutex<HashMap<(Vec<ModeOp>, u32), QTRational>>,
}

impl Ansatz {
    pub fn new() -> Self {
        Self::default()
    }

    fn exact_trace(&self, word: &[ModeOp], s: u32) -> QTRational {
        let key = (word.to_vec(), s);
        if let Some(v) = self.exact.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = mode_trace_exact(word, s);
        self.exact.lock().expect("cache lock").insert(key, v.clone());
        v
    }

    /// `Tr(Π_i X_{μ_i}(x_i) S)` with `L = max μ`, over the semi-infinite space.
    pub fn y_exact(&self, mu: &Composition) -> XPolynomial {
        let l = mu.max_part();
        let twist = build_s(l);
        let n = mu.len();
        let terms = trace_terms(mu, l);
        let pieces: Vec<(XMonomial, QTRational)> = terms
            .par_iter()
            .map(|t| {
                let c = t.words.iter().zip(&twist).fold(QTRational::one(), |acc, (w, &s)| &acc * &self.exact_trace(w, s));
                (t.mono.clone(), c)
            })
            .collect();
        XPolynomial::from_terms(n, pieces)
    }

    /// The trace with every mode truncated to dimension `d`.
    pub fn y_truncated(&self, mu: &Composition, d: usize) -> XPolynomial {
        let l = mu.max_part();
        let twist = build_s(l);
        let terms = trace_terms(mu, l);
        let pieces: Vec<(XMonomial, QTRational)> = terms
            .par_iter()
            .map(|t| {
                let c = t
                    .words
                    .iter()
                    .zip(&twist)
                    .fold(QTPoly::one(), |acc, (w, &s)| &acc * &mode_trace_truncated(w, s, d));
                (t.mono.clone(), QTRational::from_poly(c))
            })
            .collect();
        XPolynomial::from_terms(mu.len(), pieces)
    }

    /// The exact trace, certified against truncations at `d`, `d+1`, `d+2`: each must agree
    /// with it through q-order `dim - n`, the most a closed walk of `n` steps can lose.
    pub fn y(&self, mu: &Composition, d: usize) -> Result<XPolynomial, AnsatzError> {
        if d == 0 {
            return Err(AnsatzError::ZeroDimension);
        }
        let exact = self.y_exact(mu);
        let n = mu.len();
        for dim in d..d + 3 {
            let needed = (dim as u32).saturating_sub(n as u32);
            let diff = &exact - &self.y_truncated(mu, dim);
            if diff.terms().any(|(_, c)| q_valuation(c) < i64::from(needed)) {
                return Err(AnsatzError::TruncationUnstable { dim, needed });
            }
        }
        Ok(exact)
    }
}

/// Order of vanishing at `q = 0`; denominators `1 - q^a t^b` with `a ≥ 1` are units there.
pub fn q_valuation(c: &QTRational) -> i64 {
    if c.is_zero() {
        return i64::MAX;
    }
    debug_assert!(c.factors().iter().all(|f| f.q >= 1));
    i64::from(c.numerator().min_exponents().0) - i64::from(c.monomial_denominator().0)
}

/// Default truncation dimension.
pub fn default_dimension(n: usize) -> usize {
    n + 2
}

/// Whether `Y_μ F_ν = Y_ν F_μ` for every pair, i.e. `Y/F` does not depend on `μ`.
pub fn proportional(ys: &[XPolynomial], fs: &[XPolynomial]) -> bool {
    (1..ys.len()).all(|k| &ys[0] * &fs[k] == &ys[k] * &fs[0])
}

/// `Y_μ(1,…,1; 1, t)` at rational `t`.
pub fn y_at_ones(y: &XPolynomial, t: &crate::ring::BigRat) -> Result<crate::ring::BigRat, crate::ring::RingError> {
    let ones = vec![int(1); y.nvars()];
    y.eval_x(&ones).at_q_one()?.eval(t)
}

/// Ascii rendering of a tensor term, e.g. `x^2 [d e | A]`.
impl fmt::Display for TensorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} [", self.x_power)?;
        for (k, op) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{op}")?;
        }
        f.write_str("]")
    }
}
