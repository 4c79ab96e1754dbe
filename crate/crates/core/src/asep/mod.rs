//! The multispecies exclusion process on a ring: exact transition matrices, stationary
//! vectors, and comparison against `F_μ(1,…,1; 1, t)`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::macdonald::fmu;
use crate::mlq::Composition;
use crate::ring::{BigRat, RatFn, RingError};

/// Largest state space accepted by the symbolic-in-`t` solve.
pub const SYMBOLIC_STATE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AsepError {
    #[error("{0} is not a partition")]
    NotPartition(Composition),
    #[error("stationary solution is not unique (nullspace dimension {0})")]
    NotIrreducible(usize),
    #[error("evaluation point is a pole")]
    PoleAtEvaluationPoint,
    #[error("{0} states exceed the symbolic limit")]
    TooLarge(usize),
}

impl From<RingError> for AsepError {
    fn from(_: RingError) -> Self {
        AsepError::PoleAtEvaluationPoint
    }
}

/// Distinct rearrangements of a partition, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    lambda: Composition,
    states: Vec<Composition>,
    index: HashMap<Composition, usize>,
}

impl StateSpace {
    pub fn new(lambda: &Composition) -> Result<Self, AsepError> {
        if !lambda.is_partition() {
            return Err(AsepError::NotPartition(lambda.clone()));
        }
        let states = lambda.rearrangements();
        let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Ok(StateSpace { lambda: lambda.clone(), states, index })
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn states(&self) -> &[Composition] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, mu: &Composition) -> Option<usize> {
        self.index.get(mu).copied()
    }

    /// Outgoing moves as `(target, is_t_move)`, one per cyclic adjacent pair that changes the state.
    fn moves(&self, from: usize) -> Vec<(usize, bool)> {
        let mu = self.states[from].parts();
        let n = mu.len();
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        for k in 0..n {
            let (a, b) = (k, (k + 1) % n);
            if mu[a] == mu[b] {
                continue;
            }
            let mut nu = mu.to_vec();
            nu.swap(a, b);
            let target = self.index[&Composition::new(nu).expect("nonempty")];
            out.push((target, mu[a] > mu[b]));
        }
        out
    }
}

/// Field operations needed by the exact solver.
trait Field: Clone + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for BigRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RatFn::div(self, o).expect("pivot is nonzero")
    }
}

fn build<F: Field>(space: &StateSpace, rate_one: &F, rate_t: &F) -> Vec<Vec<F>> {
    let m = space.len();
    (0..m)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![F::zero(); m];
            let mut out = F::zero();
            for (j, is_t) in space.moves(i) {
                let r = if is_t { rate_t } else { rate_one };
                row[j] = row[j].add(r);
                out = out.add(r);
            }
            row[i] = row[i].add(&F::one().sub(&out));
            row
        })
        .collect()
}

/// Unique probability vector with `πP = π`, by Gaussian elimination on `(P - I)ᵀ`.
fn solve_stationary<F: Field>(p: &[Vec<F>]) -> Result<Vec<F>, AsepError> {
    let m = p.len();
    let mut a: Vec<Vec<F>> = (0..m)
        .map(|r| (0..m).map(|c| if r == c { p[c][r].sub(&F::one()) } else { p[c][r].clone() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(pr) = (row..m).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, pr);
        let inv = F::one().div(&a[row][col]);
        for c in col..m {
            a[row][c] = a[row][c].mul(&inv);
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..m {
                    let v = a[r][c].sub(&f.mul(&a[row][c]));
                    a[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let nullity = m - pivots.len();
    if nullity != 1 {
        return Err(AsepError::NotIrreducible(nullity));
    }
    let free = (0..m).find(|c| !pivots.contains(c)).expect("one free column");
    let mut pi = vec![F::zero(); m];
    pi[free] = F::one();
    for (r, &c) in pivots.iter().enumerate() {
        pi[c] = F::zero().sub(&a[r][free]);
    }
    let total = pi.iter().fold(F::zero(), |s, v| s.add(v));
    Ok(pi.iter().map(|v| v.div(&total)).collect())
}

/// Exact row-stochastic matrix at a fixed rational `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    pub space: StateSpace,
    pub t: BigRat,
    pub entries: Vec<Vec<BigRat>>,
}

impl TransitionMatrix {
    pub fn entry(&self, from: &Composition, to: &Composition) -> Option<&BigRat> {
        Some(&self.entries[self.space.index_of(from)?][self.space.index_of(to)?])
    }

    pub fn is_stochastic(&self) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().all(|v| !v.is_negative()) && row.iter().sum::<BigRat>().is_one())
    }
}

/// Values of `t` outside `[0, 1]` are accepted; rows may then have negative entries.
pub fn build_chain(lambda: &Composition, t: &BigRat) -> Result<TransitionMatrix, AsepError> {
    let space = StateSpace::new(lambda)?;
    let n = BigRat::from_integer((lambda.len() as i64).into());
    let one = <BigRat as One>::one() / &n;
    let tn = t / &n;
    let entries = build(&space, &one, &tn);
    Ok(TransitionMatrix { space, t: t.clone(), entries })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryVector {
    pub space: StateSpace,
    pub t: BigRat,
    pub pi: Vec<BigRat>,
}

impl StationaryVector {
    pub fn prob(&self, mu: &Composition) -> Option<&BigRat> {
        self.space.index_of(mu).map(|i| &self.pi[i])
    }

    pub fn to_json(&self) -> AsepJson {
        AsepJson {
            lambda: self.space.lambda.parts().to_vec(),
            t: self.t.to_string(),
            states: self.space.states.iter().map(|s| s.parts().to_vec()).collect(),
            pi: self.pi.iter().map(|v| v.to_string()).collect(),
        }
    }
}

/// `{"lambda", "t": "p/q", "states", "pi": ["p/q", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsepJson {
    pub lambda: Vec<u32>,
    pub t: String,
    pub states: Vec<Vec<u32>>,
    pub pi: Vec<String>,
}

pub fn stationary(lambda: &Composition, t: &BigRat) -> Result<StationaryVector, AsepError> {
    let chain = build_chain(lambda, t)?;
    let pi = solve_stationary(&chain.entries)?;
    Ok(StationaryVector { space: chain.space, t: t.clone(), pi })
}

/// Stationary vector over `Q(t)`.
pub fn stationary_symbolic(lambda: &Composition) -> Result<(StateSpace, Vec<RatFn>), AsepError> {
    let space = StateSpace::new(lambda)?;
    if space.len() > SYMBOLIC_STATE_LIMIT {
        return Err(AsepError::TooLarge(space.len()));
    }
    let inv_n = RatFn::constant(BigRat::new(One::one(), (lambda.len() as i64).into()));
    let p = build(&space, &inv_n, &inv_n.mul(&RatFn::t()));
    let pi = solve_stationary(&p)?;
    Ok((space, pi))
}

/// Exact comparison of `π` with `F_μ(1,…,1; 1, t)` up to a common scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct MartinReport {
    pub stationary: StationaryVector,
    pub f_values: Vec<BigRat>,
    /// `max |π_μ F_ν - π_ν F_μ|` over state pairs.
    pub max_discrepancy: BigRat,
}

impl MartinReport {
    pub fn passed(&self) -> bool {
        Zero::is_zero(&self.max_discrepancy) && self.f_values.iter().any(|f| !Zero::is_zero(f))
    }
}

/// `F_μ(1,…,1; 1, t)` as an element of `Q(t)`.
pub fn f_at_ones(mu: &Composition) -> Result<RatFn, AsepError> {
    let ones = vec![<BigRat as One>::one(); mu.len()];
    Ok(fmu(mu).eval_x(&ones).at_q_one()?)
}

pub fn martin_check(lambda: &Composition, t: &BigRat) -> Result<MartinReport, AsepError> {
    let st = stationary(lambda, t)?;
    let f_values = st
        .space
        .states
        .par_iter()
        .map(|mu| Ok(f_at_ones(mu)?.eval(t)?))
        .collect::<Result<Vec<_>, AsepError>>()?;
    let mut max_discrepancy = <BigRat as Zero>::zero();
    for a in 0..f_values.len() {
        for b in a + 1..f_values.len() {
            let d = (&st.pi[a] * &f_values[b] - &st.pi[b] * &f_values[a]).abs();
            if d > max_discrepancy {
                max_discrepancy = d;
            }
        }
    }
    Ok(MartinReport { stationary: st, f_values, max_discrepancy })
}

/// Proportionality of the symbolic stationary vector and `F_μ(1,…,1; 1, t)` in `Q(t)`.
pub fn martin_check_symbolic(lambda: &Composition) -> Result<bool, AsepError> {
    let (space, pi) = stationary_symbolic(lambda)?;
    let f = space.states.iter().map(f_at_ones).collect::<Result<Vec<_>, _>>()?;
    Ok((0..f.len()).all(|a| (a + 1..f.len()).all(|b| pi[a].mul(&f[b]) == pi[b].mul(&f[a]))))
}

/// Occupation frequencies of the discrete-time chain started from `λ` itself.
///
/// Each step picks one of the `n` cyclic adjacent pairs uniformly and swaps it with
/// probability 1 if the left entry is smaller, `t` if larger.
pub fn simulate(lambda: &Composition, t: f64, steps: u64, seed: u64) -> Result<Vec<f64>, AsepError> {
    let space = StateSpace::new(lambda)?;
    let n = lambda.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = lambda.parts().to_vec();
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for _ in 0..steps {
        if n >= 2 {
            let k = rng.gen_range(0..n);
            let (a, b) = (k, (k + 1) % n);
            let u: f64 = rng.gen();
            let swap = match state[a].cmp(&state[b]) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => u < t,
                std::cmp::Ordering::Equal => false,
            };
            if swap {
                state.swap(a, b);
            }
        }
        *counts.entry(state.clone()).or_default() += 1;
    }
    Ok(space.states.iter().map(|s| counts.get(s.parts()).copied().unwrap_or(0) as f64 / steps as f64).collect())
}

/// Independent runs for `seeds`, in parallel.
pub fn simulate_many(lambda: &Composition, t: f64, steps: u64, seeds: &[u64]) -> Result<Vec<Vec<f64>>, AsepError> {
    seeds.par_iter().map(|&s| simulate(lambda, t, steps, s)).collect()
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}
