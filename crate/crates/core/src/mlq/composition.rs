use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MlqError;

/// A weak composition `(μ_1, …, μ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, MlqError> {
        if parts.is_empty() {
            return Err(MlqError::EmptyComposition);
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part; the number of rows of its queues.
    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// Parts sorted into weakly decreasing order.
    pub fn sorted(&self) -> Composition {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Composition(p)
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Number of parts `>= r`, i.e. balls in row `r`.
    pub fn count_at_least(&self, r: u32) -> usize {
        self.0.iter().filter(|&&p| p >= r).count()
    }

    /// `(μ_n, μ_1, …, μ_{n-1})`.
    pub fn rotate(&self) -> Composition {
        let mut p = self.0.clone();
        p.rotate_right(1);
        Composition(p)
    }

    /// Exchange positions `i` and `i+1` (zero-based).
    pub fn swap(&self, i: usize) -> Composition {
        let mut p = self.0.clone();
        p.swap(i, i + 1);
        Composition(p)
    }

    /// Every positive part decreased by one.
    pub fn decrement(&self) -> Composition {
        Composition(self.0.iter().map(|&p| p.saturating_sub(1)).collect())
    }

    /// Distinct rearrangements in lexicographic order.
    pub fn rearrangements(&self) -> Vec<Composition> {
        let mut p = self.0.clone();
        p.sort_unstable();
        let mut out = vec![Composition(p.clone())];
        while next_permutation(&mut p) {
            out.push(Composition(p.clone()));
        }
        out
    }

    /// Conjugate partition of the sorted parts.
    pub fn conjugate(&self) -> Vec<usize> {
        (1..=self.max_part()).map(|r| self.count_at_least(r)).collect()
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All partitions with at most `n` parts contained in `outer`, padded with zeros to length `n`.
pub fn partitions_inside(outer: &[u32], n: usize) -> Vec<Composition> {
    fn go(outer: &[u32], n: usize, i: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if i == n {
            out.push(Composition(cur.clone()));
            return;
        }
        let bound = cap.min(outer.get(i).copied().unwrap_or(0));
        for p in (0..=bound).rev() {
            cur.push(p);
            go(outer, n, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(outer, n, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

impl FromStr for Composition {
    type Err = MlqError;
    fn from_str(s: &str) -> Result<Self, MlqError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| MlqError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}
