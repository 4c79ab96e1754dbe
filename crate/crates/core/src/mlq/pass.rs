//! One row boundary: balls of row `r` choose partners in row `r - 1`.
//!
//! Labels are processed in decreasing order. When a label class starts, each of
//! its balls with a free ball directly beneath claims it. The rest of the class
//! then chooses right to left among the balls still free.

use serde::{Deserialize, Serialize};

use super::MlqError;

/// One pairing, with columns zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairingEvent {
    /// Row of the upper ball.
    pub row: u32,
    pub label: u32,
    pub from_col: usize,
    pub to_col: usize,
    pub skipped: u32,
    pub free: u32,
    pub wrapped: bool,
    pub trivial: bool,
}

impl PairingEvent {
    /// Exponent of `q` in this pairing's weight, `label - row + 1`.
    pub fn q_exponent(&self) -> u32 {
        self.label + 1 - self.row
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PassOutcome {
    /// Partner column for each upper column holding a ball.
    pub partner: Vec<Option<usize>>,
    pub lower_labels: Vec<u32>,
    pub events: Vec<PairingEvent>,
}

struct Pass<'a> {
    n: usize,
    row: u32,
    classes: Vec<(u32, Vec<usize>)>,
    fixed: Option<&'a [Option<usize>]>,
    target: Option<&'a [u32]>,
    free: Vec<bool>,
    partner: Vec<Option<usize>>,
    lower_labels: Vec<u32>,
    events: Vec<PairingEvent>,
}

fn classes_of(upper: &[u32]) -> Vec<(u32, Vec<usize>)> {
    let mut labels: Vec<u32> = upper.iter().copied().filter(|&l| l > 0).collect();
    labels.sort_unstable_by(|a, b| b.cmp(a));
    labels.dedup();
    labels
        .into_iter()
        .map(|l| (l, (0..upper.len()).rev().filter(|&c| upper[c] == l).collect()))
        .collect()
}

impl Pass<'_> {
    fn count_free_between(&self, from: usize, to: usize) -> u32 {
        let mut k = 0;
        let mut c = (from + 1) % self.n;
        while c != to {
            k += self.free[c] as u32;
            c = (c + 1) % self.n;
        }
        k
    }

    fn free_count(&self) -> u32 {
        self.free.iter().filter(|&&f| f).count() as u32
    }

    fn accepts(&self, col: usize, label: u32) -> bool {
        self.target.is_none_or(|t| t[col] == label)
    }

    fn claim(&mut self, label: u32, from: usize, to: usize) {
        let skipped = if from == to { 0 } else { self.count_free_between(from, to) };
        let free = self.free_count();
        self.free[to] = false;
        self.partner[from] = Some(to);
        self.lower_labels[to] = label;
        self.events.push(PairingEvent {
            row: self.row,
            label,
            from_col: from,
            to_col: to,
            skipped,
            free,
            wrapped: to < from,
            trivial: to == from,
        });
    }

    fn unclaim(&mut self, from: usize, to: usize) {
        self.free[to] = true;
        self.partner[from] = None;
        self.lower_labels[to] = 0;
        self.events.pop();
    }

    fn run_class(&mut self, ci: usize, sink: &mut dyn FnMut(&Pass<'_>) -> Result<(), MlqError>) -> Result<(), MlqError> {
        if ci == self.classes.len() {
            return self.finish(sink);
        }
        let (label, cols) = self.classes[ci].clone();
        let mut forced = Vec::new();
        let mut rest = Vec::new();
        for &c in &cols {
            if self.free[c] {
                forced.push(c);
            } else {
                rest.push(c);
            }
        }
        for &c in &forced {
            if let Some(fx) = self.fixed {
                if fx[c] != Some(c) {
                    return Err(MlqError::InvalidMatching(format!(
                        "ball in row {} column {} must pair straight down",
                        self.row,
                        c + 1
                    )));
                }
            }
        }
        if forced.iter().any(|&c| !self.accepts(c, label)) {
            return Ok(());
        }
        for &c in &forced {
            self.claim(label, c, c);
        }
        self.run_rest(ci, label, &rest, 0, sink)?;
        for &c in forced.iter().rev() {
            self.unclaim(c, c);
        }
        Ok(())
    }

    fn run_rest(
        &mut self,
        ci: usize,
        label: u32,
        rest: &[usize],
        k: usize,
        sink: &mut dyn FnMut(&Pass<'_>) -> Result<(), MlqError>,
    ) -> Result<(), MlqError> {
        if k == rest.len() {
            return self.run_class(ci + 1, sink);
        }
        let from = rest[k];
        let options: Vec<usize> = match self.fixed {
            Some(fx) => {
                let to = fx[from].ok_or_else(|| {
                    MlqError::InvalidMatching(format!("ball in row {} column {} is unmatched", self.row, from + 1))
                })?;
                if to >= self.n || !self.free[to] {
                    return Err(MlqError::InvalidMatching(format!(
                        "ball in row {} column {} points at an unavailable ball",
                        self.row,
                        from + 1
                    )));
                }
                vec![to]
            }
            None => (0..self.n).filter(|&c| self.free[c] && self.accepts(c, label)).collect(),
        };
        for to in options {
            self.claim(label, from, to);
            self.run_rest(ci, label, rest, k + 1, sink)?;
            self.unclaim(from, to);
        }
        Ok(())
    }

    fn finish(&self, sink: &mut dyn FnMut(&Pass<'_>) -> Result<(), MlqError>) -> Result<(), MlqError> {
        let rest_label = self.row - 1;
        if let Some(t) = self.target {
            if (0..self.n).any(|c| self.free[c] && t[c] != rest_label) {
                return Ok(());
            }
        }
        sink(self)
    }

    fn outcome(&self) -> PassOutcome {
        let mut lower_labels = self.lower_labels.clone();
        for c in 0..self.n {
            if self.free[c] {
                lower_labels[c] = self.row - 1;
            }
        }
        let mut events = self.events.clone();
        events.sort_by(|a, b| b.label.cmp(&a.label).then(b.from_col.cmp(&a.from_col)));
        PassOutcome { partner: self.partner.clone(), lower_labels, events }
    }
}

fn new_pass<'a>(
    upper: &[u32],
    lower: &[bool],
    row: u32,
    fixed: Option<&'a [Option<usize>]>,
    target: Option<&'a [u32]>,
) -> Pass<'a> {
    let n = upper.len();
    Pass {
        n,
        row,
        classes: classes_of(upper),
        fixed,
        target,
        free: lower.to_vec(),
        partner: vec![None; n],
        lower_labels: vec![0; n],
        events: Vec::new(),
    }
}

/// Every admissible pass; `target`, when given, fixes the lower-row labels.
pub(crate) fn enumerate_pass(upper: &[u32], lower: &[bool], row: u32, target: Option<&[u32]>) -> Vec<PassOutcome> {
    assert!(row >= 2, "passes start at row 2");
    let uppers = upper.iter().filter(|&&l| l > 0).count();
    let lowers = lower.iter().filter(|&&b| b).count();
    if uppers > lowers {
        return Vec::new();
    }
    let mut pass = new_pass(upper, lower, row, None, target);
    let mut out = Vec::new();
    pass.run_class(0, &mut |p| {
        out.push(p.outcome());
        Ok(())
    })
    .expect("enumeration never fails");
    out
}

/// Replays a given matching, checking the pairing rule.
pub(crate) fn audit_pass(
    upper: &[u32],
    lower: &[bool],
    row: u32,
    partner: &[Option<usize>],
) -> Result<PassOutcome, MlqError> {
    for (c, p) in partner.iter().enumerate() {
        match (upper[c] > 0, p) {
            (false, Some(_)) => {
                return Err(MlqError::InvalidMatching(format!("empty cell row {} column {} has a partner", row, c + 1)))
            }
            (true, Some(to)) if *to >= lower.len() || !lower[*to] => {
                return Err(MlqError::InvalidMatching(format!(
                    "ball in row {} column {} points at an empty cell",
                    row,
                    c + 1
                )))
            }
            _ => {}
        }
    }
    let mut pass = new_pass(upper, lower, row, Some(partner), None);
    let mut out = None;
    pass.run_class(0, &mut |p| {
        out = Some(p.outcome());
        Ok(())
    })?;
    out.ok_or_else(|| MlqError::InvalidMatching("matching is not realisable".into()))
}
