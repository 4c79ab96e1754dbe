use std::fmt;

use serde::{Deserialize, Serialize};

use super::pass::{audit_pass, PairingEvent};
use super::{Composition, MlqError};
use crate::ring::{Factor, QTPoly, QTRational, XMonomial};

/// Occupancy of an `L × n` cylinder. `rows[0]` is row 1, the bottom row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallSystem {
    n: usize,
    rows: Vec<Vec<bool>>,
}

impl BallSystem {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self, MlqError> {
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(MlqError::InvalidSystem("rows of unequal length".into()));
        }
        if let Some(top) = rows.last() {
            if !top.iter().any(|&b| b) {
                return Err(MlqError::InvalidSystem("top row is empty".into()));
            }
        }
        let counts: Vec<usize> = rows.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
        if counts.windows(2).any(|w| w[0] < w[1]) {
            return Err(MlqError::InvalidSystem("row counts must not grow upwards".into()));
        }
        Ok(BallSystem { n, rows })
    }

    /// System with no rows over `n` columns.
    pub fn empty(n: usize) -> Self {
        BallSystem { n, rows: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn height(&self) -> u32 {
        self.rows.len() as u32
    }

    /// Row `r`, one-based.
    pub fn row(&self, r: u32) -> &[bool] {
        &self.rows[r as usize - 1]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn balls(&self) -> Vec<(u32, usize)> {
        let mut v = Vec::new();
        for (ri, row) in self.rows.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                if b {
                    v.push((ri as u32 + 1, c));
                }
            }
        }
        v
    }
}

/// A ball system with its matching and the labels and events it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilineQueue {
    system: BallSystem,
    /// `matching[r - 1][c]`: partner of the ball at row `r`, column `c`; empty for row 1.
    matching: Vec<Vec<Option<usize>>>,
    labels: Vec<Vec<u32>>,
    events: Vec<PairingEvent>,
}

/// Labels (`labels[r - 1][c]`, zero for empty cells) and events in reading order.
pub type Audit = (Vec<Vec<u32>>, Vec<PairingEvent>);

/// Derives labels top-down and replays every row pass.
pub fn label_and_audit(system: &BallSystem, matching: &[Vec<Option<usize>>]) -> Result<Audit, MlqError> {
    let l = system.height() as usize;
    let n = system.n();
    if matching.len() != l || matching.iter().any(|m| m.len() != n) {
        return Err(MlqError::InvalidMatching("matching shape does not fit the system".into()));
    }
    if l == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut labels = vec![vec![0u32; n]; l];
    for c in 0..n {
        if system.rows[l - 1][c] {
            labels[l - 1][c] = l as u32;
        }
    }
    let mut events = Vec::new();
    for r in (2..=l).rev() {
        for c in 0..n {
            if matching[r - 1][c].is_some() != system.rows[r - 1][c] {
                return Err(MlqError::InvalidMatching(format!("row {r} column {} matched inconsistently", c + 1)));
            }
        }
        let out = audit_pass(&labels[r - 1], &system.rows[r - 2], r as u32, &matching[r - 1])?;
        labels[r - 2] = out.lower_labels;
        events.extend(out.events);
    }
    if matching[0].iter().any(|m| m.is_some()) {
        return Err(MlqError::InvalidMatching("row 1 balls have no partners".into()));
    }
    Ok((labels, events))
}

impl MultilineQueue {
    pub fn new(system: BallSystem, matching: Vec<Vec<Option<usize>>>) -> Result<Self, MlqError> {
        let (labels, events) = label_and_audit(&system, &matching)?;
        Ok(MultilineQueue { system, matching, labels, events })
    }

    pub(crate) fn from_parts(
        system: BallSystem,
        matching: Vec<Vec<Option<usize>>>,
        labels: Vec<Vec<u32>>,
        events: Vec<PairingEvent>,
    ) -> Self {
        MultilineQueue { system, matching, labels, events }
    }

    /// The queue with no rows; its type is all zeros.
    pub fn empty(n: usize) -> Self {
        MultilineQueue { system: BallSystem::empty(n), matching: Vec::new(), labels: Vec::new(), events: Vec::new() }
    }

    pub fn system(&self) -> &BallSystem {
        &self.system
    }

    pub fn matching(&self) -> &[Vec<Option<usize>>] {
        &self.matching
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn events(&self) -> &[PairingEvent] {
        &self.events
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn type_(&self) -> Composition {
        let parts = match self.labels.first() {
            Some(row) => row.clone(),
            None => vec![0; self.n()],
        };
        Composition::new(parts).expect("n >= 1")
    }

    /// Exponent of `x_i` is the number of balls in column `i`.
    pub fn wt_x(&self) -> XMonomial {
        (0..self.n()).map(|c| self.system.rows.iter().filter(|r| r[c]).count() as u32).collect()
    }

    pub fn wt_qt(&self) -> QTRational {
        event_weight(&self.events)
    }

    /// `(c + 1) mod n` for every column.
    pub fn cyclic_shift(&self) -> Result<MultilineQueue, MlqError> {
        let n = self.n();
        let rot = |row: &Vec<bool>| {
            let mut r = row.clone();
            r.rotate_right(1);
            r
        };
        let system = BallSystem { n, rows: self.system.rows.iter().map(rot).collect() };
        let matching = self
            .matching
            .iter()
            .map(|row| {
                let mut r: Vec<Option<usize>> = row.iter().map(|p| p.map(|c| (c + 1) % n)).collect();
                r.rotate_right(1);
                r
            })
            .collect();
        MultilineQueue::new(system, matching)
    }

    pub fn to_json(&self) -> QueueJson {
        let mut balls = Vec::new();
        let mut matching = Vec::new();
        let mut labels = Vec::new();
        for (row, c) in self.system.balls() {
            balls.push((row, c + 1));
            labels.push((row, c + 1, self.labels[row as usize - 1][c]));
            if let Some(p) = self.matching[row as usize - 1][c] {
                matching.push((row, c + 1, p + 1));
            }
        }
        QueueJson {
            l: self.system.height(),
            n: self.n(),
            balls,
            matching,
            labels,
            events: self
                .events
                .iter()
                .map(|e| PairingEvent { from_col: e.from_col + 1, to_col: e.to_col + 1, ..e.clone() })
                .collect(),
        }
    }

    /// Fixed-width rendering, top row first; digits are labels, `.` is empty.
    pub fn ascii(&self) -> String {
        let mut out = String::new();
        for r in (1..=self.system.height()).rev() {
            out.push_str(&format!("{r:>2} |"));
            for c in 0..self.n() {
                let l = self.labels[r as usize - 1][c];
                if l == 0 {
                    out.push_str("  .");
                } else {
                    out.push_str(&format!("{l:>3}"));
                }
            }
            out.push('\n');
            if r > 1 {
                out.push_str("   |");
                for c in 0..self.n() {
                    let p = self.matching[r as usize - 1][c];
                    out.push_str(&match p {
                        None => "   ".to_string(),
                        Some(to) if to == c => "  |".to_string(),
                        Some(to) => format!("{:>3}", format!(">{}", to + 1)),
                    });
                }
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for MultilineQueue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

/// Product over nontrivial events of `(1-t) t^skipped q^{e [wrapped]} / (1 - q^e t^free)`.
pub fn event_weight(events: &[PairingEvent]) -> QTRational {
    let mut num = QTPoly::one();
    let (mut dq, mut dt) = (0, 0);
    let mut den = Vec::new();
    let one_minus_t = QTPoly::one_minus(0, 1);
    for e in events.iter().filter(|e| !e.trivial) {
        num = &num * &one_minus_t;
        dt += e.skipped;
        if e.wrapped {
            dq += e.q_exponent();
        }
        den.push(Factor::new(e.q_exponent(), e.free).expect("q exponent is positive"));
    }
    if den.is_empty() && num.is_one() {
        return QTRational::qt(dq, dt);
    }
    QTRational::new(num.shift(dq, dt), (0, 0), den)
}

/// JSON form; rows and columns one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueJson {
    #[serde(rename = "L")]
    pub l: u32,
    pub n: usize,
    pub balls: Vec<(u32, usize)>,
    pub matching: Vec<(u32, usize, usize)>,
    pub labels: Vec<(u32, usize, u32)>,
    pub events: Vec<PairingEvent>,
}

impl QueueJson {
    pub fn to_queue(&self) -> Result<MultilineQueue, MlqError> {
        let l = self.l as usize;
        let mut rows = vec![vec![false; self.n]; l];
        let mut matching = vec![vec![None; self.n]; l];
        let bad = |what: &str| MlqError::Parse(format!("queue JSON: {what}"));
        for &(r, c) in &self.balls {
            if r == 0 || r as usize > l || c == 0 || c > self.n {
                return Err(bad("ball out of range"));
            }
            rows[r as usize - 1][c - 1] = true;
        }
        for &(r, c, p) in &self.matching {
            if r < 2 || r as usize > l || c == 0 || c > self.n || p == 0 || p > self.n {
                return Err(bad("matching out of range"));
            }
            matching[r as usize - 1][c - 1] = Some(p - 1);
        }
        if l == 0 {
            return Ok(MultilineQueue::empty(self.n));
        }
        MultilineQueue::new(BallSystem::new(rows)?, matching)
    }
}
