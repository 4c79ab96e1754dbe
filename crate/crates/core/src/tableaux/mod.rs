//! Queue tableaux: nonattacking fillings of an augmented diagram whose statistics
//! reproduce multiline-queue weights.
//!
//! Boxes are `(column, row)`, both one-based, with the basement in row 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::mlq::{Composition, MultilineQueue};
use crate::ring::{Factor, QTPoly, QTRational, XMonomial, XPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableauError {
    #[error("{0} is not weakly decreasing")]
    NotPartition(Composition),
    #[error("basement {0:?} is not a permutation of 1..n")]
    BadBasement(Vec<usize>),
    #[error("filling does not fit the diagram")]
    BadShape,
}

/// Column heights plus the basement row, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AugmentedDiagram {
    heights: Vec<u32>,
    basement: Vec<usize>,
}

impl AugmentedDiagram {
    pub fn new(lambda: &Composition, basement: Vec<usize>) -> Result<Self, TableauError> {
        if !lambda.is_partition() {
            return Err(TableauError::NotPartition(lambda.clone()));
        }
        let n = lambda.len();
        let mut seen = vec![false; n + 1];
        for &b in &basement {
            if b == 0 || b > n || seen[b] {
                return Err(TableauError::BadBasement(basement));
            }
            seen[b] = true;
        }
        if basement.len() != n {
            return Err(TableauError::BadBasement(basement));
        }
        Ok(AugmentedDiagram { heights: lambda.parts().to_vec(), basement })
    }

    /// Shape `sort(μ)` with the basement of the longest permutation sorting `μ` increasingly.
    pub fn for_type(mu: &Composition) -> Self {
        let n = mu.len();
        let mut order: Vec<usize> = (1..=n).collect();
        // Ties in decreasing position give the longest sorting permutation.
        order.sort_by(|&a, &b| mu.parts()[a - 1].cmp(&mu.parts()[b - 1]).then(b.cmp(&a)));
        let basement: Vec<usize> = order.iter().rev().copied().collect();
        AugmentedDiagram::new(&mu.sorted(), basement).expect("sorted shape and permutation")
    }

    pub fn n(&self) -> usize {
        self.heights.len()
    }

    pub fn height(&self, col: usize) -> u32 {
        self.heights[col - 1]
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn basement(&self) -> &[usize] {
        &self.basement
    }

    pub fn contains(&self, (col, row): (usize, u32)) -> bool {
        col >= 1 && col <= self.n() && row <= self.height(col)
    }

    /// Whether box `y` attacks box `x`, with `x` above the basement.
    pub fn attacking(&self, x: (usize, u32), y: (usize, u32)) -> bool {
        let ((i, j), (k, l)) = (x, y);
        if !self.contains(x) || !self.contains(y) || j == 0 {
            return false;
        }
        (l == j && k != i)
            || (l + 1 == j && k > i)
            || (l + 1 == j && k < i && self.height(i) == self.height(k))
    }
}

/// A nonattacking filling of an augmented diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QueueTableau {
    diagram: AugmentedDiagram,
    /// `fill[col - 1][row - 1]`.
    fill: Vec<Vec<usize>>,
}

impl QueueTableau {
    pub fn new(diagram: AugmentedDiagram, fill: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        if fill.len() != diagram.n() || fill.iter().enumerate().any(|(c, col)| col.len() != diagram.height(c + 1) as usize)
        {
            return Err(TableauError::BadShape);
        }
        Ok(QueueTableau { diagram, fill })
    }

    pub fn diagram(&self) -> &AugmentedDiagram {
        &self.diagram
    }

    pub fn n(&self) -> usize {
        self.diagram.n()
    }

    /// Entry `φ(col, row)`; row 0 reads the basement.
    pub fn entry(&self, col: usize, row: u32) -> usize {
        if row == 0 {
            self.diagram.basement[col - 1]
        } else {
            self.fill[col - 1][row as usize - 1]
        }
    }

    fn boxes(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        (1..=self.n()).flat_map(move |c| (1..=self.diagram.height(c)).map(move |r| (c, r)))
    }

    pub fn is_nonattacking(&self) -> bool {
        let boxes: Vec<_> = self.boxes().collect();
        for &x in &boxes {
            for k in 1..=self.n() {
                for l in [x.1, x.1 - 1] {
                    let y = (k, l);
                    if self.diagram.attacking(x, y) && self.entry(x.0, x.1) == self.entry(k, l) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn restricted(&self, col: usize, row: u32) -> bool {
        self.entry(col, row) == self.entry(col, row - 1)
    }

    pub fn leg(&self, col: usize, row: u32) -> u32 {
        self.diagram.height(col) - row
    }

    pub fn arm(&self, col: usize, row: u32) -> u32 {
        let h = self.diagram.height(col);
        let below = (col + 1..=self.n())
            .filter(|&k| self.diagram.height(k) < h && self.diagram.height(k) >= row - 1 && row >= 2)
            .count();
        let left = (1..col).filter(|&k| self.diagram.height(k) == h && !self.restricted(k, row)).count();
        (below + left) as u32
    }

    pub fn maj(&self) -> u32 {
        self.boxes()
            .filter(|&(c, r)| self.entry(c, r - 1) < self.entry(c, r))
            .map(|(c, r)| self.leg(c, r) + 1)
            .sum()
    }

    fn non_inversion(&self, x: (usize, u32), y: (usize, u32)) -> bool {
        let a = self.entry(x.0, x.1);
        let b = self.entry(x.0, x.1 - 1);
        let c = self.entry(y.0, y.1);
        (c < b && b < a) || (b < a && a < c) || (a < c && c < b)
    }

    /// Type A triples: `y` in the row of `d(x)`, in another column of the same height, whose
    /// upper neighbour is unrestricted and smaller than `φ(x)`.
    pub fn coinv_a(&self) -> u32 {
        let mut k = 0;
        for (i, j) in self.boxes().filter(|&(_, j)| j >= 2) {
            for c in (1..=self.n()).filter(|&c| c != i && self.diagram.height(c) == self.diagram.height(i)) {
                let above = self.entry(c, j);
                if above != self.entry(c, j - 1) && self.entry(i, j) > above && self.non_inversion((i, j), (c, j - 1)) {
                    k += 1;
                }
            }
        }
        k
    }

    /// Type B triples: `y` right of `d(x)` in the same row, in a shorter column.
    pub fn coinv_b(&self) -> u32 {
        let mut k = 0;
        for (i, j) in self.boxes().filter(|&(_, j)| j >= 2) {
            for c in (i + 1..=self.n()).filter(|&c| self.diagram.height(c) < self.diagram.height(i)) {
                if self.diagram.height(c) >= j - 1 && self.non_inversion((i, j), (c, j - 1)) {
                    k += 1;
                }
            }
        }
        k
    }

    pub fn coinv(&self) -> u32 {
        self.coinv_a() + self.coinv_b()
    }

    pub fn weight(&self) -> QTRational {
        let mut num = QTPoly::qt(self.maj(), self.coinv());
        let mut den = Vec::new();
        for (c, r) in self.boxes().filter(|&(c, r)| !self.restricted(c, r)) {
            num = &num * &QTPoly::one_minus(0, 1);
            den.push(Factor::new(self.leg(c, r) + 1, self.arm(c, r) + 1).expect("q exponent is positive"));
        }
        QTRational::new(num, (0, 0), den)
    }

    pub fn x_monomial(&self) -> XMonomial {
        let mut e = vec![0; self.n()];
        for (c, r) in self.boxes() {
            e[self.entry(c, r) - 1] += 1;
        }
        e
    }

    pub fn to_json(&self) -> TableauJson {
        TableauJson {
            lambda: self.diagram.heights.clone(),
            basement: self.diagram.basement.clone(),
            fill: self.boxes().map(|(c, r)| (c, r, self.entry(c, r))).collect(),
        }
    }

    /// Rows top first, basement last.
    pub fn ascii(&self) -> String {
        let top = self.diagram.heights.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        for r in (0..=top).rev() {
            for c in 1..=self.n() {
                if r <= self.diagram.height(c) {
                    out.push_str(&format!("{:>3}", self.entry(c, r)));
                } else {
                    out.push_str("   ");
                }
            }
            out.push('\n');
            if r == 1 {
                out.push_str(&"---".repeat(self.n()));
                out.push('\n');
            }
        }
        out
    }
}

impl fmt::Display for QueueTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ascii())
    }
}

/// `{"lambda", "basement", "fill": [[col, row, value]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub lambda: Vec<u32>,
    pub basement: Vec<usize>,
    pub fill: Vec<(usize, u32, usize)>,
}

/// All nonattacking fillings, boxes filled row by row from the bottom, left to right.
pub fn enumerate_qt(diagram: &AugmentedDiagram) -> Vec<QueueTableau> {
    let n = diagram.n();
    let order: Vec<(usize, u32)> = {
        let top = diagram.heights.iter().copied().max().unwrap_or(0);
        (1..=top).flat_map(|r| (1..=n).filter(move |&c| diagram.height(c) >= r).map(move |c| (c, r))).collect()
    };
    let mut t = QueueTableau {
        diagram: diagram.clone(),
        fill: diagram.heights.iter().map(|&h| vec![0; h as usize]).collect(),
    };
    let mut out = Vec::new();
    fill_from(&mut t, &order, 0, &mut out);
    out.sort_by(|a, b| a.fill.cmp(&b.fill));
    out
}

fn fill_from(t: &mut QueueTableau, order: &[(usize, u32)], k: usize, out: &mut Vec<QueueTableau>) {
    if k == order.len() {
        out.push(t.clone());
        return;
    }
    let (i, j) = order[k];
    let n = t.n();
    'value: for v in 1..=n {
        // Earlier boxes: the row below (basement included) and the left part of this row.
        for c in 1..=n {
            if j >= 1 && t.diagram.attacking((i, j), (c, j - 1)) && t.entry(c, j - 1) == v {
                continue 'value;
            }
            if c < i && t.diagram.height(c) >= j && t.entry(c, j) == v {
                continue 'value;
            }
        }
        t.fill[i - 1][j as usize - 1] = v;
        fill_from(t, order, k + 1, out);
    }
    t.fill[i - 1][j as usize - 1] = 0;
}

/// `Σ_T wt(T) x^T`.
pub fn tableaux_polynomial(diagram: &AugmentedDiagram) -> XPolynomial {
    XPolynomial::from_terms(diagram.n(), enumerate_qt(diagram).iter().map(|t| (t.x_monomial(), t.weight())))
}

/// The tableau whose column with basement entry `i_1` lists the columns of the chain of
/// linked balls starting at row 1, column `i_1`, bottom to top.
pub fn tab_bijection(q: &MultilineQueue) -> QueueTableau {
    let mu = q.type_();
    let diagram = AugmentedDiagram::for_type(&mu);
    let n = q.n();
    // below[r][c]: column of the ball in row r+1 paired down onto (r, c).
    let l = q.system().height() as usize;
    let mut above = vec![vec![None; n]; l];
    for r in 2..=l {
        for c in 0..n {
            if let Some(p) = q.matching()[r - 1][c] {
                above[r - 2][p] = Some(c);
            }
        }
    }
    let mut fill: Vec<Vec<usize>> = diagram.heights.iter().map(|&h| vec![0; h as usize]).collect();
    for (col, &b) in diagram.basement.iter().enumerate() {
        let mut c = b - 1;
        for r in 0..diagram.heights[col] as usize {
            fill[col][r] = c + 1;
            if r + 1 < diagram.heights[col] as usize {
                c = above[r][c].expect("chain reaches the label's row");
            }
        }
    }
    QueueTableau::new(diagram, fill).expect("shape follows the type")
}
