use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{pow_rat, QTPoly, QtExp};
use super::ratfn::RatFn;
use super::{BigRat, RingError};

/// A denominator factor `1 - q^a t^b` with `(a, b) != (0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub q: u32,
    pub t: u32,
}

impl Factor {
    pub fn new(q: u32, t: u32) -> Result<Self, RingError> {
        if (q, t) == (0, 0) {
            return Err(RingError::DegenerateFactor);
        }
        Ok(Factor { q, t })
    }

    pub fn poly(&self) -> QTPoly {
        QTPoly::one_minus(self.q, self.t)
    }
}

/// `num / (q^a t^b * prod (1 - q^c t^d))`.
///
/// The factor list is sorted. After canonicalisation no factor divides `num`
/// and `num` has no common monomial with the monomial denominator.
#[derive(Clone, Debug, Default)]
pub struct QTRational {
    num: QTPoly,
    mono: QtExp,
    den: Vec<Factor>,
}

fn multiset_max(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => {
                    out.push(*x);
                    i += 1;
                    j += 1;
                }
                Ordering::Less => {
                    out.push(*x);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(*y);
                    j += 1;
                }
            },
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// `big \ small` as multisets; `small` must be contained in `big`.
fn multiset_diff(big: &[Factor], small: &[Factor]) -> Vec<Factor> {
    let mut out = Vec::new();
    let mut j = 0;
    for f in big {
        if j < small.len() && small[j] == *f {
            j += 1;
        } else {
            out.push(*f);
        }
    }
    debug_assert_eq!(j, small.len());
    out
}

fn product(fs: &[Factor]) -> QTPoly {
    fs.iter().fold(QTPoly::one(), |acc, f| &acc * &f.poly())
}

impl QTRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(QTPoly::one())
    }

    pub fn from_poly(num: QTPoly) -> Self {
        QTRational { num, mono: (0, 0), den: Vec::new() }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(QTPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRat::from_integer(c.into()))
    }

    /// `q^a t^b`.
    pub fn qt(a: u32, b: u32) -> Self {
        Self::from_poly(QTPoly::qt(a, b))
    }

    /// Builds and canonicalises `num / (q^mono * prod den)`.
    pub fn new(num: QTPoly, mono: QtExp, mut den: Vec<Factor>) -> Self {
        den.sort();
        let mut r = QTRational { num, mono, den };
        r.canonicalize();
        r
    }

    /// `c / (1 - q^a t^b)`.
    pub fn over_factor(num: QTPoly, f: Factor) -> Self {
        Self::new(num, (0, 0), vec![f])
    }

    pub fn numerator(&self) -> &QTPoly {
        &self.num
    }

    pub fn monomial_denominator(&self) -> QtExp {
        self.mono
    }

    pub fn factors(&self) -> &[Factor] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.mono == (0, 0) && self.den.is_empty() && self.num.is_one()
    }

    /// Removes common monomials and every denominator factor dividing the numerator.
    pub fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.mono = (0, 0);
            self.den.clear();
            return;
        }
        let (mq, mt) = self.num.min_exponents();
        let (cq, ct) = (mq.min(self.mono.0), mt.min(self.mono.1));
        if cq > 0 || ct > 0 {
            self.num = self.num.unshift(cq, ct);
            self.mono = (self.mono.0 - cq, self.mono.1 - ct);
        }
        let mut kept = Vec::with_capacity(self.den.len());
        let mut i = 0;
        while i < self.den.len() {
            let f = self.den[i];
            match self.num.div_one_minus(f.q, f.t) {
                Some(quot) => self.num = quot,
                None => kept.push(f),
            }
            i += 1;
        }
        self.den = kept;
    }

    fn scaled_to(&self, mono: QtExp, den: &[Factor]) -> QTPoly {
        let extra = multiset_diff(den, &self.den);
        (&self.num * &product(&extra)).shift(mono.0 - self.mono.0, mono.1 - self.mono.1)
    }

    fn common(a: &Self, b: &Self) -> (QtExp, Vec<Factor>) {
        (
            (a.mono.0.max(b.mono.0), a.mono.1.max(b.mono.1)),
            multiset_max(&a.den, &b.den),
        )
    }

    /// Sum that first merges numerators over identical denominators.
    pub fn sum_grouped<I: IntoIterator<Item = QTRational>>(it: I) -> QTRational {
        let mut groups: HashMap<(QtExp, Vec<Factor>), QTPoly> = HashMap::new();
        for r in it {
            if r.is_zero() {
                continue;
            }
            *groups.entry((r.mono, r.den)).or_default() += &r.num;
        }
        let mut parts: Vec<QTRational> = groups
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .map(|((m, d), n)| QTRational { num: n, mono: m, den: d })
            .collect();
        parts.sort_by(|a, b| (a.mono, &a.den).cmp(&(b.mono, &b.den)));
        let mut acc = QTRational::zero();
        for p in parts {
            acc = &acc + &p;
        }
        acc
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return QTRational::zero();
        }
        QTRational { num: self.num.scale(c), mono: self.mono, den: self.den.clone() }
    }

    /// Multiply by `q^a t^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        let mut r = QTRational { num: self.num.shift(a, b), mono: self.mono, den: self.den.clone() };
        r.canonicalize();
        r
    }

    /// Divide by `q^a t^b`.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        let mut r = QTRational {
            num: self.num.clone(),
            mono: (self.mono.0 + a, self.mono.1 + b),
            den: self.den.clone(),
        };
        r.canonicalize();
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QTRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, q: &BigRat, t: &BigRat) -> Result<BigRat, RingError> {
        let mut den = pow_rat(q, self.mono.0) * pow_rat(t, self.mono.1);
        for f in &self.den {
            den *= BigRat::one() - pow_rat(q, f.q) * pow_rat(t, f.t);
        }
        if den.is_zero() {
            return Err(RingError::Pole);
        }
        Ok(self.num.eval(q, t) / den)
    }

    /// Specialises `q = 1`, returning a rational function of `t`.
    pub fn at_q_one(&self) -> Result<RatFn, RingError> {
        let mut den = RatFn::from_poly(super::poly::UniPoly::one());
        den = den.mul(&RatFn::t_pow(self.mono.1));
        for f in &self.den {
            if f.t == 0 {
                return Err(RingError::Pole);
            }
            den = den.mul(&RatFn::one_minus_t_pow(f.t));
        }
        Ok(RatFn::from_poly(self.num.at_q_one()).div(&den)?)
    }
}

impl PartialEq for QTRational {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (m, d) = Self::common(self, other);
        self.scaled_to(m, &d) == other.scaled_to(m, &d)
    }
}

impl Eq for QTRational {}

impl Add<&QTRational> for &QTRational {
    type Output = QTRational;
    fn add(self, rhs: &QTRational) -> QTRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (m, d) = QTRational::common(self, rhs);
        let num = &self.scaled_to(m, &d) + &rhs.scaled_to(m, &d);
        QTRational::new(num, m, d)
    }
}

impl Neg for &QTRational {
    type Output = QTRational;
    fn neg(self) -> QTRational {
        QTRational { num: -&self.num, mono: self.mono, den: self.den.clone() }
    }
}

impl Sub<&QTRational> for &QTRational {
    type Output = QTRational;
    fn sub(self, rhs: &QTRational) -> QTRational {
        self + &(-rhs)
    }
}

impl Mul<&QTRational> for &QTRational {
    type Output = QTRational;
    fn mul(self, rhs: &QTRational) -> QTRational {
        if self.is_zero() || rhs.is_zero() {
            return QTRational::zero();
        }
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        QTRational::new(
            &self.num * &rhs.num,
            (self.mono.0 + rhs.mono.0, self.mono.1 + rhs.mono.1),
            den,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QTRational> for QTRational {
            type Output = QTRational;
            fn $m(self, rhs: QTRational) -> QTRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QTRational {
    type Output = QTRational;
    fn neg(self) -> QTRational {
        -&self
    }
}

impl std::iter::Sum for QTRational {
    fn sum<I: Iterator<Item = QTRational>>(iter: I) -> Self {
        QTRational::sum_grouped(iter)
    }
}

impl From<QTPoly> for QTRational {
    fn from(p: QTPoly) -> Self {
        QTRational::from_poly(p)
    }
}

impl fmt::Display for QTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut den = Vec::new();
        match self.mono {
            (0, 0) => {}
            (a, b) => den.push(QTPoly::qt(a, b).to_string()),
        }
        for fac in &self.den {
            den.push(format!("({})", fac.poly()));
        }
        if den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        write!(f, "{num}/({})", den.join("*"))
    }
}
