use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigRat;

/// Exponent pair `(deg_q, deg_t)`.
pub type QtExp = (u32, u32);

/// Sparse polynomial in `q, t` with rational coefficients. No zero coefficient is ever stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QTPoly {
    terms: BTreeMap<QtExp, BigRat>,
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn int_mod(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(PRIME)).to_u64().unwrap_or(0)
}

/// Image of a rational in `Z/p`; `None` when the denominator vanishes mod p.
fn rat_mod(x: &BigRat) -> Option<u64> {
    let d = int_mod(x.denom());
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_mod(x.numer()), pow_mod(d, PRIME - 2)))
}

impl QTPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(dq: u32, dt: u32, c: BigRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, dt), c);
        }
        QTPoly { terms }
    }

    /// `q^dq t^dt` with coefficient one.
    pub fn qt(dq: u32, dt: u32) -> Self {
        Self::monomial(dq, dt, BigRat::one())
    }

    /// `1 - q^a t^b`.
    pub fn one_minus(a: u32, b: u32) -> Self {
        Self::one() - Self::qt(a, b)
    }

    pub fn from_terms<I: IntoIterator<Item = (QtExp, BigRat)>>(it: I) -> Self {
        let mut p = QTPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&QtExp, &BigRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dq: u32, dt: u32) -> BigRat {
        self.terms.get(&(dq, dt)).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Terms in graded lexicographic order of `(deg_q, deg_t)`.
    pub fn graded_terms(&self) -> Vec<(QtExp, BigRat)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|((a, b), _)| (a + b, *a, *b));
        v
    }

    pub fn add_term(&mut self, e: QtExp, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return QTPoly::zero();
        }
        QTPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: u32, dt: u32) -> Self {
        QTPoly {
            terms: self.terms.iter().map(|((a, b), c)| ((a + dq, b + dt), c.clone())).collect(),
        }
    }

    /// Divide by `q^dq t^dt`; every term must carry at least that power.
    pub fn unshift(&self, dq: u32, dt: u32) -> Self {
        QTPoly {
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| {
                    debug_assert!(*a >= dq && *b >= dt);
                    ((a - dq, b - dt), c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms, `(0,0)` for zero.
    pub fn min_exponents(&self) -> QtExp {
        let mut it = self.terms.keys();
        let Some(&first) = it.next() else { return (0, 0) };
        it.fold(first, |(a, b), &(c, d)| (a.min(c), b.min(d)))
    }

    pub fn max_exponents(&self) -> QtExp {
        self.terms.keys().fold((0, 0), |(a, b), &(c, d)| (a.max(c), b.max(d)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QTPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, q: &BigRat, t: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for ((a, b), c) in &self.terms {
            acc += c * pow_rat(q, *a) * pow_rat(t, *b);
        }
        acc
    }

    /// Value mod `2^61-1` at `q = g^b, t = g^-a`, a zero of `1 - q^a t^b`.
    fn eval_on_factor_zero(&self, a: u32, b: u32, g: u64) -> Option<u64> {
        let order = (PRIME - 1) as i128;
        let mut acc = 0u64;
        for ((i, j), c) in &self.terms {
            let e = (b as i128 * *i as i128 - a as i128 * *j as i128).rem_euclid(order);
            let term = mul_mod(rat_mod(c)?, pow_mod(g, e as u64));
            acc = (acc + term) % PRIME;
        }
        Some(acc)
    }

    /// Exact quotient by `1 - q^a t^b`, or `None` when it does not divide.
    pub fn div_one_minus(&self, a: u32, b: u32) -> Option<QTPoly> {
        assert!((a, b) != (0, 0), "1 - q^0 t^0 is zero");
        if self.is_zero() {
            return Some(QTPoly::zero());
        }
        for g in [3u64, 7] {
            if let Some(v) = self.eval_on_factor_zero(a, b, g) {
                if v != 0 {
                    return None;
                }
            }
        }
        // Lex-leading term of the divisor is -q^a t^b.
        let mut rem = self.terms.clone();
        let mut quot = QTPoly::zero();
        while let Some((&(i, j), _)) = rem.last_key_value() {
            if i < a || j < b {
                return None;
            }
            let c = rem.remove(&(i, j)).expect("present");
            let k = (i - a, j - b);
            quot.add_term(k, -c.clone());
            let slot = rem.entry(k).or_insert_with(BigRat::zero);
            *slot += c;
            if slot.is_zero() {
                rem.remove(&k);
            }
        }
        Some(quot)
    }

    /// Substitutes `q = 1`, giving a polynomial in `t`.
    pub fn at_q_one(&self) -> UniPoly {
        let mut out = BTreeMap::new();
        for ((_, b), c) in &self.terms {
            *out.entry(*b).or_insert_with(BigRat::zero) += c;
        }
        UniPoly::from_map(out)
    }
}

pub(crate) fn pow_rat(x: &BigRat, k: u32) -> BigRat {
    num_traits::pow(x.clone(), k as usize)
}

impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.graded_terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match (a, b) {
                (0, 0) => String::new(),
                _ => {
                    let mut s = Vec::new();
                    if a > 0 {
                        s.push(if a == 1 { "q".to_string() } else { format!("q^{a}") });
                    }
                    if b > 0 {
                        s.push(if b == 1 { "t".to_string() } else { format!("t^{b}") });
                    }
                    s.join("*")
                }
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&QTPoly> for QTPoly {
    fn add_assign(&mut self, rhs: &QTPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&QTPoly> for QTPoly {
    fn sub_assign(&mut self, rhs: &QTPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Mul<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        let mut out = BTreeMap::<QtExp, BigRat>::new();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &rhs.terms {
                *out.entry((a + x, b + y)).or_insert_with(BigRat::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        QTPoly { terms: out }
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QTPoly> for QTPoly {
            type Output = QTPoly;
            fn $m(self, rhs: QTPoly) -> QTPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        -&self
    }
}

/// Dense univariate polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    fn from_map(m: BTreeMap<u32, BigRat>) -> Self {
        let deg = m.keys().next_back().copied().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRat::zero(); deg + 1];
        for (k, c) in m {
            coeffs[k as usize] = c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRat::zero(), BigRat::one()])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRat::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRat) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dl = d.lead().expect("division by zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = QTPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())),
        );
        write!(f, "{p}")
    }
}
