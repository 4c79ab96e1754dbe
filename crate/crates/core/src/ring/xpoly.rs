use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{pow_rat, QTPoly};
use super::rational::{Factor, QTRational};
use super::{parse_rat, BigRat, RingError};

/// Exponent vector of a monomial in `x_1..x_n`.
pub type XMonomial = Vec<u32>;

/// Polynomial in `x_1..x_n` with `QTRational` coefficients, keyed in lexicographic monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPolynomial {
    n: usize,
    terms: BTreeMap<XMonomial, QTRational>,
}

impl XPolynomial {
    pub fn zero(n: usize) -> Self {
        XPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: QTRational) -> Self {
        Self::term(vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, QTRational::one())
    }

    pub fn term(exps: XMonomial, c: QTRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::term(e, QTRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&XMonomial, &QTRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> QTRational {
        self.terms.get(e).cloned().unwrap_or_else(QTRational::zero)
    }

    pub fn add_term(&mut self, e: XMonomial, c: QTRational) {
        assert_eq!(e.len(), self.n, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Builds from terms, merging numerators over equal denominators before normalising.
    pub fn from_terms<I: IntoIterator<Item = (XMonomial, QTRational)>>(n: usize, it: I) -> Self {
        let mut buckets: BTreeMap<XMonomial, Vec<QTRational>> = BTreeMap::new();
        for (e, c) in it {
            assert_eq!(e.len(), n, "monomial arity");
            buckets.entry(e).or_default().push(c);
        }
        let mut p = Self::zero(n);
        for (e, cs) in buckets {
            let c = QTRational::sum_grouped(cs);
            if !c.is_zero() {
                p.terms.insert(e, c);
            }
        }
        p
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &QTRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        XPolynomial { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&QTRational) -> QTRational) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Multiply by `x^shift`.
    pub fn mul_monomial(&self, shift: &[u32]) -> Self {
        XPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exchange `x_{i+1}` and `x_{i+2}` (zero-based `i`).
    pub fn swap_vars(&self, i: usize) -> Self {
        assert!(i + 1 < self.n, "swap index out of range");
        XPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, i + 1);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Apply an arbitrary permutation of variables: `x_j` goes to `x_{perm[j]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        XPolynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut out = vec![0; self.n];
                    for (j, &k) in perm.iter().enumerate() {
                        out[k] = e[j];
                    }
                    (out, c.clone())
                })
                .collect(),
        }
    }

    /// `(f - s_i f) / (x_i - x_{i+1})`, computed termwise; always exact.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i + 1 < self.n, "index out of range");
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[i + 1]);
            if a == b {
                continue;
            }
            // (u^a v^b - u^b v^a)/(u - v) = sign * u^m v^m * sum_k u^k v^(d-1-k)
            let (lo, d, c) = if a > b { (b, a - b, c.clone()) } else { (a, b - a, -c) };
            for k in 0..d {
                let mut m = e.clone();
                m[i] = lo + k;
                m[i + 1] = lo + d - 1 - k;
                out.push((m, c.clone()));
            }
        }
        Self::from_terms(self.n, out)
    }

    /// Exact division by `x_{i+1} - x_{i+2}` (zero-based `i`).
    pub fn divide_by_xdiff(&self, i: usize) -> Result<Self, RingError> {
        assert!(i + 1 < self.n, "index out of range");
        let key = |e: &XMonomial| {
            let mut k = Vec::with_capacity(e.len() + 1);
            k.push(e[i]);
            k.extend_from_slice(e);
            k
        };
        let mut rem: BTreeMap<Vec<u32>, QTRational> =
            self.terms.iter().map(|(e, c)| (key(e), c.clone())).collect();
        let mut quot = XPolynomial::zero(self.n);
        while let Some((k, c)) = rem.pop_last() {
            let mut e = k[1..].to_vec();
            if e[i] == 0 {
                return Err(RingError::NotDivisible);
            }
            e[i] -= 1;
            quot.add_term(e.clone(), c.clone());
            e[i + 1] += 1;
            let k2 = key(&e);
            let s = rem.get(&k2).map(|x| x + &c).unwrap_or(c);
            if s.is_zero() {
                rem.remove(&k2);
            } else {
                rem.insert(k2, s);
            }
        }
        Ok(quot)
    }

    /// Substitute rational values for every `x_i`.
    pub fn eval_x(&self, xs: &[BigRat]) -> QTRational {
        assert_eq!(xs.len(), self.n, "point arity");
        QTRational::sum_grouped(self.terms.iter().map(|(e, c)| {
            let m = e.iter().zip(xs).fold(BigRat::one(), |acc, (k, x)| acc * pow_rat(x, *k));
            c.scale(&m)
        }))
    }

    /// Full numeric evaluation.
    pub fn eval(&self, xs: &[BigRat], q: &BigRat, t: &BigRat) -> Result<BigRat, RingError> {
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let m = e.iter().zip(xs).fold(BigRat::one(), |acc, (k, x)| acc * pow_rat(x, *k));
            acc += c.eval(q, t)? * m;
        }
        Ok(acc)
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&XMonomial, &QTRational)> {
        self.terms.last_key_value()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| self.swap_vars(i) == *self)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (mq, mt) = c.monomial_denominator();
                    TermJson {
                        x: e.clone(),
                        num: c
                            .numerator()
                            .graded_terms()
                            .into_iter()
                            .map(|((a, b), r)| {
                                (a as i64 - mq as i64, b as i64 - mt as i64, r.to_string())
                            })
                            .collect(),
                        den: c.factors().iter().map(|f| (f.q, f.t)).collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, RingError> {
        let mut p = XPolynomial::zero(j.n);
        for term in &j.terms {
            if term.x.len() != j.n {
                return Err(RingError::Parse(format!("monomial {:?} has wrong arity", term.x)));
            }
            let mq = term.num.iter().map(|(a, _, _)| (-a).max(0)).max().unwrap_or(0);
            let mt = term.num.iter().map(|(_, b, _)| (-b).max(0)).max().unwrap_or(0);
            let mut num = QTPoly::zero();
            for (a, b, r) in &term.num {
                num.add_term(((a + mq) as u32, (b + mt) as u32), parse_rat(r)?);
            }
            let den = term.den.iter().map(|&(a, b)| Factor::new(a, b)).collect::<Result<_, _>>()?;
            p.add_term(term.x.clone(), QTRational::new(num, (mq as u32, mt as u32), den));
        }
        Ok(p)
    }
}

/// JSON form: `{"n", "terms": [{"x", "num": [[dq, dt, "rat"]], "den": [[a, b]]}]}`.
/// Negative numerator exponents encode a monomial denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub x: Vec<u32>,
    pub num: Vec<(i64, i64, String)>,
    pub den: Vec<(u32, u32)>,
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, true) => "1".to_string(),
                    (true, false) => format!("({c})"),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({c})*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&XPolynomial> for &XPolynomial {
    type Output = XPolynomial;
    fn add(self, rhs: &XPolynomial) -> XPolynomial {
        assert_eq!(self.n, rhs.n, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &XPolynomial {
    type Output = XPolynomial;
    fn neg(self) -> XPolynomial {
        XPolynomial { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub<&XPolynomial> for &XPolynomial {
    type Output = XPolynomial;
    fn sub(self, rhs: &XPolynomial) -> XPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&XPolynomial> for &XPolynomial {
    type Output = XPolynomial;
    fn mul(self, rhs: &XPolynomial) -> XPolynomial {
        assert_eq!(self.n, rhs.n, "arity mismatch");
        let mut out = Vec::with_capacity(self.len() * rhs.len());
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.push((a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d));
            }
        }
        XPolynomial::from_terms(self.n, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<XPolynomial> for XPolynomial {
            type Output = XPolynomial;
            fn $m(self, rhs: XPolynomial) -> XPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
