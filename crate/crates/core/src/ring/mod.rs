//! Exact coefficient arithmetic: rationals, polynomials in `q, t`, rational
//! functions with cyclotomic-type denominators, and polynomials in `x_1..x_n`.

mod poly;
mod ratfn;
mod rational;
mod xpoly;

pub use poly::{QTPoly, QtExp, UniPoly};
pub use ratfn::RatFn;
pub use rational::{Factor, QTRational};
pub use xpoly::{PolyJson, TermJson, XMonomial, XPolynomial};

pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("polynomial is not divisible by the requested factor")]
    NotDivisible,
    #[error("evaluation hits a pole")]
    Pole,
    #[error("denominator factor 1 - q^0 t^0 vanishes identically")]
    DegenerateFactor,
    #[error("cannot parse: {0}")]
    Parse(String),
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<BigRat, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(format!("rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: num_bigint::BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: num_bigint::BigInt = b.trim().parse().map_err(|_| bad())?;
            if num_traits::Zero::is_zero(&b) {
                return Err(bad());
            }
            Ok(BigRat::new(a, b))
        }
        None => Ok(BigRat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}
