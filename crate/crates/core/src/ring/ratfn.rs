use std::fmt;

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::{BigRat, RingError};

/// Element of `Q(t)`: reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        RatFn { num: UniPoly::constant(c), den: UniPoly::one() }
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn t_pow(k: u32) -> Self {
        let mut c = vec![BigRat::zero(); k as usize + 1];
        c[k as usize] = BigRat::one();
        Self::from_poly(UniPoly::from_coeffs(c))
    }

    /// `1 - t^k`.
    pub fn one_minus_t_pow(k: u32) -> Self {
        Self::one().sub(&Self::t_pow(k))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFn { num: p, den: UniPoly::one() }
    }

    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::Pole);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.lead().expect("nonzero").recip();
        Ok(RatFn { num: n.scale(&l), den: d.scale(&l) })
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("product of nonzero denominators")
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn, RingError> {
        if o.is_zero() {
            return Err(RingError::Pole);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn eval(&self, t: &BigRat) -> Result<BigRat, RingError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(RingError::Pole);
        }
        Ok(self.num.eval(t) / d)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
