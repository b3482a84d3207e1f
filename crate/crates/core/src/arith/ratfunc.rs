use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Rat, UniPoly};

/// Element of the rational function field Q(x), kept reduced with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: UniPoly) -> RatFunc {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn from_rat(c: Rat) -> RatFunc {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(UniPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "inverse of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Substitutes `x -> 1/x`.
    pub fn invert_variable(&self) -> RatFunc {
        let n = self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0));
        RatFunc::new(self.num.reversed(n), self.den.reversed(n))
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let x = UniPoly::x();
        let f = RatFunc::new(&x * &UniPoly::from_ints(&[1, 1]), x.scale(&Rat::from(2)));
        assert_eq!(f.num(), &UniPoly::from_ints(&[1, 1]).scale(&Rat::new(1, 2)));
        assert!(f.den().is_one());
    }

    #[test]
    fn field_identities() {
        let a = RatFunc::new(UniPoly::from_ints(&[1, 2]), UniPoly::from_ints(&[0, 0, 1]));
        let b = RatFunc::new(UniPoly::from_ints(&[3]), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.invert_variable().invert_variable(), a);
    }
}
