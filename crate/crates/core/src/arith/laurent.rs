use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rat, UniPoly};

/// Laurent polynomial in `x` over Q, stored sparsely without zero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(Rat::one(), 0)
    }

    pub fn monomial(c: Rat, exp: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: Rat) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    /// `x^k`
    pub fn x_pow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(Rat::one(), k)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    /// `x^shift · p(x)`
    pub fn from_poly(p: &UniPoly, shift: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            p.coeffs().iter().enumerate().map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    /// Interprets `p` as a polynomial in `1/x`.
    pub fn from_poly_inverse(p: &UniPoly) -> LaurentPoly {
        LaurentPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| (-(i as i64), c.clone())))
    }

    fn add_term(&mut self, exp: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Returns `(c, k)` when the polynomial is a single term `c·x^k`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    pub fn is_inverse_polynomial(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect() }
    }

    /// Polynomial in `x`; panics when a negative exponent is present.
    pub fn to_poly(&self) -> UniPoly {
        assert!(self.is_polynomial(), "negative exponent in {self}");
        let n = self.max_exp().map_or(0, |e| e as usize + 1);
        let mut coeffs = vec![Rat::zero(); n];
        for (e, c) in &self.terms {
            coeffs[*e as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Polynomial in `y = 1/x`; panics when a positive exponent is present.
    pub fn to_inverse_poly(&self) -> UniPoly {
        assert!(self.is_inverse_polynomial(), "positive exponent in {self}");
        let n = self.min_exp().map_or(0, |e| (-e) as usize + 1);
        let mut coeffs = vec![Rat::zero(); n];
        for (e, c) in &self.terms {
            coeffs[(-e) as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Splits `self = x^k · p(x)` with `p(0) != 0`.
    pub fn normalize(&self) -> (i64, UniPoly) {
        match self.min_exp() {
            None => (0, UniPoly::zero()),
            Some(k) => (k, self.shift(-k).to_poly()),
        }
    }

    /// Exact quotient by a unit `c·x^k`.
    pub fn div_monomial(&self, c: &Rat, k: i64) -> LaurentPoly {
        self.shift(-k).scale(&c.recip())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("({c})x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire format: (minExponent, coefficient array).
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (k, p) = self.normalize();
        (k, p.coeffs().to_vec()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<LaurentPoly, D::Error> {
        let (k, coeffs) = <(i64, Vec<Rat>)>::deserialize(deserializer)?;
        Ok(LaurentPoly::from_poly(&UniPoly::new(coeffs), k))
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term(ea + eb, &(a * b));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_and_wire() {
        let p = LaurentPoly::from_terms([(-2, Rat::from(3)), (1, Rat::from(-1))]);
        assert_eq!(p.min_exp(), Some(-2));
        assert_eq!(p.max_exp(), Some(1));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[-2,["3/1","0/1","0/1","-1/1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = LaurentPoly::x_pow(-1);
        let s = &a - &a;
        assert!(s.is_zero());
        assert_eq!(s.min_exp(), None);
    }

    #[test]
    fn inverse_poly_round_trip() {
        let y = UniPoly::from_ints(&[1, 0, 2]);
        let l = LaurentPoly::from_poly_inverse(&y);
        assert_eq!(l.max_exp(), Some(0));
        assert_eq!(l.min_exp(), Some(-2));
        assert_eq!(l.to_inverse_poly(), y);
    }
}
