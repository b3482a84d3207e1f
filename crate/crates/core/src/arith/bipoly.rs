use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{bareiss_det, Rat, UniPoly};

/// Sparse polynomial in a base variable `x` and a fiber variable `z` over Q.
///
/// Keys are `(base exponent, fiber exponent)`; zero terms are never stored.
/// Serializes as the array of fiber coefficients, each an ascending coefficient array.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rat>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Rat)>) -> BiPoly {
        let mut out = BiPoly::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    /// `Σ coeffs[j](x) · z^j`
    pub fn from_fiber_coeffs(coeffs: &[UniPoly]) -> BiPoly {
        let mut out = BiPoly::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term((i, j), c);
            }
        }
        out
    }

    /// A polynomial in the base variable only.
    pub fn from_base(p: &UniPoly) -> BiPoly {
        BiPoly::from_fiber_coeffs(std::slice::from_ref(p))
    }

    fn add_term(&mut self, key: (usize, usize), c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, base: usize, fiber: usize) -> Rat {
        self.terms.get(&(base, fiber)).cloned().unwrap_or_default()
    }

    pub fn deg_base(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_fiber(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Coefficients in `Q[x]` of the powers of the fiber variable.
    pub fn fiber_coeffs(&self) -> Vec<UniPoly> {
        let Some(d) = self.deg_fiber() else {
            return Vec::new();
        };
        let mut raw: Vec<Vec<Rat>> = vec![Vec::new(); d + 1];
        for ((i, j), c) in &self.terms {
            let row = &mut raw[*j];
            if row.len() <= *i {
                row.resize(*i + 1, Rat::zero());
            }
            row[*i] = c.clone();
        }
        raw.into_iter().map(UniPoly::new).collect()
    }

    /// Leading coefficient with respect to the fiber variable.
    pub fn fiber_lc(&self) -> UniPoly {
        self.fiber_coeffs().pop().unwrap_or_default()
    }

    pub fn d_base(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * Rat::from(*i as i64))),
        )
    }

    pub fn d_fiber(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * Rat::from(*j as i64))),
        )
    }

    /// Specializes the base variable, leaving a polynomial in the fiber variable.
    pub fn eval_base(&self, x0: &Rat) -> UniPoly {
        let coeffs: Vec<Rat> = self.fiber_coeffs().iter().map(|p| p.eval(x0)).collect();
        UniPoly::new(coeffs)
    }

    /// Specializes the fiber variable, leaving a polynomial in the base variable.
    pub fn eval_fiber(&self, z0: &Rat) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (j, p) in self.fiber_coeffs().iter().enumerate() {
            acc = &acc + &p.scale(&z0.pow(j as u32));
        }
        acc
    }

    pub fn eval(&self, x0: &Rat, z0: &Rat) -> Rat {
        self.eval_base(x0).eval(z0)
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect() }
    }

    /// `z^n · F(x, 1/z)` for `n >= deg_z F`.
    pub fn fiber_reversed(&self, n: usize) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|((i, j), c)| {
            assert!(*j <= n);
            ((*i, n - j), c.clone())
        }))
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }
}

/// Sylvester resultant of `f` and `g` with respect to the fiber variable.
pub fn resultant_fiber(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let fc = f.fiber_coeffs();
    let gc = g.fiber_coeffs();
    if fc.is_empty() || gc.is_empty() {
        return UniPoly::zero();
    }
    let a = fc.len() - 1;
    let b = gc.len() - 1;
    if a == 0 {
        return fc[0].pow(b as u32);
    }
    if b == 0 {
        return gc[0].pow(a as u32);
    }
    let n = a + b;
    let mut rows = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..b {
        for (k, c) in fc.iter().rev().enumerate() {
            rows[r][r + k] = c.clone();
        }
    }
    for r in 0..a {
        for (k, c) in gc.iter().rev().enumerate() {
            rows[b + r][r + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().rev().map(|((i, j), c)| format!("({c})x^{i}z^{j}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &(a * b));
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&Rat::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_minus(p: &UniPoly) -> BiPoly {
        BiPoly::from_fiber_coeffs(&[-p, UniPoly::one()])
    }

    #[test]
    fn resultant_examples() {
        // (z^2 - x, z) -> x up to sign
        let f = BiPoly::from_fiber_coeffs(&[UniPoly::from_ints(&[0, -1]), UniPoly::zero(), UniPoly::one()]);
        let g = BiPoly::from_fiber_coeffs(&[UniPoly::zero(), UniPoly::one()]);
        let r = resultant_fiber(&f, &g);
        assert!(r == UniPoly::x() || r == -UniPoly::x(), "{r}");

        let h = BiPoly::from_fiber_coeffs(&[UniPoly::from_ints(&[-1]), UniPoly::one()]);
        assert!(resultant_fiber(&h, &h).is_zero());

        let a = UniPoly::from_ints(&[1, 2, 3]);
        let b = UniPoly::from_ints(&[0, -1]);
        let r = resultant_fiber(&z_minus(&a), &z_minus(&b));
        let diff = &a - &b;
        assert!(r == diff || r == -diff);
    }

    #[test]
    fn derivatives_and_evaluation() {
        // x^2 z + 3 z^2
        let f = BiPoly::from_terms([((2, 1), Rat::from(1)), ((0, 2), Rat::from(3))]);
        assert_eq!(f.d_base(), BiPoly::from_terms([((1, 1), Rat::from(2))]));
        assert_eq!(f.d_fiber(), BiPoly::from_terms([((2, 0), Rat::from(1)), ((0, 1), Rat::from(6))]));
        assert_eq!(f.eval(&Rat::from(2), &Rat::from(1)), Rat::from(7));
        assert_eq!(f.eval_fiber(&Rat::from(2)), UniPoly::from_ints(&[12, 0, 2]));
    }
}

impl serde::Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.fiber_coeffs().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<UniPoly>::deserialize(deserializer)?;
        Ok(BiPoly::from_fiber_coeffs(&coeffs))
    }
}
