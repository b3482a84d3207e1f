//! Arithmetic in `Q[x]/(g)` for squarefree `g`, treating the quotient as if it were a
//! field and splitting the modulus whenever a zero divisor shows up.

use super::{ArithError, UniPoly};

/// Factorization `modulus = left · right` discovered while inverting a zero divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEvent {
    pub left: UniPoly,
    pub right: UniPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("modulus splits as ({}) · ({})", .0.left, .0.right)]
    Split(SplitEvent),
    #[error("inverse of the zero residue")]
    ZeroInverse,
}

impl From<SplitEvent> for QuotientError {
    fn from(e: SplitEvent) -> Self {
        QuotientError::Split(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCtx {
    modulus: UniPoly,
}

impl QuotientCtx {
    /// The modulus is made monic; it must be nonconstant and squarefree.
    pub fn new(modulus: &UniPoly) -> Result<QuotientCtx, ArithError> {
        if modulus.degree().is_none_or(|d| d == 0) {
            return Err(ArithError::ConstantModulus);
        }
        let modulus = modulus.monic();
        if !modulus.gcd(&modulus.derivative()).is_one() {
            return Err(ArithError::NotSquarefree(modulus.to_string()));
        }
        Ok(QuotientCtx { modulus })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    pub fn is_zero(&self, a: &UniPoly) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    /// Inverse of a residue, or the splitting it exposes.
    pub fn inv(&self, a: &UniPoly) -> Result<UniPoly, QuotientError> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(QuotientError::ZeroInverse);
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.is_one() {
            return Ok(self.reduce(&s));
        }
        let right = self.modulus.exact_div(&g).expect("gcd divides the modulus");
        Err(QuotientError::Split(SplitEvent { left: g, right }))
    }

    /// `Ok(None)` for zero, `Ok(Some(inverse))` for a unit, `Err` on a zero divisor.
    pub fn classify(&self, a: &UniPoly) -> Result<Option<UniPoly>, SplitEvent> {
        match self.inv(a) {
            Ok(inv) => Ok(Some(inv)),
            Err(QuotientError::ZeroInverse) => Ok(None),
            Err(QuotientError::Split(s)) => Err(s),
        }
    }

    /// Monic gcd in `(Q[x]/g)[w]` of polynomials given by ascending coefficient lists.
    pub fn poly_gcd(&self, polys: &[Vec<UniPoly>]) -> Result<Vec<UniPoly>, SplitEvent> {
        let mut acc: Vec<UniPoly> = Vec::new();
        for p in polys {
            let mut a = self.make_monic(p)?;
            let mut b = std::mem::take(&mut acc);
            while !b.is_empty() {
                let r = self.poly_rem(&a, &b);
                a = b;
                b = self.make_monic(&r)?;
            }
            acc = a;
        }
        Ok(acc)
    }

    fn make_monic(&self, p: &[UniPoly]) -> Result<Vec<UniPoly>, SplitEvent> {
        let mut p: Vec<UniPoly> = p.iter().map(|c| self.reduce(c)).collect();
        while let Some(lc) = p.last() {
            match self.classify(lc)? {
                None => {
                    p.pop();
                }
                Some(inv) => {
                    return Ok(p.iter().map(|c| self.mul(c, &inv)).collect());
                }
            }
        }
        Ok(p)
    }

    // `b` must be monic.
    fn poly_rem(&self, a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let mut r: Vec<UniPoly> = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let off = r.len() - db;
            for (j, c) in b[..db].iter().enumerate() {
                r[off + j] = self.sub(&r[off + j], &self.mul(&lead, c));
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        r
    }

    /// Basis of the right kernel of `rows` over `Q[x]/g`, with residues as entries.
    pub fn kernel(&self, rows: &[Vec<UniPoly>], ncols: usize) -> Result<Vec<Vec<UniPoly>>, SplitEvent> {
        let mut a: Vec<Vec<UniPoly>> =
            rows.iter().map(|r| r.iter().map(|c| self.reduce(c)).collect()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let mut found = None;
            for (r, line) in a.iter().enumerate().skip(row) {
                if let Some(inv) = self.classify(&line[col])? {
                    found = Some((r, inv));
                    break;
                }
            }
            let Some((r, inv)) = found else { continue };
            a.swap(row, r);
            let pivot_row: Vec<UniPoly> = a[row].iter().map(|c| self.mul(c, &inv)).collect();
            a[row] = pivot_row.clone();
            for (r2, line) in a.iter_mut().enumerate() {
                if r2 == row || line[col].is_zero() {
                    continue;
                }
                let factor = line[col].clone();
                for c in col..ncols {
                    if !pivot_row[c].is_zero() {
                        line[c] = self.sub(&line[c], &self.mul(&factor, &pivot_row[c]));
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![UniPoly::zero(); ncols];
            v[free] = UniPoly::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.reduce(&-&a[r][free]);
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

/// Runs `f` over `Q[x]/g`, re-running on both factors whenever a split is reported.
///
/// Returns one result per final factor of `g`; the factors multiply to `g` (made monic).
pub fn split_evaluate<T>(
    modulus: &UniPoly,
    mut f: impl FnMut(&QuotientCtx) -> Result<T, SplitEvent>,
) -> Result<Vec<(UniPoly, T)>, ArithError> {
    let mut pending = vec![modulus.monic()];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        let ctx = QuotientCtx::new(&g)?;
        match f(&ctx) {
            Ok(value) => done.push((g, value)),
            Err(SplitEvent { left, right }) => {
                pending.push(right.monic());
                pending.push(left.monic());
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn inverse_mod_x2_plus_1() {
        let ctx = QuotientCtx::new(&p(&[1, 0, 1])).unwrap();
        assert_eq!(ctx.inv(&UniPoly::x()).unwrap(), p(&[0, -1]));
    }

    #[test]
    fn zero_divisor_splits() {
        let g = &p(&[-1, 1]) * &p(&[-2, 1]);
        let ctx = QuotientCtx::new(&g).unwrap();
        match ctx.inv(&p(&[-1, 1])) {
            Err(QuotientError::Split(SplitEvent { left, right })) => {
                assert_eq!(left, p(&[-1, 1]));
                assert_eq!(right, p(&[-2, 1]));
            }
            other => panic!("expected split, got {other:?}"),
        }
        assert_eq!(ctx.inv(&g), Err(QuotientError::ZeroInverse));
    }

    #[test]
    fn addition_is_reduced() {
        let ctx = QuotientCtx::new(&p(&[1, 0, 1])).unwrap();
        assert_eq!(ctx.add(&p(&[0, 0, 1]), &p(&[2, 1])), p(&[1, 1]));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(QuotientCtx::new(&p(&[0, 0, 1])).is_err());
        assert!(QuotientCtx::new(&p(&[3])).is_err());
    }

    #[test]
    fn gcd_with_dynamic_splitting() {
        // modulus x(x-1); gcd of (w - x) and (w^2 - x): at x=0 both vanish at w=0, at x=1 at w=1.
        let g = p(&[0, -1, 1]);
        let a = vec![-UniPoly::x(), UniPoly::one()];
        let b = vec![-UniPoly::x(), UniPoly::zero(), UniPoly::one()];
        let results = split_evaluate(&g, |ctx| ctx.poly_gcd(&[a.clone(), b.clone()])).unwrap();
        assert_eq!(results.len(), 1);
        assert_eq!(results[0].1.len(), 2);

        // w - 1 and x·w - 1: common root only over x = 1.
        let c = vec![p(&[-1]), UniPoly::one()];
        let d = vec![p(&[-1]), UniPoly::x()];
        let mut results = split_evaluate(&g, |ctx| ctx.poly_gcd(&[c.clone(), d.clone()])).unwrap();
        results.sort_by_key(|(m, _)| m.coeff(0) == Rat::zero());
        let degrees: Vec<(UniPoly, usize)> =
            results.iter().map(|(m, h)| (m.clone(), h.len().saturating_sub(1))).collect();
        assert!(degrees.contains(&(p(&[-1, 1]), 1)));
        assert!(degrees.contains(&(p(&[0, 1]), 0)));
    }

    #[test]
    fn kernel_over_quotient() {
        let ctx = QuotientCtx::new(&p(&[1, 0, 1])).unwrap();
        // [x, 1] has kernel spanned by (1, -x)
        let k = ctx.kernel(&[vec![UniPoly::x(), UniPoly::one()]], 2).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(ctx.is_zero(&(&(&UniPoly::x() * &v[0]) + &v[1])));
    }
}
