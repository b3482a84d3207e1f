//! Dense polynomials over Z, used where rational normalization would dominate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rat, UniPoly};

type ZPoly = Vec<BigInt>;

fn trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub(a: ZPoly, b: &[BigInt]) -> ZPoly {
    let mut a = a;
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    trim(a)
}

/// `a / b` when the quotient lies in Z[x].
fn exact_div(a: ZPoly, b: &[BigInt]) -> ZPoly {
    if a.is_empty() {
        return a;
    }
    let db = b.len() - 1;
    let lead = b.last().expect("nonzero divisor");
    let mut r = a;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let (c, rem) = r[top].div_rem(lead);
        debug_assert!(rem.is_zero(), "inexact division");
        let shift = top - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    debug_assert!(r.is_empty(), "inexact division");
    trim(q)
}

/// Clears the denominators of a row; returns the integer row and the factor applied.
fn integer_row(row: &[UniPoly]) -> (Vec<ZPoly>, BigInt) {
    let lcm = row
        .iter()
        .flat_map(|p| p.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let out = row
        .iter()
        .map(|p| p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect())
        .collect();
    (out, lcm)
}

/// Fraction-free elimination over Z[x].
pub(crate) fn det(rows: &[Vec<UniPoly>]) -> UniPoly {
    let n = rows.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<ZPoly>> = rows
        .iter()
        .map(|r| {
            let (z, s) = integer_row(r);
            scale *= s;
            z
        })
        .collect();
    let mut negate = false;
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n - 1 {
        if a[k][k].is_empty() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_empty()) else {
                return UniPoly::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = sub(mul(&a[i][j], &a[k][k]), &mul(&a[i][k], &a[k][j]));
                a[i][j] = exact_div(t, &prev);
            }
            a[i][k] = Vec::new();
        }
        prev = a[k][k].clone();
    }
    let d = UniPoly::new(a[n - 1][n - 1].iter().map(|c| Rat::new(c.clone(), scale.clone())).collect());
    if negate {
        -d
    } else {
        d
    }
}
