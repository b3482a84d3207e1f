//! Multi-modular gcd in Q[x]: images modulo word-size primes, Chinese remaindering, and an
//! exact divisibility check at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Rat, UniPoly};

/// Primes below 2^31, descending.
pub(super) fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..(1u64 << 31) - 1).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn is_prime(n: u64) -> bool {
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(super) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let k = top - db + j;
                a[k] = (a[k] + p - c * bj % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd modulo `p`; inputs are nonzero and trimmed.
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().expect("nonzero"), p);
    a.iter().map(|&c| c * inv % p).collect()
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect();
    trim(&mut v);
    v
}

/// Integer multiple of `p` with coprime coefficients.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Monic gcd of two nonzero polynomials.
pub(crate) fn modular_gcd(f: &UniPoly, g: &UniPoly) -> UniPoly {
    let a = primitive_integer(f);
    let b = primitive_integer(g);
    let lead = a.last().expect("nonzero").gcd(b.last().expect("nonzero"));
    let mut best = a.len().min(b.len());
    let mut image: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigInt>> = None;
    for p in primes() {
        let pb = BigInt::from(p);
        if (a.last().unwrap() % &pb).is_zero() || (b.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let gp = gcd_mod(&reduce(&a, p), &reduce(&b, p), p);
        if gp.len() == 1 {
            return UniPoly::one();
        }
        match gp.len().cmp(&best) {
            std::cmp::Ordering::Greater => continue,
            std::cmp::Ordering::Less => {
                best = gp.len();
                image.clear();
                modulus = BigInt::one();
                previous = None;
            }
            std::cmp::Ordering::Equal => {}
        }
        let l = lead.mod_floor(&pb).to_u64().unwrap();
        let gp: Vec<u64> = gp.iter().map(|&c| c * l % p).collect();
        if image.is_empty() {
            image = gp.iter().map(|&c| BigInt::from(c)).collect();
        } else {
            // x ≡ image (mod modulus), x ≡ gp (mod p)
            let m_mod_p = (&modulus % &pb).to_u64().unwrap();
            let inv = inv_mod(m_mod_p, p);
            for (c, &r) in image.iter_mut().zip(&gp) {
                let cur = (&*c % &pb).to_u64().unwrap();
                let t = (r + p - cur) % p * inv % p;
                *c += &modulus * t;
            }
        }
        modulus *= &pb;
        let lifted: Vec<BigInt> = image.iter().map(|c| symmetric(c, &modulus)).collect();
        if previous.as_ref() == Some(&lifted) {
            let content = lifted.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            let cand = UniPoly::new(lifted.iter().map(|c| Rat::from(c / &content)).collect());
            if cand.degree().is_some() && f.rem(&cand).is_zero() && g.rem(&cand).is_zero() {
                return cand.monic();
            }
        }
        previous = Some(lifted);
    }
    unreachable!("infinitely many primes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn agrees_with_euclid() {
        let g = p(&[3, -7, 0, 2]);
        let a = &g * &p(&[1, 5, 9, -4, 1]);
        let b = &g * &p(&[-2, 0, 11, 1]);
        assert_eq!(modular_gcd(&a, &b), g.monic());
        assert_eq!(modular_gcd(&p(&[1, 1]), &p(&[1, 2])), UniPoly::one());
        let big = UniPoly::new(vec![Rat::new(123456789012345i64, 7), Rat::new(-3, 11), Rat::one()]);
        assert_eq!(modular_gcd(&(&big * &a), &(&big * &b)), (&big * &g).monic());
    }
}
