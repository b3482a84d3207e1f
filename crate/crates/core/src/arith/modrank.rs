//! Exact rank of a rational matrix from its ranks modulo word-size primes.
//!
//! `rank_p <= rank` for every prime, and `rank_p < rank` only when `p` divides every nonzero
//! maximal minor. Once the tested primes multiply past the Hadamard bound, one of them has
//! attained the true rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::modgcd::{inv_mod, primes};
use super::Rat;

fn rank_mod(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        let pivot_row: Vec<u64> = a[rank].iter().map(|&c| c * inv % p).collect();
        for r in rank + 1..a.len() {
            let f = a[r][col];
            if f == 0 {
                continue;
            }
            for (x, &y) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        a[rank] = pivot_row;
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Rank over Q.
pub fn rank_q(rows: &[Vec<Rat>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else { return 0 };
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            r.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        })
        .collect();
    let full = rows.len().min(ncols);
    // log2 of the product of the `full` largest row norms
    let mut norms: Vec<f64> = ints
        .iter()
        .map(|r| {
            let bits = r.iter().map(|c| c.bits()).max().unwrap_or(0) as f64;
            bits + 0.5 * (r.len() as f64).log2()
        })
        .collect();
    norms.sort_by(|a, b| b.total_cmp(a));
    let hadamard: f64 = norms.iter().take(full).sum();
    let mut best = 0;
    let mut covered = 0.0;
    for p in primes() {
        best = best.max(rank_mod(&ints, ncols, p));
        covered += (p as f64).log2();
        if best == full || covered > hadamard + 1.0 {
            return best;
        }
    }
    unreachable!("infinitely many primes")
}
