//! Exact rank computation over the rationals.
//!
//! Ranks are computed by fraction-free (Bareiss) Gaussian elimination:
//! each row is first scaled to integers by its denominator lcm (row
//! scaling does not change rank), then eliminated with the two-step
//! cross-multiplication rule whose divisions are exact by construction.
//! No floating point, no pivots lost to rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rat;

/// Rank of a matrix given as rows of exact rationals. Empty matrices and
/// matrices with empty rows have rank 0.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let nr = rows.len();
    let nc = rows.first().map(Vec::len).unwrap_or(0);
    if nr == 0 || nc == 0 {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..nc {
        let Some(pivot) = (rank..nr).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nr {
            for c in col + 1..nc {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nr {
            break;
        }
    }
    rank
}

fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        if !x.is_zero() {
            lcm = lcm.lcm(x.denom());
        }
    }
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Nullity (kernel dimension) of the matrix acting on column vectors.
pub fn nullity(rows: &[Vec<Rat>]) -> usize {
    let nc = rows.first().map(Vec::len).unwrap_or(0);
    nc - rank(rows)
}

/// `a * b` for rational matrices (rows x cols), used by small consistency
/// checks in tests and validation.
pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map(Vec::len).unwrap_or(0);
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        assert_eq!(a[i].len(), k, "inner dimensions must agree");
        for (l, brow) in b.iter().enumerate() {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !brow[j].is_zero() {
                    let prod = &a[i][l] * &brow[j];
                    out[i][j] += prod;
                }
            }
        }
    }
    out
}

/// `a - b` for rational matrices of equal shape.
pub fn mat_sub(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

/// True if every entry is zero.
pub fn is_zero_matrix(a: &[Vec<Rat>]) -> bool {
    a.iter().all(|r| r.iter().all(Rat::is_zero))
}
