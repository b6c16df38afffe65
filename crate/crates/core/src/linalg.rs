//! Exact rank of sparse rational vectors by fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::fock::{FockState, FockVector};

/// Rank of an integer matrix by Bareiss elimination. Rows may be modified.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Scales a rational row by the lcm of its denominators.
fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Rank of a dense rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    bareiss_rank(rows.iter().map(|r| clear_denominators(r)).collect())
}

/// Rank of Fock vectors; columns are the states that occur.
pub fn rank(vectors: &[FockVector]) -> usize {
    let mut columns: BTreeMap<&FockState, usize> = BTreeMap::new();
    for v in vectors {
        for s in v.terms().keys() {
            let next = columns.len();
            columns.entry(s).or_insert(next);
        }
    }
    let rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (s, c) in v.terms() {
                row[columns[s]] = c.to_big();
            }
            row
        })
        .collect();
    rational_rank(&rows)
}
