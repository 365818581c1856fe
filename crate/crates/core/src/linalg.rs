//! Rank by Gaussian elimination, exactly over `Q` and over `F_p`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{inv_mod, mul_mod};

/// Rank of a matrix over `F_p`; entries must be reduced mod `p`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = (*v + p - mul_mod(factor, pv, p)) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact rank over the rationals.
pub fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &factor * pv;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
