//! Dense exact Gaussian elimination: rank, kernel bases, determinant signs.
//!
//! Pivot order is fixed (leftmost column, topmost row), so every output is
//! deterministic for a given input ordering.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use super::{HVector, Rat, Sign};
use crate::error::Error;
use crate::Result;

/// Row-reduces `rows` in place over the first `width` columns.
/// Returns the list of pivot columns.
fn row_echelon(rows: &mut [Vec<Rat>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in col..width {
            let v = &rows[r][c] * &inv;
            rows[r][c] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..width {
                    let v = &rows[i][c] - &factor * &rows[r][c];
                    rows[i][c] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn to_rows(vectors: &[HVector], width: usize) -> Result<Vec<Vec<Rat>>> {
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: v.len(),
            });
        }
        rows.push(v.coords().to_vec());
    }
    Ok(rows)
}

/// Rank of the set of vectors, all of length `width` (taken from the first
/// vector when present).
pub(crate) fn rank(vectors: &[HVector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let width = vectors[0].len();
    let mut rows = to_rows(vectors, width)?;
    Ok(row_echelon(&mut rows, width).len())
}

/// Basis of the solution space of `rows . x = 0` in R^width, via the standard
/// free-variable parameterization of the reduced echelon form. The basis
/// order follows the free columns left to right.
pub(crate) fn kernel_basis(rows_in: &[HVector], width: usize) -> Result<Vec<HVector>> {
    let mut rows = to_rows(rows_in, width)?;
    let pivots = row_echelon(&mut rows, width);
    let is_pivot = |c: usize| pivots.contains(&c);
    let mut basis = Vec::new();
    for free in 0..width {
        if is_pivot(free) {
            continue;
        }
        let mut v = alloc::vec![Rat::zero(); width];
        v[free] = Rat::from_integer(1.into());
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(HVector::new(v));
    }
    Ok(basis)
}

/// Exact sign of the determinant of square `vectors` (rows), by rational
/// elimination with row swaps tracked.
pub fn det_sign(vectors: &[HVector]) -> Sign {
    let n = vectors.len();
    let mut rows: Vec<Vec<Rat>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let mut sign: Sign = 1;
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return 0;
        };
        if p != col {
            rows.swap(p, col);
            sign = -sign;
        }
        if rows[col][col].is_negative() {
            sign = -sign;
        }
        let pivot = rows[col][col].clone();
        for i in col + 1..n {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            for c in col..n {
                let v = &rows[i][c] - &factor * &rows[col][c];
                rows[i][c] = v;
            }
        }
    }
    sign
}

/// Solves `rows . x = rhs` (each row of length `width`). Returns None when
/// inconsistent; free variables are set to zero, so the particular solution
/// is deterministic.
pub fn solve(rows_in: &[HVector], rhs: &[Rat], width: usize) -> Result<Option<Vec<Rat>>> {
    if rows_in.len() != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: rows_in.len(),
            got: rhs.len(),
        });
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(rows_in.len());
    for (v, b) in rows_in.iter().zip(rhs) {
        if v.len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: v.len(),
            });
        }
        let mut row = v.coords().to_vec();
        row.push(b.clone());
        rows.push(row);
    }
    let pivots = row_echelon(&mut rows, width + 1);
    // A pivot in the augmented column marks an inconsistent system.
    if pivots.contains(&width) {
        return Ok(None);
    }
    let mut x = alloc::vec![Rat::zero(); width];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][width].clone();
    }
    Ok(Some(x))
}
