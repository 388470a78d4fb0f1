//! Strict/weak/equality feasibility decided by an exact rational simplex.
//!
//! The only entry point is [`mixed_feasible`]: does some x in R^dim satisfy
//! a.x < 0 for the strict normals, a.x <= 0 for the weak ones, and a.x = 0
//! for the equalities? Equalities are eliminated up front by restricting to
//! their kernel, and strictness is decided homogeneously by maximizing a
//! margin t subject to a.x + t <= 0 and t <= 1. The system is strictly
//! feasible iff the optimum is positive, in which case the optimal vertex
//! doubles as an exact witness.
//!
//! Pivoting uses Bland's rule on a fixed construction order, so the witness
//! is deterministic; every relative-interior point in the crate inherits its
//! reproducibility from this.

use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use super::{kernel_basis, HVector, Rat};
use crate::error::Error;
use crate::Result;

/// Maximizes c.y over {Ay = b, y >= 0} given an initial identity basis.
/// `rows` is the m x n constraint matrix with rhs appended per row (b >= 0),
/// `cost` has length n, `basis[i]` names the basic column of row i and must
/// hit an identity submatrix.
struct Tableau {
    rows: Vec<Vec<Rat>>,
    cost: Vec<Rat>,
    obj: Rat,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..self.rows.len() {
            if i != row && !self.rows[i][col].is_zero() {
                let f = self.rows[i][col].clone();
                for c in 0..=self.ncols {
                    let v = &self.rows[i][c] - &f * &self.rows[row][c];
                    self.rows[i][c] = v;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for c in 0..self.ncols {
                let v = &self.cost[c] - &f * &self.rows[row][c];
                self.cost[c] = v;
            }
            self.obj = &self.obj + &f * &self.rows[row][self.ncols];
        }
        self.basis[row] = col;
    }

    /// Runs simplex to optimality with Bland's rule. Returns the objective.
    fn optimize(&mut self) -> Result<Rat> {
        loop {
            // Entering: lowest-index column with positive reduced cost.
            let Some(col) = (0..self.ncols).find(|&c| self.cost[c].is_positive()) else {
                return Ok(self.obj.clone());
            };
            // Leaving: lexicographic (Bland) among minimizers of the ratio.
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.ncols] / &self.rows[i][col];
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            let Some((row, _)) = best else {
                // The margin variable is bounded by construction, so an
                // unbounded improving direction cannot occur.
                return Err(Error::Internal(alloc::format!(
                    "unbounded feasibility LP at column {col}"
                )));
            };
            self.pivot(row, col);
        }
    }

    fn value_of(&self, col: usize) -> Rat {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == col {
                return self.rows[i][self.ncols].clone();
            }
        }
        Rat::zero()
    }
}

/// Decides strict/weak/equality feasibility; on success returns an exact
/// witness x with a.x <= -1 on strict normals, a.x <= 0 on weak ones, and
/// a.x = 0 on equalities.
pub(crate) fn mixed_feasible(
    strict: &[&HVector],
    weak: &[&HVector],
    eq: &[&HVector],
    dim: usize,
) -> Result<Option<HVector>> {
    for v in strict.iter().chain(weak).chain(eq) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }

    // Restrict to the kernel of the equality system: x = K mu.
    let kernel: Vec<HVector> = if eq.is_empty() {
        (0..dim).map(|k| HVector::basis(dim, k)).collect()
    } else {
        let eq_owned: Vec<HVector> = eq.iter().map(|v| (*v).clone()).collect();
        kernel_basis(&eq_owned, dim)?
    };
    let k = kernel.len();
    let zero_witness = || HVector::new(alloc::vec![Rat::zero(); dim]);

    if strict.is_empty() {
        return Ok(Some(zero_witness()));
    }
    if k == 0 {
        // Only x = 0 satisfies the equalities and it violates every strict
        // constraint.
        return Ok(None);
    }

    // Strict normals in kernel coordinates.
    let reduced: Vec<Vec<Rat>> = strict
        .iter()
        .map(|a| kernel.iter().map(|b| a.dot(b).unwrap()).collect())
        .collect();
    let reduced_weak: Vec<Vec<Rat>> = weak
        .iter()
        .map(|a| kernel.iter().map(|b| a.dot(b).unwrap()).collect())
        .collect();

    // Columns: mu+ (k), mu- (k), t, one slack per row.
    let m = reduced.len() + reduced_weak.len() + 1;
    let t_col = 2 * k;
    let ncols = 2 * k + 1 + m;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (which, r) in reduced.iter().chain(&reduced_weak).enumerate() {
        let mut row = alloc::vec![Rat::zero(); ncols + 1];
        for (j, c) in r.iter().enumerate() {
            row[j] = c.clone();
            row[k + j] = -c.clone();
        }
        if which < reduced.len() {
            row[t_col] = Rat::one();
        }
        row[t_col + 1 + which] = Rat::one();
        rows.push(row);
    }
    // t <= 1 keeps the objective bounded.
    {
        let mut row = alloc::vec![Rat::zero(); ncols + 1];
        row[t_col] = Rat::one();
        row[ncols - 1] = Rat::one();
        row[ncols] = Rat::one();
        rows.push(row);
    }

    let mut cost = alloc::vec![Rat::zero(); ncols];
    cost[t_col] = Rat::one();
    let basis: Vec<usize> = (0..m).map(|i| t_col + 1 + i).collect();
    let mut tab = Tableau {
        rows,
        cost,
        obj: Rat::zero(),
        basis,
        ncols,
    };
    let best = tab.optimize()?;
    if !best.is_positive() {
        return Ok(None);
    }

    // Recover x = K (mu+ - mu-), rescaled so strict margins are at least 1.
    let mut x = zero_witness();
    for j in 0..k {
        let mu = tab.value_of(j) - tab.value_of(k + j);
        if !mu.is_zero() {
            x = x.add(&kernel[j].scale(&mu))?;
        }
    }
    let scale = best.recip();
    let witness = x.scale(&scale);
    debug_assert!(strict
        .iter()
        .all(|a| a.dot(&witness).unwrap().is_negative()));
    debug_assert!(weak.iter().all(|a| !a.dot(&witness).unwrap().is_positive()));
    debug_assert!(eq.iter().all(|a| a.dot(&witness).unwrap().is_zero()));
    Ok(Some(witness))
}
