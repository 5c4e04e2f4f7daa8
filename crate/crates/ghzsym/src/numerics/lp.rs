//! Two-phase dense tableau simplex with Bland's rule.
//!
//! Solves `maximize c·w subject to A w = b, w >= 0`. Sized for the
//! separability hull oracle: a handful of equality rows, up to a few
//! thousand columns. Bland's rule keeps the iteration cycle-free.

// Dense tableau arithmetic reads clearest with plain index loops.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use crate::fp;

/// Residual bound certified for returned optima.
pub const LP_RESIDUAL_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const PHASE1_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum LpError {
    #[error("constraint matrix has {rows} rows but rhs has {rhs} entries")]
    RhsMismatch { rows: usize, rhs: usize },
    #[error("constraint row {row} has {cols} columns, objective has {expected}")]
    RowMismatch {
        row: usize,
        cols: usize,
        expected: usize,
    },
    #[error("no constraints or no variables")]
    Empty,
    #[error("iteration limit {0} exceeded")]
    IterationLimit(usize),
    #[error("optimal basis violates constraints by {0:.3e}")]
    ResidualTooLarge(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { objective: f64, weights: Vec<f64> },
    Infeasible,
    Unbounded,
}

/// Maximize `objective · w` over `constraints · w = rhs`, `w >= 0`.
pub fn lp_maximize(
    objective: &[f64],
    constraints: &[Vec<f64>],
    rhs: &[f64],
) -> Result<LpOutcome, LpError> {
    let n = objective.len();
    let m = constraints.len();
    if m == 0 || n == 0 {
        return Err(LpError::Empty);
    }
    if rhs.len() != m {
        return Err(LpError::RhsMismatch {
            rows: m,
            rhs: rhs.len(),
        });
    }
    for (row, r) in constraints.iter().enumerate() {
        if r.len() != n {
            return Err(LpError::RowMismatch {
                row,
                cols: r.len(),
                expected: n,
            });
        }
    }

    // Tableau layout: columns [0..n) structural, [n..n+m) artificial,
    // column n+m the rhs. Rows [0..m) constraints, row m the objective.
    let width = n + m + 1;
    let mut t = vec![vec![0.0f64; width]; m + 1];
    for i in 0..m {
        let flip = if rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = flip * constraints[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = flip * rhs[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the artificial sum, i.e. maximize its negation.
    for j in 0..width {
        let mut acc = 0.0;
        for i in 0..m {
            acc += t[i][j];
        }
        t[m][j] = acc;
    }
    for jb in n..n + m {
        t[m][jb] = 0.0;
    }
    run_simplex(&mut t, &mut basis, n + m, m)?;
    if t[m][width - 1] > PHASE1_TOL {
        return Ok(LpOutcome::Infeasible);
    }

    // Pivot remaining artificials out of the basis where possible.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| fp::abs(t[i][j]) > PIVOT_TOL) {
                pivot(&mut t, &mut basis, i, j);
            }
        }
    }

    // Phase 2 objective: reduced costs of the original objective.
    for j in 0..width {
        t[m][j] = 0.0;
    }
    t[m][..n].copy_from_slice(objective);
    for i in 0..m {
        if basis[i] < n {
            let coeff = objective[basis[i]];
            if coeff != 0.0 {
                for j in 0..width {
                    t[m][j] -= coeff * t[i][j];
                }
                t[m][basis[i]] = 0.0;
            }
        }
    }
    // Maximization: pivot while some reduced cost is positive. Row m stores
    // objective - value, so entering columns have t[m][j] > 0.
    if !run_simplex_max(&mut t, &mut basis, n, m)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut weights = vec![0.0f64; n];
    for i in 0..m {
        if basis[i] < n {
            weights[basis[i]] = t[i][width - 1];
        }
    }
    let mut residual = 0.0f64;
    for i in 0..m {
        let mut acc = 0.0;
        for j in 0..n {
            acc += constraints[i][j] * weights[j];
        }
        residual = residual.max(fp::abs(acc - rhs[i]));
    }
    if residual > LP_RESIDUAL_TOL {
        return Err(LpError::ResidualTooLarge(residual));
    }
    let objective_value = weights
        .iter()
        .zip(objective.iter())
        .map(|(w, c)| w * c)
        .sum();
    Ok(LpOutcome::Optimal {
        objective: objective_value,
        weights,
    })
}

/// Phase-1 driver: the artificial objective is bounded, so the loop always
/// terminates at an optimum.
fn run_simplex(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    ncols: usize,
    m: usize,
) -> Result<(), LpError> {
    simplex_loop(t, basis, ncols, m)?;
    Ok(())
}

/// Phase-2 driver: returns Ok(false) when unbounded.
fn run_simplex_max(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    ncols: usize,
    m: usize,
) -> Result<bool, LpError> {
    simplex_loop(t, basis, ncols, m)
}

fn simplex_loop(
    t: &mut [Vec<f64>],
    basis: &mut [usize],
    ncols: usize,
    m: usize,
) -> Result<bool, LpError> {
    let width = t[0].len();
    let max_iters = 50 * (ncols + m) + 1000;
    for _ in 0..max_iters {
        // Bland: entering column = lowest index with positive reduced cost.
        let Some(enter) = (0..ncols).find(|&j| t[m][j] > PIVOT_TOL) else {
            return Ok(true);
        };
        // Ratio test; ties broken by smallest basis index (Bland).
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][enter] > PIVOT_TOL {
                let ratio = t[i][width - 1] / t[i][enter];
                if ratio < best - 1e-15
                    || (fp::abs(ratio - best) <= 1e-15
                        && leave.is_some_and(|l| basis[i] < basis[l]))
                {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            return Ok(false);
        };
        pivot(t, basis, leave, enter);
    }
    Err(LpError::IterationLimit(50 * (ncols + m) + 1000))
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let width = t[0].len();
    let p = t[row][col];
    for j in 0..width {
        t[row][j] /= p;
    }
    t[row][col] = 1.0;
    for i in 0..t.len() {
        if i != row {
            let f = t[i][col];
            if f != 0.0 {
                for j in 0..width {
                    t[i][j] -= f * t[row][j];
                }
                t[i][col] = 0.0;
            }
        }
    }
    basis[row] = col;
}
