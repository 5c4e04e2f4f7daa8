//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each sweep visits every off-diagonal pair (p, q) and applies a complex
//! plane rotation that zeroes the entry; sweeps repeat until the largest
//! off-diagonal magnitude drops below 1e-12 or 100 sweeps elapse. Adequate
//! and provably convergent for the dimensions used here (<= 16).

use alloc::vec::Vec;

use super::matrix::{Complex64, ComplexMatrix};
use super::HERMITICITY_TOL;
use crate::fp;

const OFFDIAG_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum EigError {
    #[error(
        "matrix is not Hermitian: entry ({row},{col}) differs from the conjugate \
         of ({col},{row}) by {defect:.3e}"
    )]
    NotHermitian { row: usize, col: usize, defect: f64 },
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {offdiag:.3e})"
    )]
    NoConvergence { sweeps: usize, offdiag: f64 },
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>, EigError> {
    let (row, col, defect) = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(EigError::NotHermitian { row, col, defect });
    }

    let n = m.dim();
    let mut a = m.clone();
    // Work on an exactly Hermitian copy.
    for i in 0..n {
        let d = a.at(i, i);
        a.set(i, i, Complex64::new(d.re, 0.0));
        for j in (i + 1)..n {
            let v = (a.at(i, j) + a.at(j, i).conj()) * 0.5;
            a.set(i, j, v);
            a.set(j, i, v.conj());
        }
    }

    for _ in 0..MAX_SWEEPS {
        if max_offdiag(&a) < OFFDIAG_TOL {
            let mut eigs: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
            return Ok(eigs);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let offdiag = max_offdiag(&a);
    if offdiag < OFFDIAG_TOL {
        let mut eigs: Vec<f64> = (0..n).map(|i| a.at(i, i).re).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
        return Ok(eigs);
    }
    Err(EigError::NoConvergence {
        sweeps: MAX_SWEEPS,
        offdiag,
    })
}

fn max_offdiag(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max(a.at(i, j).norm_sqr());
        }
    }
    fp::sqrt(worst)
}

/// Zero the (p, q) entry with the unitary rotation
/// `J = [[c, -s e^{i phi}], [s e^{-i phi}, c]]` acting on rows/columns p, q,
/// where `a[p][q] = r e^{i phi}`.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.at(p, q);
    let r = fp::sqrt(apq.norm_sqr());
    if r == 0.0 {
        return;
    }
    let phase = apq / r; // e^{i phi}
    let app = a.at(p, p).re;
    let aqq = a.at(q, q).re;
    let tau = (aqq - app) / (2.0 * r);
    // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0.
    let t = if fp::abs(tau) > 1e150 {
        -1.0 / (2.0 * tau)
    } else if tau >= 0.0 {
        -1.0 / (tau + fp::sqrt(1.0 + tau * tau))
    } else {
        1.0 / (-tau + fp::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / fp::sqrt(1.0 + t * t);
    let s = t * c;

    let n = a.dim();
    // Column update: M <- M J, with J[p][p] = c, J[q][p] = s e^{-i phi},
    // J[p][q] = -s e^{i phi}, J[q][q] = c.
    for k in 0..n {
        let mkp = a.at(k, p);
        let mkq = a.at(k, q);
        a.set(k, p, mkp * c + mkq * s * phase.conj());
        a.set(k, q, mkq * c - mkp * s * phase);
    }
    // Row update: M <- J† M.
    for k in 0..n {
        let mpk = a.at(p, k);
        let mqk = a.at(q, k);
        a.set(p, k, mpk * c + mqk * s * phase);
        a.set(q, k, mqk * c - mpk * s * phase.conj());
    }
    // Clean up rounding in the pivot block.
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
    let dp = a.at(p, p);
    let dq = a.at(q, q);
    a.set(p, p, Complex64::new(dp.re, 0.0));
    a.set(q, q, Complex64::new(dq.re, 0.0));
}
