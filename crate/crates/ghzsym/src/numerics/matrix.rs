//! Dense complex matrices with the few operations the state families need.

use alloc::vec;
use alloc::vec::Vec;

use crate::fp;

pub type Complex64 = num_complex::Complex<f64>;

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unsupported dimension {dim}, expected {expected}")]
    UnsupportedDimension { dim: usize, expected: usize },
    #[error("qubit index {0} out of range 1..=3")]
    QubitIndex(usize),
    #[error(
        "matrix is not Hermitian: entry ({row},{col}) differs from the conjugate \
         of ({col},{row}) by {defect:.3e}"
    )]
    NotHermitian { row: usize, col: usize, defect: f64 },
}

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    #[inline]
    pub fn add_to(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] += value;
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Largest entrywise deviation from `M[i][j] = conj(M[j][i])`, together
    /// with the offending entry.
    pub fn hermiticity_defect(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm_sqr();
                if d > worst.2 {
                    worst = (i, j, d);
                }
            }
        }
        (worst.0, worst.1, fp::sqrt(worst.2))
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<(), MatrixError> {
        let (row, col, defect) = self.hermiticity_defect();
        if defect > tol {
            Err(MatrixError::NotHermitian { row, col, defect })
        } else {
            Ok(())
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.add_to(i, j, a * other.at(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i).conj())
    }

    /// `U * self * U†`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self, MatrixError> {
        u.matmul(self)?.matmul(&u.adjoint())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(i, j) * factor)
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(Self::from_fn(self.dim, |i, j| {
            self.at(i, j) + other.at(i, j)
        }))
    }

    /// Real part of `tr(self * other)`; both operands Hermitian in practice.
    pub fn trace_product_re(&self, other: &Self) -> Result<f64, MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for k in 0..n {
                acc += (self.at(i, k) * other.at(k, i)).re;
            }
        }
        Ok(acc)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            worst = worst.max(fp::sqrt((a - b).norm_sqr()));
        }
        worst
    }
}

/// Hilbert-Schmidt distance `sqrt(tr((A-B)†(A-B)) / 2)`.
pub fn hs_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, MatrixError> {
    if a.dim() != b.dim() {
        return Err(MatrixError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let mut acc = 0.0;
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            acc += (a.at(i, j) - b.at(i, j)).norm_sqr();
        }
    }
    Ok(fp::sqrt(acc / 2.0))
}

/// Partial transpose of an 8x8 three-qubit matrix over one qubit.
///
/// Qubit 1 is the most significant bit of the basis index. The operation is
/// an involution and preserves the diagonal (hence the trace) exactly.
pub fn partial_transpose(m: &ComplexMatrix, qubit: usize) -> Result<ComplexMatrix, MatrixError> {
    if m.dim() != 8 {
        return Err(MatrixError::UnsupportedDimension {
            dim: m.dim(),
            expected: 8,
        });
    }
    if !(1..=3).contains(&qubit) {
        return Err(MatrixError::QubitIndex(qubit));
    }
    let shift = 3 - qubit; // qubit 1 -> bit 2, qubit 3 -> bit 0
    let mask = 1usize << shift;
    let mut out = ComplexMatrix::zeros(8);
    for i in 0..8 {
        for j in 0..8 {
            let ti = (i & !mask) | (j & mask);
            let tj = (j & !mask) | (i & mask);
            out.set(ti, tj, m.at(i, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_partial_transpose_is_identity() {
        let id = ComplexMatrix::identity(8);
        for q in 1..=3 {
            assert_eq!(partial_transpose(&id, q).unwrap(), id);
        }
    }

    #[test]
    fn partial_transpose_is_involutive_and_trace_preserving() {
        let mut m = ComplexMatrix::zeros(8);
        for i in 0..8 {
            for j in 0..8 {
                m.set(i, j, c((i * 8 + j) as f64, (i as f64) - (j as f64)));
            }
        }
        for q in 1..=3 {
            let t = partial_transpose(&m, q).unwrap();
            assert_eq!(partial_transpose(&t, q).unwrap(), m);
            assert_eq!(t.trace(), m.trace());
        }
    }

    #[test]
    fn partial_transpose_preserves_hermiticity_exactly() {
        let mut m = ComplexMatrix::zeros(8);
        for i in 0..8 {
            m.set(i, i, c(i as f64, 0.0));
            for j in (i + 1)..8 {
                let v = c(0.1 * (i + j) as f64, 0.2 * (j - i) as f64);
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        for q in 1..=3 {
            let t = partial_transpose(&m, q).unwrap();
            let (_, _, defect) = t.hermiticity_defect();
            assert_eq!(defect, 0.0);
            assert_eq!(t.trace(), m.trace());
        }
    }

    #[test]
    fn partial_transpose_rejects_wrong_dimension() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(
            partial_transpose(&m, 1),
            Err(MatrixError::UnsupportedDimension { dim: 4, .. })
        ));
        let m8 = ComplexMatrix::identity(8);
        assert!(matches!(
            partial_transpose(&m8, 0),
            Err(MatrixError::QubitIndex(0))
        ));
    }

    #[test]
    fn hs_distance_zero_iff_equal_and_symmetric() {
        let a = ComplexMatrix::identity(8);
        let mut b = a.clone();
        assert_eq!(hs_distance(&a, &b).unwrap(), 0.0);
        b.set(0, 1, c(0.0, 0.5));
        b.set(1, 0, c(0.0, -0.5));
        let d1 = hs_distance(&a, &b).unwrap();
        let d2 = hs_distance(&b, &a).unwrap();
        assert!(d1 > 0.0);
        assert!((d1 - d2).abs() < 1e-15);
        // two entries of modulus 0.5: sqrt((0.25 + 0.25)/2) = 0.5
        assert!((d1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hs_distance_dimension_mismatch() {
        let a = ComplexMatrix::identity(8);
        let b = ComplexMatrix::identity(16);
        assert!(matches!(
            hs_distance(&a, &b),
            Err(MatrixError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn hermiticity_defect_reports_worst_entry() {
        let mut m = ComplexMatrix::identity(4);
        m.set(1, 2, c(0.0, 1e-3));
        m.set(2, 1, c(0.0, 1e-3)); // conj would be -1e-3 => defect 2e-3
        let (i, j, d) = m.hermiticity_defect();
        assert_eq!((i, j), (1, 2));
        assert!((d - 2e-3).abs() < 1e-12);
        assert!(m.check_hermitian(1e-12).is_err());
    }
}
