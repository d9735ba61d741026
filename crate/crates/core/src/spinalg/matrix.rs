//! Dense complex matrices and the Hermitian wrapper.

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scaled_re(&self, s: f64) -> Self {
        self.scaled(Complex64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len());
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..n {
                acc += self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum absolute row sum (the induced ∞-norm).
    pub fn row_sum_norm(&self) -> f64 {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Worst deviation from conjugate symmetry, with its position.
    pub fn max_asymmetry(&self) -> (f64, usize, usize) {
        let mut worst = 0.0;
        let mut pos = (0, 0);
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self[(r, c)] - self[(c, r)].conj()).norm();
                if d > worst {
                    worst = d;
                    pos = (r, c);
                }
            }
        }
        (worst, pos.0, pos.1)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// A complex matrix with exact conjugate symmetry.
///
/// Construction symmetrizes the input, `H ← (M + M†)/2`, after verifying the
/// asymmetry is below tolerance, so `entries[a][b] == conj(entries[b][a])`
/// holds exactly afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    /// Accepts `m` if its worst conjugate-asymmetry is at most
    /// `1e-12 · max(1, max|m|)`, then symmetrizes exactly.
    pub fn try_from_matrix(m: CMatrix) -> Result<Self> {
        let tol = 1e-12 * m.max_abs().max(1.0);
        Self::try_from_matrix_tol(m, tol)
    }

    pub fn try_from_matrix_tol(m: CMatrix, tol: f64) -> Result<Self> {
        let (asym, row, col) = m.max_asymmetry();
        if asym > tol {
            return Err(Error::NonHermitian {
                row,
                col,
                asymmetry: asym,
                tol,
            });
        }
        let dim = m.dim();
        let mut h = m;
        for r in 0..dim {
            for c in r + 1..dim {
                let avg = (h[(r, c)] + h[(c, r)].conj()) * 0.5;
                h[(r, c)] = avg;
                h[(c, r)] = avg.conj();
            }
            let d = h[(r, r)];
            h[(r, r)] = Complex64::new(d.re, 0.0);
        }
        Ok(Self { matrix: h })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self {
            matrix: CMatrix::from_real_diagonal(diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `H + s·G`, Hermitian by construction for real `s`.
    pub fn add_scaled(&self, s: f64, other: &Self) -> Self {
        Self {
            matrix: self.matrix.add(&other.matrix.scaled_re(s)),
        }
    }
}
