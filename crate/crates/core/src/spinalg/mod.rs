//! Dicke-basis spin operators, Hermitian eigendecomposition, and unitary
//! time evolution — the numerical substrate for the rest of the crate.
//!
//! Basis convention: amplitudes are indexed by `n = 0..=2j` with `m = -j + n`
//! ascending, which makes `J₊` strictly superdiagonal and keeps the two
//! parity sectors on indices of fixed parity.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, EigenDecomposition};
pub use matrix::{CMatrix, HermitianOperator};

use num_complex::Complex64;

use crate::{Error, Result};

/// Norm-deviation tolerance enforced on states after construction/evolution.
pub const NORM_TOL: f64 = 1e-12;

/// A spin quantum number j, stored exactly as the integer 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    /// Accepts a decimal j (e.g. `1.5`) if 2j is an integer to within 1e-9.
    pub fn from_j(j: f64) -> Result<Self> {
        let two_j = 2.0 * j;
        let rounded = two_j.round();
        if j < 0.0 || (two_j - rounded).abs() > 1e-9 || rounded > u32::MAX as f64 {
            return Err(Error::InvalidProjection { j, m: j });
        }
        Ok(Self {
            two_j: rounded as u32,
        })
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Hilbert-space dimension 2j+1.
    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Projection quantum number at basis index `n`: m = -j + n.
    pub fn m(self, n: usize) -> f64 {
        -self.j() + n as f64
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.two_j.is_multiple_of(2) {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

/// Pure spin-j state over the Dicke basis, normalized to [`NORM_TOL`].
#[derive(Debug, Clone)]
pub struct SpinState {
    spin: Spin,
    amplitudes: Vec<Complex64>,
}

impl SpinState {
    /// Wraps amplitudes that are already normalized (Σ|cₘ|² = 1 to 1e-12).
    pub fn try_new(spin: Spin, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { spin, amplitudes })
    }

    /// Rescales arbitrary amplitudes to unit norm.
    pub fn normalized(spin: Spin, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                found: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq < 1e-300 {
            return Err(Error::ZeroNorm { norm_sq });
        }
        let inv = 1.0 / norm_sq.sqrt();
        for c in &mut amplitudes {
            *c *= inv;
        }
        Ok(Self { spin, amplitudes })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude at basis index n (m = -j + n).
    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &SpinState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// ⟨ψ|A|ψ⟩ for an arbitrary matrix A.
    pub fn expectation(&self, op: &CMatrix) -> Result<Complex64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        let av = op.matvec(&self.amplitudes);
        Ok(self
            .amplitudes
            .iter()
            .zip(&av)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Real expectation of a Hermitian observable; errors if the imaginary
    /// residue exceeds 1e-10 (which would signal a broken operator).
    pub fn real_expectation(&self, op: &HermitianOperator) -> Result<f64> {
        let z = self.expectation(op.matrix())?;
        if z.im.abs() > 1e-10 {
            return Err(Error::ComplexExpectation { residue: z.im });
        }
        Ok(z.re)
    }
}

/// The collective spin operators for a given j.
///
/// `jx`, `jy`, `jz`, `jsq` are Hermitian; the ladder operators `jplus`,
/// `jminus` are general matrices. Matrix elements follow
/// ⟨j,m+1|J₊|j,m⟩ = √(j(j+1) − m(m+1)).
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub jx: HermitianOperator,
    pub jy: HermitianOperator,
    pub jz: HermitianOperator,
    pub jsq: HermitianOperator,
    pub jplus: CMatrix,
    pub jminus: CMatrix,
}

pub fn build_spin_operators(spin: Spin) -> SpinOperators {
    let dim = spin.dim();
    let j = spin.j();
    let mut jplus = CMatrix::zeros(dim);
    for n in 0..dim.saturating_sub(1) {
        let m = spin.m(n);
        jplus[(n + 1, n)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jminus = jplus.adjoint();
    let jx = HermitianOperator::try_from_matrix(jplus.add(&jminus).scaled_re(0.5))
        .expect("ladder sum is Hermitian");
    let jy =
        HermitianOperator::try_from_matrix(jplus.sub(&jminus).scaled(Complex64::new(0.0, -0.5)))
            .expect("ladder difference over 2i is Hermitian");
    let jz =
        HermitianOperator::from_real_diagonal(&(0..dim).map(|n| spin.m(n)).collect::<Vec<_>>());
    let jsq = HermitianOperator::from_real_diagonal(&vec![j * (j + 1.0); dim]);
    SpinOperators {
        jx,
        jy,
        jz,
        jsq,
        jplus,
        jminus,
    }
}

/// Cached eigendecomposition of a Hermitian generator, for repeated
/// applications of exp(-iGt) at different times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eig: EigenDecomposition,
}

impl Propagator {
    pub fn new(generator: &HermitianOperator) -> Result<Self> {
        Ok(Self {
            eig: hermitian_eigen(generator)?,
        })
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    /// exp(-iGt)|ψ⟩. At t = 0 the input state is returned unchanged.
    pub fn apply(&self, t: f64, psi: &SpinState) -> Result<SpinState> {
        if self.eig.dim() != psi.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.eig.dim(),
                found: psi.dim(),
            });
        }
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let mut coeffs = self.eig.to_eigenbasis(psi.amplitudes());
        for (c, &lambda) in coeffs.iter_mut().zip(self.eig.values()) {
            *c *= Complex64::from_polar(1.0, -lambda * t);
        }
        SpinState::try_new(psi.spin(), self.eig.from_eigenbasis(&coeffs))
    }
}

/// Evolves |ψ⟩ under exp(-iGt), always via full eigendecomposition so that
/// unitarity holds to machine precision for arbitrary t.
pub fn evolve(generator: &HermitianOperator, t: f64, psi: &SpinState) -> Result<SpinState> {
    Propagator::new(generator)?.apply(t, psi)
}
