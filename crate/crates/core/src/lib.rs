//! Numerical toolkit for collective spin-j systems with quadratic (twisting)
//! interactions.
//!
//! The crate covers the full pipeline from operator construction to analysis:
//!
//! * [`spinalg`] — Dicke-basis spin operators, a dense Hermitian eigensolver,
//!   and unitary time evolution.
//! * [`model`] — the tri-axis twisting Hamiltonian
//!   `H = (χ₀/2)(J²−Jz²) + (χ₁/2)(Jx²−Jy²) + (χ₂/2)(JxJy+JyJx)` and its
//!   rotated asymmetric-rotor form.
//! * [`states`] — coherent, one-axis, two-axis and tri-axis squeezed states,
//!   parity classification, two-qubit concurrence, and closed-form low-j
//!   states used as oracles.
//! * [`squeezing`] — the Kitagawa–Ueda squeezing parameter ξ², optimal
//!   squeezing angle, and survival probabilities.
//! * [`majorana`] — stellar representation: polynomial coefficients, root
//!   finding, and the constellation on the sphere.
//! * [`husimi`] — Husimi-Q evaluation and spherical quadrature.
//! * [`spectrum`] — parameter sweeps, parity-resolved spectra, density of
//!   states, and level-spacing statistics.
//! * [`semiclassical`] — the classical energy surface on the Bloch sphere,
//!   fixed points, bifurcation, and RK4 trajectories.
//!
//! Conventions: a spin-j Hilbert space is indexed by `n = 0..=2j` with
//! `m = -j + n`, so index 0 is the lowest-weight Dicke state `|j,-j⟩`.
//! Spherical angles follow the stereographic convention of the coherent
//! states in [`states::coherent_state`]: `θ₀ = 0` is the lowest-weight
//! direction.

mod binom;
pub mod husimi;
pub mod majorana;
pub mod model;
pub mod semiclassical;
pub mod spectrum;
pub mod spinalg;
pub mod squeezing;
pub mod statefile;
pub mod states;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: |ψ|² = {norm_sq:.17e}")]
    NotNormalized { norm_sq: f64 },

    #[error("cannot normalize a (near-)zero vector: |ψ|² = {norm_sq:.3e}")]
    ZeroNorm { norm_sq: f64 },

    #[error("matrix is not Hermitian: |H[{row}][{col}] - conj(H[{col}][{row}])| = {asymmetry:.3e} exceeds tolerance {tol:.3e}")]
    NonHermitian {
        row: usize,
        col: usize,
        asymmetry: f64,
        tol: f64,
    },

    #[error(
        "eigensolver failed to converge at eigenvalue index {index} after {iterations} iterations"
    )]
    EigenNoConvergence { index: usize, iterations: usize },

    #[error(
        "m = {m} is not a valid projection for j = {j} (need m ∈ {{-j..j}} with j+m integral)"
    )]
    InvalidProjection { j: f64, m: f64 },

    #[error("unsupported spin j = {j} for this closed form (supported: {supported})")]
    UnsupportedSpin { j: f64, supported: &'static str },

    #[error("spin must satisfy two_j = {expected}, found two_j = {found}")]
    WrongSpin { expected: u32, found: u32 },

    #[error("mean spin direction undefined: |⟨J⟩| = {norm:.3e} below threshold {threshold:.3e}; supply an explicit direction instead")]
    FrameUndefined { norm: f64, threshold: f64 },

    #[error("direction vector must be (near-)unit: |n| = {norm:.17e}")]
    NotUnit { norm: f64 },

    #[error("zero direction vector: perpendicular frame undefined")]
    ZeroDirection,

    #[error("negative rotor anisotropy χ = {chi}; the rotated form requires χ ≥ 0")]
    NegativeChi { chi: f64 },

    #[error("zero polynomial has no roots")]
    ZeroPolynomial,

    #[error("root finding did not converge after {iterations} iterations; worst scaled residual {residual:.3e}")]
    RootsNoConvergence { iterations: usize, residual: f64 },

    #[error("Hamiltonian does not commute with parity: worst cross-block entry {magnitude:.3e} at [{row}][{col}]")]
    ParityBroken {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("sweep failed at grid point μ₀ = {mu0}: {source}")]
    SweepPoint {
        mu0: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("need at least {needed} levels, found {found}")]
    TooFewLevels { needed: usize, found: usize },

    #[error(
        "no hyperbolic fixed point for χ₀ = {chi0}, χ = {chi}; the separatrix requires χ₀ > χ > 0"
    )]
    NoSeparatrix { chi0: f64, chi: f64 },

    #[error("invalid integration step dt = {dt}; need dt > 0")]
    InvalidStep { dt: f64 },

    #[error("trajectory may not start at a pole: θ₀ = {theta0}")]
    PoleStart { theta0: f64 },

    #[error("grid too small: {what}")]
    GridTooSmall { what: String },

    #[error("expectation value of a Hermitian observable has imaginary residue {residue:.3e}")]
    ComplexExpectation { residue: f64 },

    #[error("state file: {0}")]
    StateFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
