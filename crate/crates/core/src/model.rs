//! The tri-axis twisting Hamiltonian and its rotated asymmetric-rotor form.
//!
//! `H = (χ₀/2)(J²−Jz²) + (χ₁/2)(Jx²−Jy²) + (χ₂/2)(JxJy+JyJx)`
//!
//! A rotation about z by θ = arg(χ₁ − iχ₂)/2 removes the χ₂ term, leaving
//! `H' = ((χ₀+χ)/2) Ix² + ((χ₀−χ)/2) Iy²` with χ = √(χ₁²+χ₂²): an asymmetric
//! quantum rotor with moments of inertia 1/(χ₀±χ).

use crate::spinalg::{build_spin_operators, HermitianOperator, Spin};
use crate::{Error, Result};

/// Coupling strengths (frequencies) of the three twisting terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub chi0: f64,
    pub chi1: f64,
    pub chi2: f64,
}

impl Couplings {
    pub fn new(chi0: f64, chi1: f64, chi2: f64) -> Self {
        Self { chi0, chi1, chi2 }
    }
}

/// Rotation angle and anisotropy of the rotated frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorParams {
    /// θ = arg(χ₁ − iχ₂)/2, principal branch in (−π/2, π/2]; 0 when χ = 0.
    pub theta_rot: f64,
    /// χ = √(χ₁² + χ₂²).
    pub chi: f64,
}

/// Builds the tri-axis Hamiltonian in the Dicke basis.
pub fn triaxis_hamiltonian(spin: Spin, c: Couplings) -> HermitianOperator {
    let ops = build_spin_operators(spin);
    let jx = ops.jx.matrix();
    let jy = ops.jy.matrix();
    let jz = ops.jz.matrix();
    let jx2 = jx.mul(jx);
    let jy2 = jy.mul(jy);
    let jz2 = jz.mul(jz);
    let oat = ops.jsq.matrix().sub(&jz2).scaled_re(c.chi0 / 2.0);
    let anis = jx2.sub(&jy2).scaled_re(c.chi1 / 2.0);
    let cross = jx.mul(jy).add(&jy.mul(jx)).scaled_re(c.chi2 / 2.0);
    HermitianOperator::try_from_matrix(oat.add(&anis).add(&cross))
        .expect("sums of symmetrized products are Hermitian")
}

/// Rotation parameters that diagonalize the two-axis part.
///
/// The quadratic generator only fixes θ modulo π; the principal branch in
/// (−π/2, π/2] is returned, and θ = 0 when χ₁ = χ₂ = 0.
pub fn rotation_params(c: Couplings) -> RotorParams {
    let chi = c.chi1.hypot(c.chi2);
    if chi == 0.0 {
        return RotorParams {
            theta_rot: 0.0,
            chi: 0.0,
        };
    }
    let mut theta = 0.5 * (-c.chi2).atan2(c.chi1);
    // atan2 yields (−π, π]; halving gives (−π/2, π/2] already, but guard the
    // open end against −π/2 from a rounded −π.
    if theta <= -std::f64::consts::FRAC_PI_2 {
        theta += std::f64::consts::PI;
    }
    RotorParams {
        theta_rot: theta,
        chi,
    }
}

/// Builds the rotated Hamiltonian H' = ((χ₀+χ)/2)Ix² + ((χ₀−χ)/2)Iy².
///
/// The rotated frame relabels axes only, so the standard operators are used.
/// Its spectrum equals that of [`triaxis_hamiltonian`] with matching
/// (χ₀, χ₁, χ₂).
pub fn rotated_hamiltonian(spin: Spin, chi0: f64, chi: f64) -> Result<HermitianOperator> {
    if chi < 0.0 {
        return Err(Error::NegativeChi { chi });
    }
    let ops = build_spin_operators(spin);
    let jx = ops.jx.matrix();
    let jy = ops.jy.matrix();
    let h = jx
        .mul(jx)
        .scaled_re((chi0 + chi) / 2.0)
        .add(&jy.mul(jy).scaled_re((chi0 - chi) / 2.0));
    Ok(
        HermitianOperator::try_from_matrix(h)
            .expect("squares of Hermitian operators are Hermitian"),
    )
}

/// Diagonal of the parity operator (−1)^(Jz+j): +1 on even basis indices,
/// −1 on odd ones.
pub fn parity_diagonal(spin: Spin) -> Vec<i8> {
    (0..spin.dim())
        .map(|n| if n % 2 == 0 { 1 } else { -1 })
        .collect()
}
