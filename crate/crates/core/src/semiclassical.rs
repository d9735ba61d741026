//! Classical limit on the Bloch sphere: the energy surface
//! `ℋ(θ,φ) = (χ₀/2)(1−cos²θ) + (χ₁/2)sin²θ cos2φ + (χ₂/2)sin²θ sin2φ`,
//! its equations of motion, fixed points with stability, the separatrix
//! energy, and fixed-step RK4 trajectories.
//!
//! The equations of motion are used exactly in the printed form
//! θ̇ = ∂ℋ/∂φ, φ̇ = −∂ℋ/∂θ. The canonical spin pair would be (φ, cos θ),
//! which inserts 1/sin θ factors and reparametrizes time; fixed points and
//! the bifurcation are the same away from the poles, where integration is
//! guarded anyway.

use crate::model::Couplings;
use crate::{Error, Result};

/// Point of a classical trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState {
    pub theta: f64,
    pub phi: f64,
    pub t: f64,
}

/// Stability class from the Hessian signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointKind {
    Elliptic,
    Hyperbolic,
    Degenerate,
}

/// A stationary point of the energy surface.
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    pub theta: f64,
    pub phi: f64,
    pub energy: f64,
    pub kind: FixedPointKind,
    pub hessian_eigs: [f64; 2],
}

/// Integration result; `hit_pole` marks early termination at the θ guard.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub points: Vec<ClassicalState>,
    pub hit_pole: bool,
}

/// Pole-exclusion margin for trajectories.
pub const POLE_MARGIN: f64 = 1e-9;

/// ℋ(θ, φ).
pub fn classical_energy(theta: f64, phi: f64, c: Couplings) -> f64 {
    let s2 = theta.sin() * theta.sin();
    c.chi0 / 2.0 * (1.0 - theta.cos() * theta.cos())
        + c.chi1 / 2.0 * s2 * (2.0 * phi).cos()
        + c.chi2 / 2.0 * s2 * (2.0 * phi).sin()
}

/// (θ̇, φ̇) exactly as printed:
/// θ̇ = χ₂ sin²θ cos2φ − χ₁ sin²θ sin2φ,
/// φ̇ = −(χ₀ + χ₁ cos2φ + χ₂ sin2φ) sinθ cosθ.
pub fn eom_rhs(theta: f64, phi: f64, c: Couplings) -> (f64, f64) {
    let s2 = theta.sin() * theta.sin();
    let (sin2p, cos2p) = (2.0 * phi).sin_cos();
    let dtheta = c.chi2 * s2 * cos2p - c.chi1 * s2 * sin2p;
    let dphi = -(c.chi0 + c.chi1 * cos2p + c.chi2 * sin2p) * theta.sin() * theta.cos();
    (dtheta, dphi)
}

/// Fixed-step RK4 integration from (θ₀, φ₀).
///
/// Terminates early with `hit_pole` when θ leaves (ε, π−ε), ε = 1e-9; the
/// printed equations are regular there but φ loses meaning at the poles.
pub fn integrate_rk4(
    s0: ClassicalState,
    c: Couplings,
    dt: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidStep { dt });
    }
    if s0.theta <= POLE_MARGIN || s0.theta >= std::f64::consts::PI - POLE_MARGIN {
        return Err(Error::PoleStart { theta0: s0.theta });
    }
    let mut points = Vec::with_capacity(n_steps + 1);
    points.push(s0);
    let (mut theta, mut phi, mut t) = (s0.theta, s0.phi, s0.t);
    let mut hit_pole = false;
    for _ in 0..n_steps {
        let (k1t, k1p) = eom_rhs(theta, phi, c);
        let (k2t, k2p) = eom_rhs(theta + dt / 2.0 * k1t, phi + dt / 2.0 * k1p, c);
        let (k3t, k3p) = eom_rhs(theta + dt / 2.0 * k2t, phi + dt / 2.0 * k2p, c);
        let (k4t, k4p) = eom_rhs(theta + dt * k3t, phi + dt * k3p, c);
        theta += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        phi += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        t += dt;
        points.push(ClassicalState { theta, phi, t });
        if theta <= POLE_MARGIN || theta >= std::f64::consts::PI - POLE_MARGIN {
            hit_pole = true;
            break;
        }
    }
    Ok(Trajectory { points, hit_pole })
}

/// Fixed points of the rotated-frame surface (χ₂ = 0): both poles and the
/// four equatorial azimuths φ ∈ {0, π/2, π, 3π/2}, classified by the
/// Hessian. For χ < χ₀ the φ = π/2 family are saddles; the classification
/// flips across χ = χ₀ (the bifurcation), where they are degenerate.
///
/// Pole entries are classified in a local Cartesian chart, where the
/// quadratic form has eigenvalues (χ₀±χ)/2; the (θ, φ) chart is singular
/// there.
pub fn find_fixed_points(chi0: f64, chi: f64) -> Vec<FixedPoint> {
    let c = Couplings::new(chi0, chi, 0.0);
    let mut out = Vec::with_capacity(6);
    let classify = |eigs: [f64; 2]| {
        let scale = (chi0.abs() + chi.abs()).max(1e-300);
        let tol = 1e-12 * scale;
        if eigs[0].abs() <= tol || eigs[1].abs() <= tol {
            FixedPointKind::Degenerate
        } else if eigs[0] * eigs[1] > 0.0 {
            FixedPointKind::Elliptic
        } else {
            FixedPointKind::Hyperbolic
        }
    };
    for theta in [0.0, std::f64::consts::PI] {
        let eigs = [(chi0 + chi) / 2.0, (chi0 - chi) / 2.0];
        out.push(FixedPoint {
            theta,
            phi: 0.0,
            energy: classical_energy(theta, 0.0, c),
            kind: classify(eigs),
            hessian_eigs: eigs,
        });
    }
    for k in 0..4 {
        let phi = k as f64 * std::f64::consts::FRAC_PI_2;
        let cos2p = (2.0 * phi).cos();
        // ∂²ℋ/∂θ² = (χ₀ + χ cos2φ)cos2θ |θ=π/2, ∂²ℋ/∂φ² = −2χ sin²θ cos2φ
        let eigs = [-(chi0 + chi * cos2p), -2.0 * chi * cos2p];
        out.push(FixedPoint {
            theta: std::f64::consts::FRAC_PI_2,
            phi,
            energy: classical_energy(std::f64::consts::FRAC_PI_2, phi, c),
            kind: classify(eigs),
            hessian_eigs: eigs,
        });
    }
    out
}

/// Energy of the hyperbolic (equatorial, φ = π/2) fixed point,
/// ℋ' = (χ₀−χ)/2 — the separatrix that marks the excited-state transition.
/// Requires χ₀ > χ > 0; outside that regime no hyperbolic point exists.
pub fn separatrix_energy(chi0: f64, chi: f64) -> Result<f64> {
    if !(chi0 > chi && chi > 0.0) {
        return Err(Error::NoSeparatrix { chi0, chi });
    }
    Ok((chi0 - chi) / 2.0)
}
