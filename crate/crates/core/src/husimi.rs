//! Husimi-Q quasiprobability on the sphere:
//! `Q(θ,φ) = (2j+1)/(4π) |⟨θ,φ|ψ⟩|²` with the coherent-state overlap kernel
//! `⟨θ,φ|ψ⟩ = Σ √C(2j,n) (cos θ/2)^(2j−n) (e^(iφ) sin θ/2)ⁿ cₙ`.
//!
//! Quadrature is Gauss–Legendre in cos θ crossed with a uniform (trapezoid)
//! φ grid: the φ-averaged integrand is a polynomial of degree ≤ 2j in cos θ
//! and the azimuthal Fourier content is bounded by 2j, so n_θ ≥ 2j+1 Gauss
//! nodes and n_φ ≥ 4j+2 uniform nodes integrate Q exactly (to roundoff).

use num_complex::Complex64;
use rayon::prelude::*;

use crate::binom::{binomial, ln_binomial};
use crate::spinalg::SpinState;
use crate::states::BlochDirection;
use crate::{Error, Result};

/// Kernel switches to log-binomial accumulation at this 2j.
const LOG_SPACE_TWO_J: u32 = 60;

/// Q sampled on a (θ, φ) product grid.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    /// θ nodes ascending (Gauss–Legendre in cos θ).
    pub theta_nodes: Vec<f64>,
    /// Gauss–Legendre weights paired with `theta_nodes` (for ∫ d cos θ).
    pub theta_weights: Vec<f64>,
    /// φ nodes ascending, uniform over [0, 2π).
    pub phi_nodes: Vec<f64>,
    /// Q values, row-major: `values[i][k] = Q(theta_nodes[i], phi_nodes[k])`.
    pub values: Vec<Vec<f64>>,
    /// Optional Cartesian embedding (x, y, z) = Q·(sinθcosφ, sinθsinφ, cosθ).
    pub cartesian: Option<Vec<Vec<[f64; 3]>>>,
}

/// ⟨θ,φ|ψ⟩, the coherent-state overlap amplitude.
pub fn overlap(psi: &SpinState, dir: BlochDirection) -> Complex64 {
    let spin = psi.spin();
    let two_j = spin.two_j();
    let half = dir.theta() / 2.0;
    let (c, s) = (half.cos(), half.sin());
    let mut acc = Complex64::new(0.0, 0.0);
    if two_j >= LOG_SPACE_TWO_J {
        let (ln_c, ln_s) = (c.ln(), s.ln());
        for (n, amp) in psi.amplitudes().iter().enumerate() {
            if amp.norm() == 0.0 {
                continue;
            }
            let ln_mag = 0.5 * ln_binomial(two_j, n as u32)
                + (two_j as f64 - n as f64) * ln_c
                + n as f64 * ln_s;
            if ln_mag.is_finite() {
                acc += Complex64::from_polar(ln_mag.exp(), n as f64 * dir.phi()) * amp;
            }
        }
    } else {
        for (n, amp) in psi.amplitudes().iter().enumerate() {
            let mag = binomial(two_j, n as u32).sqrt()
                * c.powi((two_j - n as u32) as i32)
                * s.powi(n as i32);
            acc += Complex64::from_polar(mag, n as f64 * dir.phi()) * amp;
        }
    }
    acc
}

/// Q(θ,φ) = (2j+1)/(4π) |⟨θ,φ|ψ⟩|². Bounded by (2j+1)/(4π).
pub fn q_value(psi: &SpinState, dir: BlochDirection) -> f64 {
    let prefactor = (psi.spin().two_j() as f64 + 1.0) / (4.0 * std::f64::consts::PI);
    prefactor * overlap(psi, dir).norm_sqr()
}

/// Gauss–Legendre nodes and weights on (−1, 1), nodes ascending.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for k in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k as f64 + 1.0) * x * p1 - k as f64 * p2) / (k as f64 + 1.0);
            }
            pp = n as f64 * (x * p0 - p1) / (x * x - 1.0);
            let dx = p0 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Samples Q on an n_θ × n_φ grid (θ ascending, φ ascending).
pub fn q_grid(psi: &SpinState, n_theta: usize, n_phi: usize, cartesian: bool) -> Result<QGrid> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::GridTooSmall {
            what: format!("need n_theta ≥ 2 and n_phi ≥ 2, got {n_theta}×{n_phi}"),
        });
    }
    let (x, w) = gauss_legendre(n_theta);
    // cos θ descending ↔ θ ascending
    let theta_nodes: Vec<f64> = x.iter().rev().map(|&c| c.clamp(-1.0, 1.0).acos()).collect();
    let theta_weights: Vec<f64> = w.iter().rev().copied().collect();
    let phi_nodes: Vec<f64> = (0..n_phi)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / n_phi as f64)
        .collect();

    let values: Vec<Vec<f64>> = theta_nodes
        .par_iter()
        .map(|&theta| {
            phi_nodes
                .iter()
                .map(|&phi| q_value(psi, BlochDirection::new(theta, phi)))
                .collect()
        })
        .collect();

    let cartesian = cartesian.then(|| {
        theta_nodes
            .iter()
            .enumerate()
            .map(|(i, &theta)| {
                phi_nodes
                    .iter()
                    .enumerate()
                    .map(|(k, &phi)| {
                        let q = values[i][k];
                        [
                            q * theta.sin() * phi.cos(),
                            q * theta.sin() * phi.sin(),
                            q * theta.cos(),
                        ]
                    })
                    .collect()
            })
            .collect()
    });

    Ok(QGrid {
        n_theta,
        n_phi,
        theta_nodes,
        theta_weights,
        phi_nodes,
        values,
        cartesian,
    })
}

impl QGrid {
    /// Quadrature of the stored Q over the sphere.
    pub fn integral(&self) -> f64 {
        let dphi = 2.0 * std::f64::consts::PI / self.n_phi as f64;
        self.values
            .iter()
            .zip(&self.theta_weights)
            .map(|(row, &w)| w * dphi * row.iter().sum::<f64>())
            .sum()
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(0.0, f64::max)
    }
}

/// ∫ Q dΩ with node counts adequate for exactness (n_θ = 2j+1, n_φ = 4j+2):
/// 1 for any normalized state, by the coherent-state resolution of identity.
pub fn q_normalization(psi: &SpinState) -> f64 {
    let two_j = psi.spin().two_j() as usize;
    let grid = q_grid(psi, (two_j + 1).max(2), (2 * two_j + 2).max(2), false)
        .expect("adequate node counts");
    grid.integral()
}
