//! Coherent, one-axis, two-axis, and tri-axis squeezed states, plus parity
//! classification, two-qubit concurrence, and the closed-form low-j states
//! printed for j ≤ 5/2 that serve as oracles for the numerical pipeline.
//!
//! # Coherent-state convention
//!
//! [`coherent_state`] uses the stereographic amplitude
//! `cₘ ∝ √C(2j, j+m) τ^(j+m)` with `τ = tan(θ₀/2) e^(−iφ₀)`, so **θ₀ = 0
//! yields the lowest-weight state |j,−j⟩** and θ₀ = π the highest-weight
//! state. This inverts the common north-pole-as-highest-weight convention but
//! matches the overlap kernel used by the Husimi and Majorana modules.

use num_complex::Complex64;

use crate::binom::{binomial, ln_binomial};
use crate::model::{triaxis_hamiltonian, Couplings};
use crate::spinalg::{build_spin_operators, evolve, HermitianOperator, Spin, SpinState};
use crate::{Error, Result};

/// Amplitudes switch to log-binomial accumulation at this 2j to dodge
/// overflow of C(2j, j+m) and underflow of half-angle powers.
const LOG_SPACE_TWO_J: u32 = 60;

/// Direction on the Bloch sphere, θ ∈ [0, π], φ normalized to [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    pub fn new(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, std::f64::consts::PI);
        let tau = 2.0 * std::f64::consts::PI;
        let mut phi = phi % tau;
        if phi < 0.0 {
            phi += tau;
        }
        Self { theta, phi }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }

    /// Unit vector (sinθcosφ, sinθsinφ, cosθ).
    pub fn unit_vector(self) -> [f64; 3] {
        [
            self.theta.sin() * self.phi.cos(),
            self.theta.sin() * self.phi.sin(),
            self.theta.cos(),
        ]
    }
}

/// Squeezing-generator parameters (μ₀, μ₁, μ₂) with ξ = μ₁ − iμ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistParams {
    pub mu0: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl TwistParams {
    pub fn new(mu0: f64, mu1: f64, mu2: f64) -> Self {
        Self { mu0, mu1, mu2 }
    }

    /// ξ = μ₁ − iμ₂.
    pub fn xi(self) -> Complex64 {
        Complex64::new(self.mu1, -self.mu2)
    }

    /// |ξ| = √(μ₁² + μ₂²).
    pub fn abs_xi(self) -> f64 {
        self.mu1.hypot(self.mu2)
    }

    /// ϑ = √(μ₀² + 3|ξ|²), the precession angle of the j = 3/2 closed form.
    pub fn effective_angle(self) -> f64 {
        (self.mu0 * self.mu0 + 3.0 * self.abs_xi() * self.abs_xi()).sqrt()
    }
}

/// Parity sector of a state under (−1)^(Jz+j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityLabel {
    Even,
    Odd,
    Mixed,
}

/// Parity classification with the worst amplitude found in the opposite
/// sector. `Even`/`Odd` are assigned only when that magnitude is ≤ 1e-12.
#[derive(Debug, Clone, Copy)]
pub struct Parity {
    pub label: ParityLabel,
    pub max_violation: f64,
}

/// Spin coherent state |j, n₀⟩ at direction (θ₀, φ₀).
pub fn coherent_state(spin: Spin, dir: BlochDirection) -> SpinState {
    let two_j = spin.two_j();
    let dim = spin.dim();
    let half = dir.theta() / 2.0;
    let (c, s) = (half.cos(), half.sin());
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    if two_j >= LOG_SPACE_TWO_J {
        let (ln_c, ln_s) = (c.ln(), s.ln());
        for (n, amp) in amps.iter_mut().enumerate() {
            let ln_mag = 0.5 * ln_binomial(two_j, n as u32)
                + (two_j as f64 - n as f64) * ln_c
                + n as f64 * ln_s;
            *amp = Complex64::from_polar(ln_mag.exp(), -(n as f64) * dir.phi());
        }
    } else {
        for (n, amp) in amps.iter_mut().enumerate() {
            let mag = binomial(two_j, n as u32).sqrt()
                * c.powi((two_j - n as u32) as i32)
                * s.powi(n as i32);
            *amp = Complex64::from_polar(mag, -(n as f64) * dir.phi());
        }
    }
    // θ₀ = π collapses to the highest-weight Dicke vector; the powers above
    // already produce it exactly, but guard against all-zero underflow.
    SpinState::normalized(spin, amps)
        .unwrap_or_else(|_| dicke_state(spin, spin.j()).expect("highest weight is always valid"))
}

/// Dicke state |j, m⟩.
pub fn dicke_state(spin: Spin, m: f64) -> Result<SpinState> {
    let n = m + spin.j();
    let rounded = n.round();
    if (n - rounded).abs() > 1e-9 || rounded < 0.0 || rounded > spin.two_j() as f64 {
        return Err(Error::InvalidProjection { j: spin.j(), m });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); spin.dim()];
    amps[rounded as usize] = Complex64::new(1.0, 0.0);
    SpinState::try_new(spin, amps)
}

/// One-axis twisted state |j, μ⟩ = exp(−iμJz²/2)|π/2, 0⟩, evaluated in
/// closed form: cₘ = 2^(−j) √C(2j, j+m) · e^(−iμm²/2).
pub fn oat_state(spin: Spin, mu: f64) -> SpinState {
    let two_j = spin.two_j();
    let mut amps = vec![Complex64::new(0.0, 0.0); spin.dim()];
    if two_j >= LOG_SPACE_TWO_J {
        let ln_half = 0.5f64.ln();
        for (n, amp) in amps.iter_mut().enumerate() {
            let m = spin.m(n);
            let ln_mag = 0.5 * ln_binomial(two_j, n as u32) + spin.j() * ln_half * 2.0;
            *amp = Complex64::from_polar(ln_mag.exp(), -mu * m * m / 2.0);
        }
    } else {
        let scale = 0.5f64.powf(spin.j());
        for (n, amp) in amps.iter_mut().enumerate() {
            let m = spin.m(n);
            let mag = scale * binomial(two_j, n as u32).sqrt();
            *amp = Complex64::from_polar(mag, -mu * m * m / 2.0);
        }
    }
    SpinState::normalized(spin, amps).expect("binomial weights never vanish")
}

/// Two-axis counter-twisted state |j, ν⟩ = exp(−ν(J₊²−J₋²)/2)|j,−j⟩,
/// computed by evolving under the Hermitian generator JxJy + JyJx
/// (the two forms coincide through (J₊²−J₋²)/2 = i(JxJy+JyJx)).
pub fn tact_state(spin: Spin, nu: f64) -> Result<SpinState> {
    let ops = build_spin_operators(spin);
    let g = HermitianOperator::try_from_matrix(
        ops.jx
            .matrix()
            .mul(ops.jy.matrix())
            .add(&ops.jy.matrix().mul(ops.jx.matrix())),
    )?;
    let low = dicke_state(spin, -spin.j())?;
    evolve(&g, nu, &low)
}

/// Tri-axis squeezed state: exp{−(i/2)[μ₀(J²−Jz²) + μ₁(Jx²−Jy²)
/// + μ₂(JxJy+JyJx)]} applied to a coherent state (default: lowest weight).
///
/// Equals the ladder form with (ξ/2)J₊² + (ξ*/2)J₋², ξ = μ₁ − iμ₂.
pub fn triaxis_state(
    spin: Spin,
    p: TwistParams,
    init: Option<BlochDirection>,
) -> Result<SpinState> {
    let g = triaxis_hamiltonian(spin, Couplings::new(p.mu0, p.mu1, p.mu2));
    let initial = match init {
        Some(dir) => coherent_state(spin, dir),
        None => dicke_state(spin, -spin.j())?,
    };
    evolve(&g, 1.0, &initial)
}

/// Closed-form two-axis states for j ∈ {1, 3/2, 2, 5/2}, amplitudes exactly
/// as printed for each case (u = √3·ν for j ≤ 2, u = √7·ν for j = 5/2).
pub fn closed_form_tact(spin: Spin, nu: f64) -> Result<SpinState> {
    let dim = spin.dim();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    match spin.two_j() {
        2 => {
            amps[0] = Complex64::new(nu.cos(), 0.0);
            amps[2] = Complex64::new(-nu.sin(), 0.0);
        }
        3 => {
            let u = 3f64.sqrt() * nu;
            amps[0] = Complex64::new(u.cos(), 0.0);
            amps[2] = Complex64::new(-u.sin(), 0.0);
        }
        4 => {
            let u = 3f64.sqrt() * nu;
            amps[0] = Complex64::new(u.cos() * u.cos(), 0.0);
            amps[2] = Complex64::new(-(2.0 * u).sin() / 2f64.sqrt(), 0.0);
            amps[4] = Complex64::new(u.sin() * u.sin(), 0.0);
        }
        5 => {
            let u = 7f64.sqrt() * nu;
            let (s, c) = u.sin_cos();
            let a = 3.0 * 5f64.sqrt() / 7.0 * s * s;
            let b = -(10.0f64 / 7.0).sqrt() * s * c;
            let cc = 1.0 - 5.0 / 7.0 * s * s;
            amps[0] = Complex64::new(cc, 0.0);
            amps[2] = Complex64::new(b, 0.0);
            amps[4] = Complex64::new(a, 0.0);
        }
        _ => {
            return Err(Error::UnsupportedSpin {
                j: spin.j(),
                supported: "1, 3/2, 2, 5/2",
            })
        }
    }
    SpinState::try_new(spin, amps)
}

/// Closed-form tri-axis states for j ∈ {1, 3/2} with real twist μ
/// (generator μ₀(J²−Jz²)/2 + μ(Jx²−Jy²)/2 from the lowest-weight state).
///
/// j = 3/2 uses the two-level form on {|3/2,−3/2⟩, |3/2,+1/2⟩}: parity of
/// the lowest-weight initial state forbids any |3/2,−1/2⟩ component.
pub fn closed_form_triaxis(spin: Spin, mu0: f64, mu: f64) -> Result<SpinState> {
    let dim = spin.dim();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    match spin.two_j() {
        2 => {
            let phase = Complex64::from_polar(1.0, -mu0 / 2.0);
            amps[0] = phase * (mu / 2.0).cos();
            amps[2] = phase * Complex64::new(0.0, -(mu / 2.0).sin());
        }
        3 => {
            let theta = (mu0 * mu0 + 3.0 * mu * mu).sqrt();
            // sin(θ/2)/θ, finite at θ → 0.
            let half_sinc = if theta > 1e-150 {
                (theta / 2.0).sin() / theta
            } else {
                0.5
            };
            let phase = Complex64::from_polar(1.0, -5.0 * mu0 / 4.0);
            amps[0] = phase * Complex64::new((theta / 2.0).cos(), mu0 * half_sinc);
            amps[2] = phase * Complex64::new(0.0, -3f64.sqrt() * mu * half_sinc);
        }
        _ => {
            return Err(Error::UnsupportedSpin {
                j: spin.j(),
                supported: "1, 3/2",
            })
        }
    }
    SpinState::normalized(spin, amps)
}

/// Classifies a state's parity sector with the worst opposite-sector
/// amplitude magnitude.
pub fn parity_of(psi: &SpinState) -> Parity {
    let mut max_even: f64 = 0.0;
    let mut max_odd: f64 = 0.0;
    for (n, amp) in psi.amplitudes().iter().enumerate() {
        let mag = amp.norm();
        if n % 2 == 0 {
            max_even = max_even.max(mag);
        } else {
            max_odd = max_odd.max(mag);
        }
    }
    const TOL: f64 = 1e-12;
    if max_odd <= TOL {
        Parity {
            label: ParityLabel::Even,
            max_violation: max_odd,
        }
    } else if max_even <= TOL {
        Parity {
            label: ParityLabel::Odd,
            max_violation: max_even,
        }
    } else {
        Parity {
            label: ParityLabel::Mixed,
            max_violation: max_even.min(max_odd),
        }
    }
}

/// Bipartite concurrence 2|det Γ| of a j = 1 state under the symmetric
/// two-qubit mapping |1,1⟩→|00⟩, |1,0⟩→(|01⟩+|10⟩)/√2, |1,−1⟩→|11⟩.
pub fn two_qubit_concurrence(psi: &SpinState) -> Result<f64> {
    if psi.spin().two_j() != 2 {
        return Err(Error::WrongSpin {
            expected: 2,
            found: psi.spin().two_j(),
        });
    }
    let c_low = psi.amplitude(0); // m = -1 → |11⟩
    let c_mid = psi.amplitude(1); // m = 0 → (|01⟩+|10⟩)/√2
    let c_high = psi.amplitude(2); // m = +1 → |00⟩
    let det = c_high * c_low - c_mid * c_mid * 0.5;
    Ok(2.0 * det.norm())
}

/// |⟨ψ|φ⟩| — overlap magnitude, insensitive to global phases.
pub fn fidelity_up_to_phase(psi: &SpinState, phi: &SpinState) -> Result<f64> {
    Ok(psi.inner(phi)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinalg::CMatrix;

    fn fid(a: &SpinState, b: &SpinState) -> f64 {
        fidelity_up_to_phase(a, b).unwrap()
    }

    #[test]
    fn coherent_at_origin_is_lowest_weight() {
        let spin = Spin::from_two_j(5);
        let psi = coherent_state(spin, BlochDirection::new(0.0, 0.0));
        assert!((psi.amplitude(0).re - 1.0).abs() < 1e-15);
        for n in 1..spin.dim() {
            assert_eq!(psi.amplitude(n).norm(), 0.0);
        }
    }

    #[test]
    fn coherent_at_pi_is_highest_weight() {
        let spin = Spin::from_two_j(7);
        let psi = coherent_state(spin, BlochDirection::new(std::f64::consts::PI, 1.3));
        assert!((psi.amplitude(spin.dim() - 1).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coherent_equator_amplitudes() {
        // j = 1/2: (1/√2, 1/√2); j = 1: (1/2, 1/√2, 1/2).
        let half = coherent_state(
            Spin::from_two_j(1),
            BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0),
        );
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        assert!((half.amplitude(0).re - inv_sqrt2).abs() < 1e-15);
        assert!((half.amplitude(1).re - inv_sqrt2).abs() < 1e-15);

        let one = coherent_state(
            Spin::from_two_j(2),
            BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0),
        );
        assert!((one.amplitude(0).re - 0.5).abs() < 1e-15);
        assert!((one.amplitude(1).re - inv_sqrt2).abs() < 1e-15);
        assert!((one.amplitude(2).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coherent_log_path_matches_linear() {
        // Same direction just below and above the log-space switch.
        let dir = BlochDirection::new(1.1, 2.2);
        for two_j in [58u32, 59] {
            let linear = coherent_state(Spin::from_two_j(two_j), dir);
            // evaluate the log path by construction at two_j + 2 and compare
            // overlap structure via the analytically shared ratio. Simpler:
            // check normalization and peak direction stay consistent.
            assert!((linear.norm() - 1.0).abs() < 1e-12);
        }
        let big = coherent_state(Spin::from_two_j(64), dir);
        assert!((big.norm() - 1.0).abs() < 1e-12);
        // amplitude ratios follow c_{n+1}/c_n = sqrt((2j-n)/(n+1)) tan(θ/2) e^{-iφ}
        let two_j = 64u32;
        let tan_half = (dir.theta() / 2.0).tan();
        for n in [0usize, 10, 31, 62] {
            let expect = ((two_j as f64 - n as f64) / (n as f64 + 1.0)).sqrt() * tan_half;
            let got = big.amplitude(n + 1) / big.amplitude(n);
            assert!((got.norm() - expect).abs() < 1e-10 * expect.max(1.0));
        }
    }

    #[test]
    fn dicke_examples() {
        let psi = dicke_state(Spin::from_two_j(2), -1.0).unwrap();
        assert_eq!(psi.amplitude(0).re, 1.0);
        let psi = dicke_state(Spin::from_two_j(3), 0.5).unwrap();
        assert_eq!(psi.amplitude(2).re, 1.0);
        assert!(matches!(
            dicke_state(Spin::from_two_j(2), 0.5),
            Err(Error::InvalidProjection { .. })
        ));
    }

    #[test]
    fn oat_at_zero_is_coherent_along_x() {
        let spin = Spin::from_two_j(9);
        let psi = oat_state(spin, 0.0);
        let coh = coherent_state(spin, BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0));
        assert!((1.0 - fid(&psi, &coh)).abs() < 1e-12);
    }

    #[test]
    fn oat_closed_form_equals_evolution_path() {
        // exp(-iμJz²/2) applied to |π/2, 0⟩: amplitude-level match.
        for (two_j, mu) in [(2u32, 0.9), (7, 2.4), (40, 0.35)] {
            let spin = Spin::from_two_j(two_j);
            let ops = build_spin_operators(spin);
            let g =
                HermitianOperator::try_from_matrix(ops.jz.matrix().mul(ops.jz.matrix())).unwrap();
            let start = coherent_state(spin, BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0));
            let evolved = evolve(&g, mu / 2.0, &start).unwrap();
            let direct = oat_state(spin, mu);
            let dev: f64 = evolved
                .amplitudes()
                .iter()
                .zip(direct.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "amplitude deviation {dev} at 2j={two_j}");
        }
    }

    #[test]
    fn oat_j1_amplitudes() {
        let mu = 1.7;
        let psi = oat_state(Spin::from_two_j(2), mu);
        let corner = Complex64::from_polar(0.5, -mu / 2.0);
        assert!((psi.amplitude(0) - corner).norm() < 1e-15);
        assert!((psi.amplitude(1).re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((psi.amplitude(2) - corner).norm() < 1e-15);
    }

    #[test]
    fn oat_phase_periodicity_integer_j() {
        let spin = Spin::from_two_j(6);
        let a = oat_state(spin, 0.0);
        let b = oat_state(spin, 4.0 * std::f64::consts::PI);
        let dev: f64 = a
            .amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(
            dev < 1e-9,
            "m² is integral for integer j, period 4π; dev {dev}"
        );
    }

    #[test]
    fn tact_j1_is_printed_superposition() {
        for nu in [0.0, 0.3, 1.2, std::f64::consts::FRAC_PI_4] {
            let psi = tact_state(Spin::from_two_j(2), nu).unwrap();
            let closed = closed_form_tact(Spin::from_two_j(2), nu).unwrap();
            assert!((1.0 - fid(&psi, &closed)) < 1e-12);
        }
    }

    #[test]
    fn tact_j32_closed_form_uses_sqrt3_nu() {
        for nu in [0.15, 0.8] {
            let psi = tact_state(Spin::from_two_j(3), nu).unwrap();
            let closed = closed_form_tact(Spin::from_two_j(3), nu).unwrap();
            assert!((1.0 - fid(&psi, &closed)) < 1e-12);
        }
    }

    #[test]
    fn closed_form_tact_examples() {
        // j = 2 at u = π/2 → highest-weight state.
        let nu = std::f64::consts::FRAC_PI_2 / 3f64.sqrt();
        let psi = closed_form_tact(Spin::from_two_j(4), nu).unwrap();
        assert!((psi.amplitude(4).norm() - 1.0).abs() < 1e-12);
        // j = 1 at ν = π/4 → (−1/√2)|1,1⟩ + (1/√2)|1,−1⟩.
        let psi = closed_form_tact(Spin::from_two_j(2), std::f64::consts::FRAC_PI_4).unwrap();
        assert!((psi.amplitude(0).re - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((psi.amplitude(2).re + 1.0 / 2f64.sqrt()).abs() < 1e-15);
        // j = 5/2 at u = 0 → lowest weight.
        let psi = closed_form_tact(Spin::from_two_j(5), 0.0).unwrap();
        assert_eq!(psi.amplitude(0).re, 1.0);
        // unsupported j
        assert!(matches!(
            closed_form_tact(Spin::from_two_j(6), 0.1),
            Err(Error::UnsupportedSpin { .. })
        ));
    }

    #[test]
    fn tact_matches_closed_forms_j2_j52() {
        for (two_j, nus) in [(4u32, [0.2, 0.9]), (5, [0.11, 0.6])] {
            for nu in nus {
                let psi = tact_state(Spin::from_two_j(two_j), nu).unwrap();
                let closed = closed_form_tact(Spin::from_two_j(two_j), nu).unwrap();
                assert!((1.0 - fid(&psi, &closed)) < 1e-12, "2j={two_j}, nu={nu}");
            }
        }
    }

    #[test]
    fn triaxis_with_zero_twist_is_identity() {
        let spin = Spin::from_two_j(4);
        let psi = triaxis_state(spin, TwistParams::new(0.0, 0.0, 0.0), None).unwrap();
        assert!((psi.amplitude(0).norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn triaxis_j1_matches_explicit_form() {
        // e^{-iμ₀/2}(−(iξ/|ξ|)sin(|ξ|/2)|1,1⟩ + cos(|ξ|/2)|1,−1⟩)
        for (mu0, mu1, mu2) in [(0.0, 0.6, 0.0), (1.2, 0.3, -0.8), (2.0, -1.0, 0.4)] {
            let p = TwistParams::new(mu0, mu1, mu2);
            let psi = triaxis_state(Spin::from_two_j(2), p, None).unwrap();
            let phase = Complex64::from_polar(1.0, -mu0 / 2.0);
            let xi = p.xi();
            let axi = p.abs_xi();
            let c0 = phase * (axi / 2.0).cos();
            let c2 = -Complex64::new(0.0, 1.0) * (xi / axi) * (axi / 2.0).sin() * phase;
            assert!((psi.amplitude(0) - c0).norm() < 1e-12);
            assert!((psi.amplitude(2) - c2).norm() < 1e-12);
            assert!(psi.amplitude(1).norm() < 1e-13);
        }
    }

    #[test]
    fn triaxis_j32_two_even_levels() {
        let psi =
            triaxis_state(Spin::from_two_j(3), TwistParams::new(0.7, 0.4, 0.0), None).unwrap();
        assert!(psi.amplitude(1).norm() < 1e-13);
        assert!(psi.amplitude(3).norm() < 1e-13);
        assert!(psi.amplitude(0).norm() > 0.1 && psi.amplitude(2).norm() > 0.1);
    }

    #[test]
    fn closed_form_triaxis_matches_numerics() {
        for (two_j, mu0, mu) in [
            (2u32, 0.0, 0.9),
            (2, 1.4, -0.5),
            (3, 0.0, 0.8),
            (3, 1.1, 0.6),
            (3, 2.5, -1.3),
        ] {
            let spin = Spin::from_two_j(two_j);
            let closed = closed_form_triaxis(spin, mu0, mu).unwrap();
            let num = triaxis_state(spin, TwistParams::new(mu0, mu, 0.0), None).unwrap();
            // amplitude-level match including the global phase
            let dev: f64 = closed
                .amplitudes()
                .iter()
                .zip(num.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12, "2j={two_j}, mu0={mu0}, mu={mu}: dev {dev}");
        }
    }

    #[test]
    fn closed_form_triaxis_examples() {
        // j=1, μ=0 → e^{-iμ₀/2}|1,−1⟩
        let psi = closed_form_triaxis(Spin::from_two_j(2), 0.9, 0.0).unwrap();
        assert!((psi.amplitude(0) - Complex64::from_polar(1.0, -0.45)).norm() < 1e-15);
        // j=1, (μ₀, μ) = (0, π) → −i|1,1⟩
        let psi = closed_form_triaxis(Spin::from_two_j(2), 0.0, std::f64::consts::PI).unwrap();
        assert!((psi.amplitude(2) - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        // j=3/2 excited weight |c_{1/2}|² = 3μ² sin²(θ/2)/θ²
        let (mu0, mu) = (0.8, 0.5);
        let psi = closed_form_triaxis(Spin::from_two_j(3), mu0, mu).unwrap();
        let theta = (mu0 * mu0 + 3.0 * mu * mu).sqrt();
        let weight = 3.0 * mu * mu * (theta / 2.0).sin().powi(2) / (theta * theta);
        assert!((psi.amplitude(2).norm_sqr() - weight).abs() < 1e-14);
    }

    #[test]
    fn parity_examples() {
        let low = dicke_state(Spin::from_two_j(8), -4.0).unwrap();
        let p = parity_of(&low);
        assert_eq!(p.label, ParityLabel::Even);
        assert_eq!(p.max_violation, 0.0);

        let tact = tact_state(Spin::from_two_j(4), 0.3).unwrap();
        assert_eq!(parity_of(&tact).label, ParityLabel::Even);

        let coh = coherent_state(
            Spin::from_two_j(2),
            BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0),
        );
        assert_eq!(parity_of(&coh).label, ParityLabel::Mixed);
    }

    #[test]
    fn parity_conserved_up_to_j20() {
        for two_j in [2u32, 5, 12, 27, 40] {
            let spin = Spin::from_two_j(two_j);
            let tact = tact_state(spin, 0.17).unwrap();
            let p = parity_of(&tact);
            assert!(
                p.max_violation < 1e-12,
                "tact violation {} at 2j={two_j}",
                p.max_violation
            );
            assert_eq!(p.label, ParityLabel::Even);
            let tri = triaxis_state(spin, TwistParams::new(0.9, 0.4, -0.6), None).unwrap();
            let p = parity_of(&tri);
            assert!(
                p.max_violation < 1e-12,
                "triaxis violation {} at 2j={two_j}",
                p.max_violation
            );
            assert_eq!(p.label, ParityLabel::Even);
        }
    }

    #[test]
    fn generator_ladder_identity() {
        // (χ₁/2)(Jx²−Jy²) + (χ₂/2)(JxJy+JyJx) = (ξ/4)J₊² + (ξ*/4)J₋².
        for two_j in [2u32, 3, 9] {
            let spin = Spin::from_two_j(two_j);
            let ops = build_spin_operators(spin);
            let (chi1, chi2) = (0.83, -1.7);
            let lhs = ops
                .jx
                .matrix()
                .mul(ops.jx.matrix())
                .sub(&ops.jy.matrix().mul(ops.jy.matrix()))
                .scaled_re(chi1 / 2.0)
                .add(
                    &ops.jx
                        .matrix()
                        .mul(ops.jy.matrix())
                        .add(&ops.jy.matrix().mul(ops.jx.matrix()))
                        .scaled_re(chi2 / 2.0),
                );
            let xi = Complex64::new(chi1, -chi2);
            let rhs = ops
                .jplus
                .mul(&ops.jplus)
                .scaled(xi * 0.25)
                .add(&ops.jminus.mul(&ops.jminus).scaled(xi.conj() * 0.25));
            assert!(lhs.sub(&rhs).max_abs() <= 1e-12 * lhs.max_abs().max(1.0));
        }
    }

    #[test]
    fn concurrence_examples() {
        // coherent product state → 0
        let coh = coherent_state(Spin::from_two_j(2), BlochDirection::new(0.9, 0.4));
        assert!(two_qubit_concurrence(&coh).unwrap() < 1e-14);

        // |ξ| = π/2 → 1, |ξ| = π/6 → 1/2
        let p = TwistParams::new(0.7, std::f64::consts::FRAC_PI_2, 0.0);
        let psi = triaxis_state(Spin::from_two_j(2), p, None).unwrap();
        assert!((two_qubit_concurrence(&psi).unwrap() - 1.0).abs() < 1e-12);

        let p = TwistParams::new(0.0, 0.0, std::f64::consts::FRAC_PI_6);
        let psi = triaxis_state(Spin::from_two_j(2), p, None).unwrap();
        assert!((two_qubit_concurrence(&psi).unwrap() - 0.5).abs() < 1e-12);

        // brute-force Γ determinant on a mixed-parity state
        let mixed = SpinState::normalized(
            Spin::from_two_j(2),
            vec![
                Complex64::new(0.3, 0.1),
                Complex64::new(-0.2, 0.6),
                Complex64::new(0.5, -0.4),
            ],
        )
        .unwrap();
        let g00 = mixed.amplitude(2);
        let g01 = mixed.amplitude(1) / 2f64.sqrt();
        let g11 = mixed.amplitude(0);
        let oracle = 2.0 * (g00 * g11 - g01 * g01).norm();
        assert!((two_qubit_concurrence(&mixed).unwrap() - oracle).abs() < 1e-15);

        assert!(matches!(
            two_qubit_concurrence(&dicke_state(Spin::from_two_j(3), 0.5).unwrap()),
            Err(Error::WrongSpin { .. })
        ));
    }

    #[test]
    fn fidelity_examples() {
        let spin = Spin::from_two_j(3);
        let a = dicke_state(spin, -1.5).unwrap();
        assert!((fid(&a, &a) - 1.0).abs() < 1e-15);
        let phased = SpinState::try_new(
            spin,
            a.amplitudes()
                .iter()
                .map(|z| z * Complex64::from_polar(1.0, 0.77))
                .collect(),
        )
        .unwrap();
        assert!((fid(&a, &phased) - 1.0).abs() < 1e-15);
        let b = dicke_state(spin, 0.5).unwrap();
        assert_eq!(fid(&a, &b), 0.0);
    }

    #[test]
    fn survival_at_zero_is_exact() {
        let spin = Spin::from_two_j(4);
        let h = triaxis_hamiltonian(spin, Couplings::new(1.0, 0.3, 0.2));
        let psi = coherent_state(spin, BlochDirection::new(1.0, 2.0));
        let evolved = evolve(&h, 0.0, &psi).unwrap();
        assert!((fid(&psi, &evolved) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ladder_route_reproduces_triaxis_state() {
        // Evolve with the (ξ/2)J₊² + (ξ*/2)J₋² form of the generator and
        // compare against the Cartesian form used by triaxis_state.
        let spin = Spin::from_two_j(5);
        let p = TwistParams::new(0.4, -0.7, 1.1);
        let ops = build_spin_operators(spin);
        let jz2 = ops.jz.matrix().mul(ops.jz.matrix());
        let oat = ops.jsq.matrix().sub(&jz2).scaled_re(p.mu0);
        let xi = p.xi();
        let ladder = ops
            .jplus
            .mul(&ops.jplus)
            .scaled(xi * 0.5)
            .add(&ops.jminus.mul(&ops.jminus).scaled(xi.conj() * 0.5));
        let g = HermitianOperator::try_from_matrix(oat.add(&ladder).scaled_re(0.5)).unwrap();
        let low = dicke_state(spin, -2.5).unwrap();
        let via_ladder = evolve(&g, 1.0, &low).unwrap();
        let via_cartesian = triaxis_state(spin, p, None).unwrap();
        let dev: f64 = via_ladder
            .amplitudes()
            .iter()
            .zip(via_cartesian.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(dev < 1e-12);
    }

    #[test]
    fn triaxis_accepts_explicit_initial_direction() {
        let spin = Spin::from_two_j(2);
        let dir = BlochDirection::new(std::f64::consts::FRAC_PI_2, 0.0);
        let psi = triaxis_state(spin, TwistParams::new(0.0, 0.0, 0.0), Some(dir)).unwrap();
        let coh = coherent_state(spin, dir);
        assert!((1.0 - fid(&psi, &coh)).abs() < 1e-13);
    }

    #[test]
    fn expectation_path_sanity() {
        // mean Jz of |j,−j⟩ through the matrix route is exactly −j
        let spin = Spin::from_two_j(6);
        let ops = build_spin_operators(spin);
        let low = dicke_state(spin, -3.0).unwrap();
        assert_eq!(low.real_expectation(&ops.jz).unwrap(), -3.0);
        let _unused: CMatrix = ops.jplus.clone();
    }
}
