//! Majorana stellar representation: the degree-2j polynomial whose roots,
//! inverse-stereographically projected, are the 2j stars encoding a pure
//! spin-j state on the sphere.
//!
//! Coefficients follow `a_n = (−1)^n √C(2j, n) c_n` for `zⁿ` (n = j+m), so
//! the overlap with the antipodal coherent state factorizes as
//! `(sin θ/2)^(2j) P(z)` with `z = cot(θ/2) e^(iφ)`. A missing leading
//! coefficient is a star at z = ∞, mapped to θ = 0.

use num_complex::Complex64;

use crate::binom::binomial;
use crate::spinalg::SpinState;
use crate::states::BlochDirection;
use crate::{Error, Result};

/// Coefficients of the stellar polynomial, index n ↔ zⁿ, length 2j+1.
#[derive(Debug, Clone)]
pub struct MajoranaPolynomial {
    two_j: u32,
    coeffs: Vec<Complex64>,
}

impl MajoranaPolynomial {
    pub fn new(two_j: u32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != two_j as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: two_j as usize + 1,
                found: coeffs.len(),
            });
        }
        if coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self { two_j, coeffs })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Reconstructs the Dicke amplitudes the polynomial encodes (inverse of
    /// [`polynomial_from_state`], not normalized).
    pub fn to_amplitudes(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                a * sign / binomial(self.two_j, n as u32).sqrt()
            })
            .collect()
    }
}

/// The star configuration: finite roots plus the count at infinity.
#[derive(Debug, Clone)]
pub struct Constellation {
    pub two_j: u32,
    /// Finite roots sorted by (|z|, arg z) for determinism.
    pub finite_roots: Vec<Complex64>,
    pub infinity_count: usize,
    /// Filled by [`to_sphere`]; empty until then.
    pub sphere_points: Vec<BlochDirection>,
}

/// Builds the stellar polynomial of a state.
pub fn polynomial_from_state(psi: &SpinState) -> MajoranaPolynomial {
    let two_j = psi.spin().two_j();
    let coeffs = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(two_j, n as u32).sqrt() * c
        })
        .collect();
    MajoranaPolynomial { two_j, coeffs }
}

/// Normalized one-axis polynomial
/// `F_N(z) = Σ C(N,n) q^(n(N−n)) (−z)ⁿ` with `q = e^(iμ/2)`.
///
/// Its constant term is 1 for every N, and it equals `2^j q^(j²)` times the
/// stellar polynomial of the one-axis state with the same μ, entrywise.
/// At μ = 0 it collapses to (1−z)^N.
pub fn oat_normalized_polynomial(n: u32, mu: f64) -> Result<MajoranaPolynomial> {
    if n < 1 {
        return Err(Error::UnsupportedSpin {
            j: n as f64 / 2.0,
            supported: "N ≥ 1",
        });
    }
    let q = Complex64::from_polar(1.0, mu / 2.0);
    let coeffs = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let mag = sign * binomial(n, k);
            // q^(-k² + kN) = q^(k(N−k)); integer powering keeps the phase
            // exact to a few ulp where a flattened angle would not
            q.powu(k * (n - k)) * mag
        })
        .collect();
    MajoranaPolynomial::new(n, coeffs)
}

/// Relative magnitude below which a coefficient counts as analytically zero
/// (vanished leading terms are stars at infinity, trailing ones at z = 0).
const COEFF_REL_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200;
const STEP_TOL: f64 = 1e-13;
/// Residual contract: |p(z)| ≤ RESIDUAL_TOL · max|a| · max(1,|z|)^deg.
const RESIDUAL_TOL: f64 = 1e-10;

/// Finds all roots of the stellar polynomial by Aberth–Ehrlich iteration.
///
/// Stars at infinity are counted from vanished leading coefficients;
/// vanished trailing coefficients are deflated into exact zeros. Clusters of
/// approximations around a genuine multiple root are snapped to the cluster
/// value implied by the coefficient sum (Vieta), which restores full
/// precision there; the snap is only accepted when every derivative up to
/// the multiplicity vanishes at that point.
pub fn find_roots(p: &MajoranaPolynomial) -> Result<Constellation> {
    let scale = p.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let tol = COEFF_REL_TOL * scale;
    let hi = p
        .coeffs
        .iter()
        .rposition(|c| c.norm() > tol)
        .ok_or(Error::ZeroPolynomial)?;
    let lo = p
        .coeffs
        .iter()
        .position(|c| c.norm() > tol)
        .expect("hi exists, so lo does");
    let infinity_count = p.two_j as usize - hi;
    let mut roots = vec![Complex64::new(0.0, 0.0); lo];

    let work: Vec<Complex64> = p.coeffs[lo..=hi].to_vec();
    let deg = work.len() - 1;
    if deg > 0 {
        let mut zs = aberth_ehrlich(&work)?;
        collapse_clusters(&work, &mut zs);
        // residual contract per root
        let mut worst = 0.0f64;
        for &z in &zs {
            let r = horner(&work, z).norm() / (scale * z.norm().max(1.0).powi(deg as i32));
            worst = worst.max(r);
        }
        if worst > RESIDUAL_TOL {
            return Err(Error::RootsNoConvergence {
                iterations: MAX_ITERATIONS,
                residual: worst,
            });
        }
        roots.extend(zs);
    }

    roots.sort_by(|a, b| {
        let ka = (a.norm(), arg_in_turn(*a));
        let kb = (b.norm(), arg_in_turn(*b));
        ka.partial_cmp(&kb).unwrap()
    });

    Ok(Constellation {
        two_j: p.two_j,
        finite_roots: roots,
        infinity_count,
        sphere_points: Vec::new(),
    })
}

/// Maps roots to the sphere: θ = 2·arctan(1/|z|), φ = arg z in [0, 2π);
/// roots at infinity land on θ = 0, φ = 0.
pub fn to_sphere(c: &Constellation) -> Constellation {
    let mut points: Vec<BlochDirection> = c
        .finite_roots
        .iter()
        .map(|z| {
            let r = z.norm();
            if r == 0.0 {
                BlochDirection::new(std::f64::consts::PI, 0.0)
            } else {
                BlochDirection::new(2.0 * (1.0 / r).atan(), arg_in_turn(*z))
            }
        })
        .collect();
    points.extend((0..c.infinity_count).map(|_| BlochDirection::new(0.0, 0.0)));
    Constellation {
        two_j: c.two_j,
        finite_roots: c.finite_roots.clone(),
        infinity_count: c.infinity_count,
        sphere_points: points,
    }
}

fn arg_in_turn(z: Complex64) -> f64 {
    let mut a = z.im.atan2(z.re);
    if a < 0.0 {
        a += 2.0 * std::f64::consts::PI;
    }
    a
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (1..coeffs.len()).rev() {
        acc = acc * z + coeffs[k] * k as f64;
    }
    acc
}

fn aberth_ehrlich(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    let lead = coeffs[deg];
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|k| {
            // equiangular start with an offset that avoids symmetry locking
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..deg {
            let z = zs[k];
            let pv = horner(coeffs, z);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = horner_derivative(coeffs, z);
            if dv.norm() == 0.0 {
                // stationary point: nudge off it
                zs[k] = z * 1.000001 + Complex64::new(1e-9, 1e-9);
                max_step = f64::INFINITY;
                continue;
            }
            let newton = pv / dv;
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != k {
                    repulsion += 1.0 / (z - zj);
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            zs[k] = z - step;
            max_step = max_step.max(step.norm() / (1.0 + zs[k].norm()));
        }
        if max_step < STEP_TOL {
            return Ok(zs);
        }
    }
    // The iteration cap is not itself a failure: clustered roots stagnate on
    // the evaluation noise floor while already satisfying the residual
    // contract. The caller enforces that contract and reports the worst
    // residual if it is violated.
    Ok(zs)
}

/// Single-linkage clusters (pair radius 0.2·(1+min|z|)) snapped to the
/// Vieta-consistent centroid when the cluster is numerically a multiple
/// root: p⁽ᵏ⁾(c) must vanish relative to its absolute-value evaluation for
/// every k below the cluster size.
fn collapse_clusters(coeffs: &[Complex64], zs: &mut [Complex64]) {
    let deg = zs.len();
    if deg < 2 {
        return;
    }
    let mut parent: Vec<usize> = (0..deg).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..deg {
        for j in i + 1..deg {
            let r = 0.2 * (1.0 + zs[i].norm().min(zs[j].norm()));
            if (zs[i] - zs[j]).norm() <= r {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    for i in 0..deg {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let vieta_sum = -coeffs[deg - 1] / coeffs[deg];
    for members in groups.values() {
        let m = members.len();
        if m < 2 {
            continue;
        }
        let in_group: std::collections::HashSet<usize> = members.iter().copied().collect();
        let outside_sum: Complex64 = (0..deg)
            .filter(|i| !in_group.contains(i))
            .map(|i| zs[i])
            .sum();
        let centroid = (vieta_sum - outside_sum) / m as f64;
        if multiple_root_consistent(coeffs, centroid, m) {
            for &i in members {
                zs[i] = centroid;
            }
        }
    }
}

/// True when p and its first m−1 derivatives all vanish at c, relative to
/// the absolute-value Horner sum of each derivative (≤ 1e-12).
fn multiple_root_consistent(coeffs: &[Complex64], c: Complex64, m: usize) -> bool {
    let mut work: Vec<Complex64> = coeffs.to_vec();
    for _ in 0..m {
        let val = horner(&work, c);
        let habs: f64 = work
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm() * c.norm().powi(i as i32))
            .sum();
        if habs > 0.0 && val.norm() > 1e-12 * habs {
            return false;
        }
        // differentiate
        work = work
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * i as f64)
            .collect();
        if work.is_empty() {
            break;
        }
    }
    true
}
