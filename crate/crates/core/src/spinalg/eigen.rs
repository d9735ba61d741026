//! Dense Hermitian eigensolver: complex Householder reduction to a real
//! symmetric tridiagonal form, then implicit-shift QL with accumulated
//! rotations. Standard EISPACK-lineage algorithms, adequate for the
//! desk-scale dimensions (≲ 2000) this crate works at.

// index-style loops mirror the textbook algorithm; keep them
#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::matrix::{CMatrix, HermitianOperator};
use crate::{Error, Result};

/// Eigenvalues (ascending) and matching unitary eigenvector matrix.
///
/// Column `k` of [`vectors`](Self::vectors) pairs with `values[k]`. Each
/// column carries a fixed phase: its largest-magnitude component is real and
/// positive (first such component on ties).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: CMatrix,
}

impl EigenDecomposition {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Column `k` as a vector.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// `V† x`.
    pub fn to_eigenbasis(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                acc += self.vectors[(r, k)].conj() * x[r];
            }
            out[k] = acc;
        }
        out
    }

    /// `V x`.
    pub fn from_eigenbasis(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.vectors.matvec(x)
    }
}

/// Full eigendecomposition of a Hermitian operator.
pub fn hermitian_eigen(h: &HermitianOperator) -> Result<EigenDecomposition> {
    let n = h.dim();
    if n == 0 {
        return Ok(EigenDecomposition {
            values: Vec::new(),
            vectors: CMatrix::zeros(0),
        });
    }
    let (mut d, mut e, mut q) = tridiagonalize(h.matrix());
    ql_implicit(&mut d, &mut e, &mut q)?;
    sort_and_fix_phases(&mut d, &mut q);
    Ok(EigenDecomposition {
        values: d,
        vectors: q,
    })
}

/// Reduce a Hermitian matrix to real symmetric tridiagonal form `Q† A Q = T`.
///
/// Returns `(d, e, Q)` with `d` the diagonal, `e[k]` the (k, k+1) off-diagonal
/// (length n, last entry 0) and `Q` unitary. Off-diagonal phases are absorbed
/// into a diagonal unitary folded into `Q`, leaving `e` real non-negative.
fn tridiagonalize(a: &CMatrix) -> (Vec<f64>, Vec<f64>, CMatrix) {
    let n = a.dim();
    let mut w = a.clone();
    let mut q = CMatrix::identity(n);
    let mut v = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n.saturating_sub(2) {
        // Column below the sub-diagonal that the reflector must annihilate.
        let scale: f64 = (k + 1..n)
            .map(|r| w[(r, k)].re.abs() + w[(r, k)].im.abs())
            .sum();
        if scale == 0.0 {
            continue;
        }
        let mut norm_sq = 0.0;
        for r in k + 1..n {
            norm_sq += w[(r, k)].norm_sqr();
        }
        let norm = norm_sq.sqrt();
        let x0 = w[(k + 1, k)];
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };

        // v = (x - alpha e1) / |x - alpha e1|, supported on rows k+1..n.
        for item in v.iter_mut().take(k + 1) {
            *item = Complex64::new(0.0, 0.0);
        }
        for r in k + 1..n {
            v[r] = w[(r, k)];
        }
        v[k + 1] -= alpha;
        let vnorm_sq: f64 = (k + 1..n).map(|r| v[r].norm_sqr()).sum();
        if vnorm_sq == 0.0 {
            continue;
        }
        let inv = 1.0 / vnorm_sq.sqrt();
        for r in k + 1..n {
            v[r] *= inv;
        }

        // Hermitian rank-2 update of the trailing block:
        // W ← W - v w† - w v† with p = 2 W v, w = p - (v†p) v.
        let mut p = vec![Complex64::new(0.0, 0.0); n];
        for r in k + 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in k + 1..n {
                acc += w[(r, c)] * v[c];
            }
            p[r] = 2.0 * acc;
        }
        let mut vp = Complex64::new(0.0, 0.0);
        for r in k + 1..n {
            vp += v[r].conj() * p[r];
        }
        // v†p is real for Hermitian W.
        let vp_re = vp.re;
        for r in k + 1..n {
            p[r] -= vp_re * v[r];
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let delta = v[r] * p[c].conj() + p[r] * v[c].conj();
                w[(r, c)] -= delta;
            }
        }

        // The pivot column/row collapse onto alpha by construction.
        w[(k + 1, k)] = alpha;
        w[(k, k + 1)] = alpha.conj();
        for r in k + 2..n {
            w[(r, k)] = Complex64::new(0.0, 0.0);
            w[(k, r)] = Complex64::new(0.0, 0.0);
        }

        // Accumulate Q ← Q (I - 2 v v†).
        for r in 0..n {
            let mut t = Complex64::new(0.0, 0.0);
            for c in k + 1..n {
                t += q[(r, c)] * v[c];
            }
            t *= 2.0;
            for c in k + 1..n {
                q[(r, c)] -= t * v[c].conj();
            }
        }
    }

    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in 0..n {
        d[i] = w[(i, i)].re;
    }
    // Absorb off-diagonal phases into a diagonal unitary folded into Q.
    let mut phase = Complex64::new(1.0, 0.0);
    for k in 0..n.saturating_sub(1) {
        let off = w[(k + 1, k)];
        let mag = off.norm();
        e[k] = mag;
        let next_phase = if mag > 0.0 {
            phase * (off / mag)
        } else {
            phase
        };
        for r in 0..n {
            q[(r, k + 1)] *= next_phase;
        }
        phase = next_phase;
    }
    (d, e, q)
}

/// Implicit-shift QL on a real symmetric tridiagonal, rotations accumulated
/// into the complex columns of `q`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], q: &mut CMatrix) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    const MAX_SWEEPS: usize = 50;
    let eps = f64::EPSILON;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::EigenNoConvergence {
                    index: l,
                    iterations: iter,
                });
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..q.dim() {
                    f = q[(k, i + 1)].re;
                    let fi = q[(k, i + 1)].im;
                    let vr = q[(k, i)];
                    q[(k, i + 1)] = Complex64::new(s * vr.re + c * f, s * vr.im + c * fi);
                    q[(k, i)] = Complex64::new(c * vr.re - s * f, c * vr.im - s * fi);
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn sort_and_fix_phases(d: &mut Vec<f64>, q: &mut CMatrix) {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());

    let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut sorted_q = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            sorted_q[(r, new_col)] = q[(r, old_col)];
        }
    }
    *d = sorted_d;

    // Deterministic phase: largest-magnitude component real, positive.
    for col in 0..n {
        let mut best = 0usize;
        let mut best_mag = 0.0;
        for r in 0..n {
            let mag = sorted_q[(r, col)].norm_sqr();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        let z = sorted_q[(best, col)];
        let mag = z.norm();
        if mag > 0.0 {
            let factor = z.conj() / mag;
            for r in 0..n {
                sorted_q[(r, col)] *= factor;
            }
        }
    }
    *q = sorted_q;
}
