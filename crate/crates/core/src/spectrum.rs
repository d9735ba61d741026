//! Spectral analysis of the rotated Hamiltonian: parameter sweeps over
//! μ₀ = χ₀/χ, parity-resolved diagonalization, density of states,
//! level-spacing statistics, and the level-clustering estimate that locates
//! the excited-state transition.

use rayon::prelude::*;

use crate::model::rotated_hamiltonian;
use crate::spinalg::{hermitian_eigen, CMatrix, HermitianOperator, Spin};
use crate::{Error, Result};

/// Levels and parity labels across a μ₀ sweep at fixed χ.
///
/// Levels are sorted ascending at every grid point, with `parity_labels`
/// recorded per grid point: levels of opposite parity may cross along the
/// sweep (the blocks are independent), so a per-index global label would be
/// ill-defined. The label multiset is constant: j+1 even and j odd levels
/// for integer j.
#[derive(Debug, Clone)]
pub struct SpectrumSweep {
    pub spin: Spin,
    pub chi: f64,
    pub mu0_grid: Vec<f64>,
    /// `levels[g][k]`: k-th level (ascending) at grid point g.
    pub levels: Vec<Vec<f64>>,
    /// `parity_labels[g][k]`: +1 even / −1 odd block membership.
    pub parity_labels: Vec<Vec<i8>>,
}

/// Unfolded nearest-neighbor spacings.
#[derive(Debug, Clone)]
pub struct SpacingStats {
    /// Spacings divided by the local mean over a sliding window.
    pub spacings: Vec<f64>,
    pub histogram_edges: Vec<f64>,
    pub histogram_counts: Vec<usize>,
    /// Mean unfolded spacing (≈ 1).
    pub mean: f64,
}

/// Histogram of levels with the peak-bin center.
#[derive(Debug, Clone)]
pub struct DosHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
    /// Center of the highest-count bin, leftmost on ties.
    pub peak_energy: f64,
}

/// Per-grid-point clustering diagnostics.
#[derive(Debug, Clone)]
pub struct EsqptPoint {
    pub mu0: f64,
    pub dos_peak_energy: f64,
    pub dos_peak_count: usize,
    /// Smallest adjacent gap inside the even block and the energy where it
    /// occurs (midpoint of the pair).
    pub min_gap_even: f64,
    pub min_gap_even_energy: f64,
    pub min_gap_odd: f64,
    pub min_gap_odd_energy: f64,
}

/// Sweep summary: per-point diagnostics plus the μ₀ of strongest clustering
/// (highest DOS peak count, leftmost on ties).
#[derive(Debug, Clone)]
pub struct EsqptEstimate {
    pub points: Vec<EsqptPoint>,
    pub clustering_mu0: f64,
}

/// Diagonalizes the rotated Hamiltonian on a uniform μ₀ grid.
///
/// Each grid point is solved block-by-block (the parity sectors are exactly
/// decoupled), in parallel across points, and merged ascending.
pub fn eigen_sweep(
    spin: Spin,
    chi: f64,
    mu0_from: f64,
    mu0_to: f64,
    n_points: usize,
) -> Result<SpectrumSweep> {
    if n_points < 2 {
        return Err(Error::GridTooSmall {
            what: format!("sweep needs at least 2 points, got {n_points}"),
        });
    }
    if chi <= 0.0 {
        return Err(Error::NegativeChi { chi });
    }
    let mu0_grid: Vec<f64> = (0..n_points)
        .map(|i| mu0_from + (mu0_to - mu0_from) * i as f64 / (n_points - 1) as f64)
        .collect();

    let results: Vec<Result<(Vec<f64>, Vec<i8>)>> = mu0_grid
        .par_iter()
        .map(|&mu0| {
            let solve = || -> Result<(Vec<f64>, Vec<i8>)> {
                let h = rotated_hamiltonian(spin, mu0 * chi, chi)?;
                let (h_even, h_odd) = parity_blocks(&h)?;
                let even = hermitian_eigen(&h_even)?;
                let odd = hermitian_eigen(&h_odd)?;
                let mut pairs: Vec<(f64, i8)> = even
                    .values()
                    .iter()
                    .map(|&e| (e, 1i8))
                    .chain(odd.values().iter().map(|&e| (e, -1i8)))
                    .collect();
                pairs.sort_by(|a, b| {
                    a.0.partial_cmp(&b.0).unwrap().then_with(|| b.1.cmp(&a.1)) // deterministic tie-break: even first
                });
                Ok((
                    pairs.iter().map(|p| p.0).collect(),
                    pairs.iter().map(|p| p.1).collect(),
                ))
            };
            solve().map_err(|e| Error::SweepPoint {
                mu0,
                source: Box::new(e),
            })
        })
        .collect();

    let mut levels = Vec::with_capacity(n_points);
    let mut parity_labels = Vec::with_capacity(n_points);
    for r in results {
        let (l, p) = r?;
        levels.push(l);
        parity_labels.push(p);
    }
    Ok(SpectrumSweep {
        spin,
        chi,
        mu0_grid,
        levels,
        parity_labels,
    })
}

/// Splits a parity-commuting Hamiltonian into its even/odd-index blocks.
///
/// Errors when any cross-parity entry exceeds 1e-10 (the Hamiltonian would
/// not commute with (−1)^(Jz+j)).
pub fn parity_blocks(h: &HermitianOperator) -> Result<(HermitianOperator, HermitianOperator)> {
    let dim = h.dim();
    let m = h.matrix();
    for r in 0..dim {
        for c in 0..dim {
            if (r + c) % 2 == 1 && m[(r, c)].norm() > 1e-10 {
                return Err(Error::ParityBroken {
                    row: r,
                    col: c,
                    magnitude: m[(r, c)].norm(),
                });
            }
        }
    }
    let even_idx: Vec<usize> = (0..dim).step_by(2).collect();
    let odd_idx: Vec<usize> = (1..dim).step_by(2).collect();
    let extract = |idx: &[usize]| {
        let sub = CMatrix::from_fn(idx.len(), |r, c| m[(idx[r], idx[c])]);
        HermitianOperator::try_from_matrix(sub)
    };
    Ok((extract(&even_idx)?, extract(&odd_idx)?))
}

/// Uniform-bin histogram over [min, max] with the peak at the center of the
/// highest-count bin (leftmost on ties). A degenerate range collapses to a
/// single bin holding everything.
pub fn density_of_states(levels: &[f64], n_bins: usize) -> Result<DosHistogram> {
    if levels.len() < 2 {
        return Err(Error::TooFewLevels {
            needed: 2,
            found: levels.len(),
        });
    }
    let lo = levels.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = levels.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo == 0.0 {
        return Ok(DosHistogram {
            bin_edges: vec![lo, hi],
            counts: vec![levels.len()],
            peak_energy: lo,
        });
    }
    let n_bins = n_bins.max(1);
    let width = (hi - lo) / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &e in levels {
        let mut idx = ((e - lo) / width) as usize;
        if idx >= n_bins {
            idx = n_bins - 1; // right edge inclusive
        }
        counts[idx] += 1;
    }
    let peak_idx = counts
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) // leftmost on ties
        .map(|(i, _)| i)
        .unwrap();
    let bin_edges = (0..=n_bins).map(|i| lo + width * i as f64).collect();
    Ok(DosHistogram {
        bin_edges,
        counts: counts.clone(),
        peak_energy: lo + width * (peak_idx as f64 + 0.5),
    })
}

/// Default sliding half-window for spectral unfolding.
pub const DEFAULT_UNFOLD_HALF_WINDOW: usize = 5;

/// Unfolds nearest-neighbor spacings by the local mean spacing over a
/// sliding window of 2w+1 spacings (clipped at the edges) and histograms
/// them. Requires levels from a single symmetry block — mixing parities
/// fakes Poisson statistics.
pub fn spacing_distribution(
    levels: &[f64],
    half_window: usize,
    n_bins: usize,
) -> Result<SpacingStats> {
    if levels.len() < 10 {
        return Err(Error::TooFewLevels {
            needed: 10,
            found: levels.len(),
        });
    }
    let mut sorted = levels.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let raw: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    let w = half_window;
    let spacings: Vec<f64> = (0..raw.len())
        .map(|i| {
            let lo = i.saturating_sub(w);
            let hi = (i + w + 1).min(raw.len());
            let local_mean: f64 = raw[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
            if local_mean > 0.0 {
                raw[i] / local_mean
            } else {
                0.0
            }
        })
        .collect();
    let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;

    let max_s = spacings.iter().copied().fold(0.0, f64::max).max(1e-12);
    let n_bins = n_bins.max(1);
    let width = max_s / n_bins as f64;
    let mut counts = vec![0usize; n_bins];
    for &s in &spacings {
        let mut idx = (s / width) as usize;
        if idx >= n_bins {
            idx = n_bins - 1;
        }
        counts[idx] += 1;
    }
    let histogram_edges = (0..=n_bins).map(|i| width * i as f64).collect();
    Ok(SpacingStats {
        spacings,
        histogram_edges,
        histogram_counts: counts,
        mean,
    })
}

/// Per-grid-point DOS peaks and minimal intra-block gaps, plus the μ₀ where
/// levels cluster hardest. `n_bins` controls the per-point DOS histogram.
pub fn esqpt_estimate(sweep: &SpectrumSweep, n_bins: usize) -> Result<EsqptEstimate> {
    let mut points = Vec::with_capacity(sweep.mu0_grid.len());
    for (g, &mu0) in sweep.mu0_grid.iter().enumerate() {
        let dos = density_of_states(&sweep.levels[g], n_bins)?;
        let peak_count = *dos.counts.iter().max().unwrap();
        let gap_of = |parity: i8| -> (f64, f64) {
            let block: Vec<f64> = sweep.levels[g]
                .iter()
                .zip(&sweep.parity_labels[g])
                .filter(|(_, &p)| p == parity)
                .map(|(&e, _)| e)
                .collect();
            let mut best = f64::INFINITY;
            let mut at = f64::NAN;
            for w in block.windows(2) {
                let gap = w[1] - w[0];
                if gap < best {
                    best = gap;
                    at = (w[0] + w[1]) / 2.0;
                }
            }
            (best, at)
        };
        let (min_gap_even, min_gap_even_energy) = gap_of(1);
        let (min_gap_odd, min_gap_odd_energy) = gap_of(-1);
        points.push(EsqptPoint {
            mu0,
            dos_peak_energy: dos.peak_energy,
            dos_peak_count: peak_count,
            min_gap_even,
            min_gap_even_energy,
            min_gap_odd,
            min_gap_odd_energy,
        });
    }
    let clustering_mu0 = points
        .iter()
        .max_by(|a, b| {
            a.dos_peak_count
                .cmp(&b.dos_peak_count)
                .then(b.mu0.partial_cmp(&a.mu0).unwrap())
        })
        .map(|p| p.mu0)
        .unwrap_or(f64::NAN);
    Ok(EsqptEstimate {
        points,
        clustering_mu0,
    })
}
