//! Subcommand implementations. Each builds its entire output in memory and
//! returns it, so a numerical failure mid-run never leaves a partial file.

use std::path::Path;

use rayon::prelude::*;

use spinsqueeze_core::model::Couplings;
use spinsqueeze_core::semiclassical::{classical_energy, integrate_rk4, ClassicalState};
use spinsqueeze_core::spinalg::{Spin, SpinState};
use spinsqueeze_core::squeezing::{squeezing_report, survival_curve, SqueezingReport};
use spinsqueeze_core::statefile::{read_state_file, write_state_string};
use spinsqueeze_core::states::{
    coherent_state, dicke_state, oat_state, tact_state, triaxis_state, BlochDirection, TwistParams,
};
use spinsqueeze_core::{husimi as husimi_mod, majorana as majorana_mod, model, spectrum, Error};

use crate::fmt::f;
use crate::{RangeSpec, SpinArg, SqueezeMode, StateKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad flags or input files; exits 2 before any computation output.
    Validation,
    /// The computation itself failed; exits 1.
    Numerical,
}

#[derive(Debug)]
pub struct AppError {
    pub kind: ErrorKind,
    pub message: String,
}

impl AppError {
    fn validation(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Validation,
            message: msg.into(),
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::EigenNoConvergence { .. }
            | Error::RootsNoConvergence { .. }
            | Error::ComplexExpectation { .. }
            | Error::NonHermitian { .. }
            | Error::ParityBroken { .. }
            | Error::FrameUndefined { .. } => ErrorKind::Numerical,
            _ => ErrorKind::Validation,
        };
        AppError {
            kind,
            message: e.to_string(),
        }
    }
}

impl SpinArg {
    fn resolve(&self) -> Result<Spin, AppError> {
        match (self.j, self.two_j) {
            (Some(j), None) => Spin::from_j(j)
                .map_err(|_| AppError::validation(format!("--j {j} is not a half-integer"))),
            (None, Some(two_j)) => Ok(Spin::from_two_j(two_j)),
            (None, None) => Err(AppError::validation("one of --j or --two-j is required")),
            (Some(_), Some(_)) => Err(AppError::validation("--j conflicts with --two-j")),
        }
    }
}

pub fn spectrum(spin: SpinArg, chi: f64, mu0: RangeSpec) -> Result<String, AppError> {
    let spin = spin.resolve()?;
    if chi.is_nan() || chi <= 0.0 {
        return Err(AppError::validation(format!(
            "--chi must be > 0, got {chi}"
        )));
    }
    if mu0.count < 2 {
        return Err(AppError::validation("--mu0 needs count ≥ 2"));
    }
    let sweep = spectrum::eigen_sweep(spin, chi, mu0.from, mu0.to, mu0.count)?;
    let mut out = String::from("mu0,k,E_k,parity\n");
    for (g, &mu0v) in sweep.mu0_grid.iter().enumerate() {
        for (k, (&e, &p)) in sweep.levels[g]
            .iter()
            .zip(&sweep.parity_labels[g])
            .enumerate()
        {
            out.push_str(&format!("{},{k},{},{p}\n", f(mu0v), f(e)));
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn squeeze(
    spin: SpinArg,
    mode: SqueezeMode,
    mu: Option<RangeSpec>,
    nu: Option<RangeSpec>,
    mu0: Option<f64>,
    mu1: Option<RangeSpec>,
    mu2: f64,
) -> Result<String, AppError> {
    let spin = spin.resolve()?;
    let (param_name, grid): (&str, RangeSpec) = match mode {
        SqueezeMode::Oat => (
            "mu",
            mu.ok_or_else(|| AppError::validation("mode oat requires --mu from:to:count"))?,
        ),
        SqueezeMode::Tact => (
            "nu",
            nu.ok_or_else(|| AppError::validation("mode tact requires --nu from:to:count"))?,
        ),
        SqueezeMode::Triaxis => (
            "mu1",
            mu1.ok_or_else(|| AppError::validation("mode triaxis requires --mu1 from:to:count"))?,
        ),
    };
    let mu0 = match mode {
        SqueezeMode::Triaxis => {
            mu0.ok_or_else(|| AppError::validation("mode triaxis requires --mu0"))?
        }
        _ => 0.0,
    };

    let rows: Vec<Result<(f64, Option<SqueezingReport>), Error>> = grid
        .values()
        .par_iter()
        .map(|&p| {
            let psi = match mode {
                SqueezeMode::Oat => oat_state(spin, p),
                SqueezeMode::Tact => tact_state(spin, p)?,
                SqueezeMode::Triaxis => triaxis_state(spin, TwistParams::new(mu0, p, mu2), None)?,
            };
            match squeezing_report(&psi) {
                Ok(rep) => Ok((p, Some(rep))),
                Err(Error::FrameUndefined { .. }) => Ok((p, None)),
                Err(e) => Err(e),
            }
        })
        .collect();

    let mut out = format!("{param_name},xi2,phi_opt,sx,sy,sz\n");
    for row in rows {
        let (p, rep) = row?;
        match rep {
            Some(r) => out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f(p),
                f(r.xi2),
                f(r.phi_opt),
                f(r.mean_spin[0]),
                f(r.mean_spin[1]),
                f(r.mean_spin[2]),
            )),
            None => out.push_str(&format!("{},nan,nan,nan,nan,nan\n", f(p))),
        }
    }
    Ok(out)
}

pub fn husimi(
    state_file: &Path,
    renormalize: bool,
    n_theta: usize,
    n_phi: usize,
    cartesian: bool,
) -> Result<String, AppError> {
    let psi = read_state(state_file, renormalize)?;
    let grid = husimi_mod::q_grid(&psi, n_theta, n_phi, cartesian)?;
    let mut out = String::from(if cartesian {
        "theta,phi,Q,x,y,z\n"
    } else {
        "theta,phi,Q\n"
    });
    for (i, &theta) in grid.theta_nodes.iter().enumerate() {
        for (k, &phi) in grid.phi_nodes.iter().enumerate() {
            let q = grid.values[i][k];
            if let Some(cart) = &grid.cartesian {
                let [x, y, z] = cart[i][k];
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    f(theta),
                    f(phi),
                    f(q),
                    f(x),
                    f(y),
                    f(z)
                ));
            } else {
                out.push_str(&format!("{},{},{}\n", f(theta), f(phi), f(q)));
            }
        }
    }
    Ok(out)
}

pub fn majorana(state_file: &Path, renormalize: bool) -> Result<String, AppError> {
    let psi = read_state(state_file, renormalize)?;
    let poly = majorana_mod::polynomial_from_state(&psi);
    let constellation = majorana_mod::find_roots(&poly)?;
    let constellation = majorana_mod::to_sphere(&constellation);
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"two_j\": {},\n", constellation.two_j));
    out.push_str(&format!(
        "  \"infinity_count\": {},\n",
        constellation.infinity_count
    ));
    out.push_str("  \"roots\": [\n");
    for (i, z) in constellation.finite_roots.iter().enumerate() {
        let sep = if i + 1 < constellation.finite_roots.len() {
            ","
        } else {
            ""
        };
        out.push_str(&format!(
            "    {{\"re\": {}, \"im\": {}}}{sep}\n",
            f(z.re),
            f(z.im)
        ));
    }
    out.push_str("  ],\n  \"stars\": [\n");
    for (i, s) in constellation.sphere_points.iter().enumerate() {
        let sep = if i + 1 < constellation.sphere_points.len() {
            ","
        } else {
            ""
        };
        out.push_str(&format!(
            "    {{\"theta\": {}, \"phi\": {}}}{sep}\n",
            f(s.theta()),
            f(s.phi())
        ));
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

pub fn phase(
    chi0: f64,
    chi1: f64,
    chi2: f64,
    theta0: f64,
    phi0: f64,
    dt: f64,
    steps: usize,
) -> Result<String, AppError> {
    let c = Couplings::new(chi0, chi1, chi2);
    let traj = integrate_rk4(
        ClassicalState {
            theta: theta0,
            phi: phi0,
            t: 0.0,
        },
        c,
        dt,
        steps,
    )?;
    let mut out = String::from("t,theta,phi,energy\n");
    for p in &traj.points {
        out.push_str(&format!(
            "{},{},{},{}\n",
            f(p.t),
            f(p.theta),
            f(p.phi),
            f(classical_energy(p.theta, p.phi, c))
        ));
    }
    Ok(out)
}

pub fn survival(
    state_file: &Path,
    renormalize: bool,
    chi0: f64,
    chi1: f64,
    chi2: f64,
    t: RangeSpec,
) -> Result<String, AppError> {
    let psi = read_state(state_file, renormalize)?;
    let h = model::triaxis_hamiltonian(psi.spin(), Couplings::new(chi0, chi1, chi2));
    let times = t.values();
    let probs = survival_curve(&psi, &h, &times)?;
    let mut out = String::from("t,P\n");
    for (&tv, &p) in times.iter().zip(&probs) {
        out.push_str(&format!("{},{}\n", f(tv), f(p)));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn state(
    spin: SpinArg,
    kind: StateKind,
    theta0: f64,
    phi0: f64,
    m: Option<f64>,
    mu: Option<f64>,
    nu: Option<f64>,
    mu0: f64,
    mu1: f64,
    mu2: f64,
) -> Result<String, AppError> {
    let spin = spin.resolve()?;
    let psi: SpinState = match kind {
        StateKind::Coherent => coherent_state(spin, BlochDirection::new(theta0, phi0)),
        StateKind::Dicke => {
            let m = m.ok_or_else(|| AppError::validation("kind dicke requires --m"))?;
            dicke_state(spin, m)?
        }
        StateKind::Oat => {
            let mu = mu.ok_or_else(|| AppError::validation("kind oat requires --mu"))?;
            oat_state(spin, mu)
        }
        StateKind::Tact => {
            let nu = nu.ok_or_else(|| AppError::validation("kind tact requires --nu"))?;
            tact_state(spin, nu)?
        }
        StateKind::Triaxis => {
            let init = if theta0 == 0.0 && phi0 == 0.0 {
                None
            } else {
                Some(BlochDirection::new(theta0, phi0))
            };
            triaxis_state(spin, TwistParams::new(mu0, mu1, mu2), init)?
        }
    };
    Ok(write_state_string(&psi))
}

fn read_state(path: &Path, renormalize: bool) -> Result<SpinState, AppError> {
    read_state_file(path, renormalize).map_err(AppError::from)
}
