//! Command-line front end: every pipeline of the library behind one binary
//! with deterministic CSV/JSON/state-file output.
//!
//! Exit codes: 0 success, 2 flag/input validation failure (no output file is
//! touched), 1 numerical failure.

mod commands;
mod fmt;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{AppError, ErrorKind};

#[derive(Parser)]
#[command(
    name = "spinsqueeze",
    version,
    about = "Collective-spin twisting toolkit: spectra, squeezing scans, Husimi grids, \
             Majorana constellations, classical trajectories",
    after_help = "Output formats are documented in FORMATS.md. All floats are printed with \
                  17 significant digits; identical invocations produce byte-identical files."
)]
struct Cli {
    /// Worker threads for parallel scans (defaults to the rayon heuristic).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// Spin given either as a decimal j or as the exact integer 2j.
#[derive(Args, Debug, Clone)]
pub struct SpinArg {
    /// Spin j as a decimal (e.g. 10 or 1.5).
    #[arg(long, conflicts_with = "two_j")]
    j: Option<f64>,
    /// Spin as the integer 2j (exact half-integers).
    #[arg(long)]
    two_j: Option<u32>,
}

/// `from:to:count` scan grammar shared by every sweep flag.
#[derive(Debug, Clone, Copy)]
pub struct RangeSpec {
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

impl std::str::FromStr for RangeSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected from:to:count, got `{s}`"));
        }
        let from: f64 = parts[0].parse().map_err(|e| format!("bad `from`: {e}"))?;
        let to: f64 = parts[1].parse().map_err(|e| format!("bad `to`: {e}"))?;
        let count: usize = parts[2].parse().map_err(|e| format!("bad `count`: {e}"))?;
        if count == 0 {
            return Err("count must be ≥ 1".to_string());
        }
        if !from.is_finite() || !to.is_finite() {
            return Err("range endpoints must be finite".to_string());
        }
        Ok(RangeSpec { from, to, count })
    }
}

impl RangeSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.from];
        }
        (0..self.count)
            .map(|i| self.from + (self.to - self.from) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum SqueezeMode {
    Oat,
    Tact,
    Triaxis,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum StateKind {
    Coherent,
    Dicke,
    Oat,
    Tact,
    Triaxis,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue sweep of the rotated Hamiltonian over μ₀ = χ₀/χ.
    /// CSV columns: mu0,k,E_k,parity.
    Spectrum {
        #[command(flatten)]
        spin: SpinArg,
        /// Fixed two-axis scale χ > 0.
        #[arg(long)]
        chi: f64,
        /// μ₀ grid as from:to:count.
        #[arg(long)]
        mu0: RangeSpec,
    },
    /// Squeezing-parameter scan. CSV columns: <param>,xi2,phi_opt,sx,sy,sz.
    /// Rows where the mean spin vanishes (frame undefined) carry `nan`.
    Squeeze {
        #[command(flatten)]
        spin: SpinArg,
        #[arg(long, value_enum)]
        mode: SqueezeMode,
        /// OAT twist grid from:to:count (mode oat).
        #[arg(long)]
        mu: Option<RangeSpec>,
        /// TACT twist grid from:to:count (mode tact).
        #[arg(long)]
        nu: Option<RangeSpec>,
        /// Fixed μ₀ (mode triaxis).
        #[arg(long)]
        mu0: Option<f64>,
        /// μ₁ grid from:to:count (mode triaxis).
        #[arg(long)]
        mu1: Option<RangeSpec>,
        /// Fixed μ₂ (mode triaxis).
        #[arg(long, default_value_t = 0.0)]
        mu2: f64,
    },
    /// Husimi-Q on a Gauss–Legendre × uniform grid.
    /// CSV columns: theta,phi,Q (plus x,y,z with --cartesian), θ-major.
    Husimi {
        /// State file (see the `state` subcommand).
        #[arg(long)]
        state_file: PathBuf,
        /// Accept and rescale a state whose norm is off by more than 1e-8.
        #[arg(long)]
        renormalize: bool,
        #[arg(long, default_value_t = 64)]
        n_theta: usize,
        #[arg(long, default_value_t = 128)]
        n_phi: usize,
        /// Also emit x ≡ Q sinθcosφ, y ≡ Q sinθsinφ, z ≡ Q cosθ.
        #[arg(long)]
        cartesian: bool,
    },
    /// Majorana constellation of a state, as JSON
    /// {two_j, infinity_count, roots: [{re,im}], stars: [{theta,phi}]}.
    Majorana {
        #[arg(long)]
        state_file: PathBuf,
        #[arg(long)]
        renormalize: bool,
    },
    /// Classical RK4 trajectory on the sphere. CSV columns: t,theta,phi,energy.
    Phase {
        #[arg(long)]
        chi0: f64,
        #[arg(long, default_value_t = 0.0)]
        chi1: f64,
        #[arg(long, default_value_t = 0.0)]
        chi2: f64,
        #[arg(long)]
        theta0: f64,
        #[arg(long)]
        phi0: f64,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Survival probability P(t) under the tri-axis Hamiltonian.
    /// CSV columns: t,P.
    Survival {
        #[arg(long)]
        state_file: PathBuf,
        #[arg(long)]
        renormalize: bool,
        #[arg(long)]
        chi0: f64,
        #[arg(long, default_value_t = 0.0)]
        chi1: f64,
        #[arg(long, default_value_t = 0.0)]
        chi2: f64,
        /// Time grid from:to:count.
        #[arg(long)]
        t: RangeSpec,
    },
    /// Emit a generated state in the state-file format
    /// (`two_j = <int>` then one `re im` line per amplitude, ascending m).
    State {
        #[command(flatten)]
        spin: SpinArg,
        #[arg(long, value_enum)]
        kind: StateKind,
        /// Polar angle of the coherent direction (kinds coherent, triaxis).
        #[arg(long, default_value_t = 0.0)]
        theta0: f64,
        /// Azimuth of the coherent direction (kinds coherent, triaxis).
        #[arg(long, default_value_t = 0.0)]
        phi0: f64,
        /// Projection m (kind dicke).
        #[arg(long)]
        m: Option<f64>,
        /// OAT twist μ (kind oat).
        #[arg(long)]
        mu: Option<f64>,
        /// TACT twist ν (kind tact).
        #[arg(long)]
        nu: Option<f64>,
        /// Twist parameters (kind triaxis).
        #[arg(long, default_value_t = 0.0)]
        mu0: f64,
        #[arg(long, default_value_t = 0.0)]
        mu1: f64,
        #[arg(long, default_value_t = 0.0)]
        mu2: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be ≥ 1");
            std::process::exit(2);
        }
        // ignore the error if a pool already exists (repeat initialization)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }

    let result: Result<String, AppError> = match cli.command {
        Command::Spectrum { spin, chi, mu0 } => commands::spectrum(spin, chi, mu0),
        Command::Squeeze {
            spin,
            mode,
            mu,
            nu,
            mu0,
            mu1,
            mu2,
        } => commands::squeeze(spin, mode, mu, nu, mu0, mu1, mu2),
        Command::Husimi {
            state_file,
            renormalize,
            n_theta,
            n_phi,
            cartesian,
        } => commands::husimi(&state_file, renormalize, n_theta, n_phi, cartesian),
        Command::Majorana {
            state_file,
            renormalize,
        } => commands::majorana(&state_file, renormalize),
        Command::Phase {
            chi0,
            chi1,
            chi2,
            theta0,
            phi0,
            dt,
            steps,
        } => commands::phase(chi0, chi1, chi2, theta0, phi0, dt, steps),
        Command::Survival {
            state_file,
            renormalize,
            chi0,
            chi1,
            chi2,
            t,
        } => commands::survival(&state_file, renormalize, chi0, chi1, chi2, t),
        Command::State {
            spin,
            kind,
            theta0,
            phi0,
            m,
            mu,
            nu,
            mu0,
            mu1,
            mu2,
        } => commands::state(spin, kind, theta0, phi0, m, mu, nu, mu0, mu1, mu2),
    };

    match result {
        Ok(output) => {
            if let Some(path) = cli.out {
                if let Err(e) = std::fs::write(&path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(1);
                }
            } else {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(output.as_bytes()).is_err() {
                    std::process::exit(1);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(match e.kind {
                ErrorKind::Validation => 2,
                ErrorKind::Numerical => 1,
            });
        }
    }
}
