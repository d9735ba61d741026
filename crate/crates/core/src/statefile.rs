//! Plain-text state files, shared with the command line:
//!
//! ```text
//! two_j = 4
//! 1.0000000000000000e0 0.0000000000000000e0
//! ...                                        (2j+1 lines, ascending m)
//! ```
//!
//! Reading rejects input whose norm deviates from 1 by more than 1e-8
//! unless renormalization is requested.

use num_complex::Complex64;

use crate::spinalg::{Spin, SpinState};
use crate::{Error, Result};

/// Norm tolerance accepted without renormalization.
pub const FILE_NORM_TOL: f64 = 1e-8;

/// Serializes a state (17 significant digits, `\n` line endings).
pub fn write_state_string(psi: &SpinState) -> String {
    let mut out = String::with_capacity(32 * (psi.dim() + 1));
    out.push_str(&format!("two_j = {}\n", psi.spin().two_j()));
    for amp in psi.amplitudes() {
        out.push_str(&format!("{:.16e} {:.16e}\n", amp.re, amp.im));
    }
    out
}

/// Parses a state file. With `renormalize` the amplitudes are rescaled to
/// unit norm; otherwise the norm must already be within 1e-8 of 1.
pub fn parse_state(text: &str, renormalize: bool) -> Result<SpinState> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::StateFile("empty file".into()))?;
    let two_j = header
        .strip_prefix("two_j")
        .map(|rest| rest.trim_start().strip_prefix('=').unwrap_or(rest).trim())
        .ok_or_else(|| Error::StateFile(format!("expected `two_j = <int>`, got `{header}`")))?
        .parse::<u32>()
        .map_err(|e| Error::StateFile(format!("bad two_j in `{header}`: {e}")))?;
    let spin = Spin::from_two_j(two_j);
    let mut amplitudes = Vec::with_capacity(spin.dim());
    for (i, line) in lines.enumerate() {
        let mut parts = line.split_whitespace();
        let re = parts
            .next()
            .ok_or_else(|| Error::StateFile(format!("line {}: missing real part", i + 2)))?
            .parse::<f64>()
            .map_err(|e| Error::StateFile(format!("line {}: {e}", i + 2)))?;
        let im = parts
            .next()
            .ok_or_else(|| Error::StateFile(format!("line {}: missing imaginary part", i + 2)))?
            .parse::<f64>()
            .map_err(|e| Error::StateFile(format!("line {}: {e}", i + 2)))?;
        if parts.next().is_some() {
            return Err(Error::StateFile(format!(
                "line {}: expected exactly two fields",
                i + 2
            )));
        }
        amplitudes.push(Complex64::new(re, im));
    }
    if amplitudes.len() != spin.dim() {
        return Err(Error::StateFile(format!(
            "expected {} amplitude lines for two_j = {two_j}, found {}",
            spin.dim(),
            amplitudes.len()
        )));
    }
    if renormalize {
        return SpinState::normalized(spin, amplitudes);
    }
    let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
    if (norm_sq.sqrt() - 1.0).abs() > FILE_NORM_TOL {
        return Err(Error::StateFile(format!(
            "state norm {:.17e} deviates from 1 by more than {FILE_NORM_TOL:.0e}; pass --renormalize to rescale",
            norm_sq.sqrt()
        )));
    }
    // small residual rescale keeps the in-memory invariant at 1e-12
    SpinState::normalized(spin, amplitudes)
}

/// Reads a state file from disk.
pub fn read_state_file(path: &std::path::Path, renormalize: bool) -> Result<SpinState> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    parse_state(&text, renormalize)
}

/// Writes a state file to disk.
pub fn write_state_file(path: &std::path::Path, psi: &SpinState) -> Result<()> {
    std::fs::write(path, write_state_string(psi))
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))
}
