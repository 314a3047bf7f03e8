//! Integrable coupling trajectories for `ybrg traj`.
//!
//! The anisotropic trajectory is the closed-form coupling family at
//! `phi(t) = c - a t` with `a = -2u/pi`; the SU(2) one is `J = pi/t` with
//! `phi = cot(J/2)`.

use std::io::Write;

use crate::couplings::{
    check_constraint, couplings_from_spectral, rg_slope, su2_coupling, su2_spectral, Branch, CouplingPair,
};
use crate::error::{Error, Result};
use crate::report::fmt_f64;
use crate::rgflow::{conserved_quantity, integrable_phi};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajConfig {
    pub u: f64,
    pub c: f64,
    pub t0: f64,
    pub t1: f64,
    pub samples: usize,
    pub branch: Branch,
    pub su2: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajRow {
    pub t: f64,
    pub pair: CouplingPair,
    pub phi: f64,
    pub constraint_residual: f64,
    pub conserved_q: f64,
}

pub const CSV_HEADER: [&str; 6] = ["t", "j_par", "j_perp", "phi", "constraint_residual", "conserved_q"];

/// `samples + 1` equally spaced times from `t0` to exactly `t1`.
pub fn sample_times(t0: f64, t1: f64, samples: usize) -> Vec<f64> {
    (0..=samples)
        .map(|k| {
            if k == samples {
                t1
            } else {
                t0 + (t1 - t0) * k as f64 / samples as f64
            }
        })
        .collect()
}

pub fn trajectory(cfg: &TrajConfig) -> Result<Vec<TrajRow>> {
    if cfg.samples == 0 {
        return Err(Error::DomainError("samples must be at least 1".into()));
    }
    let a = rg_slope(cfg.u);
    sample_times(cfg.t0, cfg.t1, cfg.samples)
        .into_iter()
        .map(|t| {
            let (pair, phi, u) = if cfg.su2 {
                let j = su2_coupling(t)?;
                (CouplingPair::new(j, j), su2_spectral(j)?, 0.0)
            } else {
                let phi = integrable_phi(t, a, cfg.c);
                (couplings_from_spectral(cfg.u, phi, cfg.branch)?, phi, cfg.u)
            };
            Ok(TrajRow {
                t,
                pair,
                phi,
                constraint_residual: check_constraint(pair, u),
                conserved_q: conserved_quantity(pair),
            })
        })
        .collect()
}

/// Header plus one LF-terminated record per row, numbers with 17 significant digits.
pub fn write_csv<W: Write>(rows: &[TrajRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            fmt_f64(r.t),
            fmt_f64(r.pair.j_par),
            fmt_f64(r.pair.j_perp),
            fmt_f64(r.phi),
            fmt_f64(r.constraint_residual),
            fmt_f64(r.conserved_q),
        ])?;
    }
    w.flush()?;
    Ok(())
}
