//! Verification suites run by `ybrg verify`.
//!
//! Each suite draws its random configurations from its own ChaCha stream
//! derived from the seed, so a suite gives the same numbers whether it runs
//! alone or as part of `all`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::couplings::{
    check_constraint, couplings_from_spectral, kondo_temperature, rg_slope, spectral_from_couplings, Branch,
    CouplingPair, KondoScheme, SpectralParams, SpectralProfile,
};
use crate::error::Result;
use crate::report::{Bound, Check};
use crate::rgflow::{
    compare_su2, compare_with_integrable, conserved_drift, integrable_phi, integrate_rg, integrate_su2,
    jpar_phi_derivative, su2_closed_form_residual,
};
use crate::smatrix::{
    inverse_property_residual, unitarity_defect, ybe_impurity_residual, ybe_particle_residual,
    ybe_particle_residual_with, PairArgument, SMatrixArgs,
};
use crate::tensor::ChainSpec;
use crate::transport::{integrability_witness, TransportConfig};
use crate::wavefunction::{
    consistency_residual, extend_one_particle, pbc_residual, roundtrip_residual, uniform_grid, AmplitudeContext,
    AmplitudeField, AmplitudeVector, DEFAULT_GRID_POINTS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ybe,
    Transport,
    Couplings,
    Rgflow,
    Qkz1,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Ybe,
                Suite::Transport,
                Suite::Couplings,
                Suite::Rgflow,
                Suite::Qkz1,
            ],
            s => vec![s],
        }
    }

    fn stream(self) -> u64 {
        self as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Linear,
    Sine,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub u: f64,
    pub a: f64,
    pub c: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub n: usize,
    pub tol: f64,
    pub profile: ProfileKind,
    pub eps: f64,
    pub seed: u64,
}

/// Whether the configured slope agrees with `a = -2u/pi`.
#[derive(Debug, Clone, Serialize)]
pub struct Identification {
    pub expected_a: f64,
    pub relative_mismatch: f64,
    pub holds: bool,
}

pub const IDENTIFICATION_REPORT_RTOL: f64 = 1e-3;

impl VerifyConfig {
    pub fn profile(&self) -> SpectralProfile {
        match self.profile {
            ProfileKind::Linear => SpectralProfile::Linear { a: self.a, c: self.c },
            ProfileKind::Sine => SpectralProfile::Sine {
                a: self.a,
                c: self.c,
                eps: self.eps,
            },
        }
    }

    pub fn identification(&self) -> Identification {
        let expected_a = rg_slope(self.u);
        let relative_mismatch = ((self.a - expected_a) / expected_a).abs();
        Identification {
            expected_a,
            relative_mismatch,
            holds: relative_mismatch < IDENTIFICATION_REPORT_RTOL,
        }
    }

    /// Config echo for the report.
    pub fn to_value(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        v["rg_identification"] = serde_json::to_value(self.identification()).expect("serializes");
        v
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(suite.stream());
        rng
    }
}

pub fn run(cfg: &VerifyConfig) -> Vec<Check> {
    if let Err(e) = SpectralParams::new(cfg.a, cfg.c, cfg.u, cfg.length) {
        return vec![Check::failed("config", cfg.tol, Bound::Upper, &e)];
    }
    cfg.suite
        .expand()
        .into_iter()
        .flat_map(|s| match s {
            Suite::Ybe => ybe(cfg),
            Suite::Transport => transport(cfg),
            Suite::Couplings => couplings(),
            Suite::Rgflow => rgflow(cfg),
            Suite::Qkz1 => qkz1(cfg),
            Suite::All => unreachable!("expanded"),
        })
        .collect()
}

/// Evaluates `f`, recording a domain error as a failed check.
fn check_with(
    name: &str,
    threshold: f64,
    bound: Bound,
    f: impl FnOnce() -> Result<(f64, Vec<(&'static str, serde_json::Value)>)>,
) -> Check {
    match f() {
        Ok((value, params)) => params
            .into_iter()
            .fold(Check::new(name, value, threshold, bound), |c, (k, v)| c.param(k, v)),
        Err(e) => Check::failed(name, threshold, bound, &e),
    }
}

const RANDOM_CONFIGS: usize = 100;

fn ybe(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = cfg.rng(Suite::Ybe);
    let profile = cfg.profile();
    let u = cfg.u;
    let mut out = Vec::new();

    let samples: Vec<(f64, f64)> = (0..RANDOM_CONFIGS)
        .map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(0.05..1.5)))
        .collect();
    out.push(check_with("smatrix.unitarity", 1e-13, Bound::Upper, || {
        let worst = samples.iter().try_fold(0.0f64, |acc, &(x, u)| {
            let (norm, cross) = unitarity_defect(SMatrixArgs::new(x, u)?);
            Ok::<_, crate::Error>(acc.max(norm).max(cross))
        })?;
        Ok((worst, vec![("configs", samples.len().into())]))
    }));
    out.push(check_with("smatrix.inverse", 1e-13, Bound::Upper, || {
        let chain = ChainSpec::new(2)?;
        let worst = samples.iter().try_fold(0.0f64, |acc, &(x, u)| {
            Ok::<_, crate::Error>(acc.max(inverse_property_residual(x, u, chain, 1, 2)?))
        })?;
        Ok((worst, vec![("configs", samples.len().into())]))
    }));

    let triples: Vec<[f64; 3]> = (0..RANDOM_CONFIGS)
        .map(|_| std::array::from_fn(|_| rng.gen_range(-2.0..2.0)))
        .collect();
    let name: serde_json::Value = profile.name().into();
    out.push(check_with("ybe.impurity", 1e-12, Bound::Upper, || {
        let worst = triples.iter().try_fold(0.0f64, |acc, z| {
            Ok::<_, crate::Error>(acc.max(ybe_impurity_residual(z[0], z[1], &profile, u)?))
        })?;
        Ok((
            worst,
            vec![("configs", triples.len().into()), ("profile", name.clone())],
        ))
    }));
    out.push(check_with("ybe.particle", 1e-12, Bound::Upper, || {
        let worst = triples.iter().try_fold(0.0f64, |acc, z| {
            Ok::<_, crate::Error>(acc.max(ybe_particle_residual(z[0], z[1], z[2], &profile, u)?))
        })?;
        Ok((
            worst,
            vec![("configs", triples.len().into()), ("profile", name.clone())],
        ))
    }));
    out.push(check_with("ybe.particle_skewed_control", 1e-3, Bound::Lower, || {
        let worst = triples.iter().try_fold(0.0f64, |acc, z| {
            Ok::<_, crate::Error>(acc.max(ybe_particle_residual_with(
                z[0],
                z[1],
                z[2],
                &profile,
                u,
                PairArgument::Skewed(2.0),
            )?))
        })?;
        Ok((worst, vec![("configs", triples.len().into())]))
    }));

    let n = cfg.n.min(3);
    let zsets: Vec<Vec<f64>> = (0..10)
        .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    out.push(check_with(
        "wavefunction.path_independence",
        1e-11,
        Bound::Upper,
        || {
            let worst = zsets.iter().try_fold(0.0f64, |acc, zs| {
                Ok::<_, crate::Error>(acc.max(consistency_residual(&AmplitudeContext::new(zs, &profile, u)?)?))
            })?;
            Ok((worst, vec![("n", n.into()), ("configs", zsets.len().into())]))
        },
    ));
    if n >= 2 {
        out.push(check_with("wavefunction.skewed_control", 1e-3, Bound::Lower, || {
            let worst = zsets.iter().try_fold(0.0f64, |acc, zs| {
                let ctx = AmplitudeContext::new(zs, &profile, u)?.with_pair_rule(PairArgument::Skewed(2.0));
                Ok::<_, crate::Error>(acc.max(consistency_residual(&ctx)?))
            })?;
            Ok((worst, vec![("n", n.into())]))
        }));
    }
    out
}

fn transport(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = cfg.rng(Suite::Transport);
    let configs = if cfg.n >= 4 { 3 } else { 10 };
    let zsets: Vec<Vec<f64>> = (0..configs)
        .map(|_| (0..cfg.n).map(|_| rng.gen_range(-1.0..2.0)).collect())
        .collect();
    let kappa = cfg.a * cfg.length;
    let reports: Result<Vec<_>> = zsets
        .iter()
        .map(|zs| {
            let tc = TransportConfig::new(zs.clone(), cfg.profile(), cfg.u, cfg.length, kappa)?;
            integrability_witness(&tc, cfg.tol)
        })
        .collect();
    let params = |c: Check| {
        c.param("n", cfg.n)
            .param("configs", configs)
            .param("profile", cfg.profile().name())
    };
    match reports {
        Ok(reports) => {
            let comm = reports.iter().map(|r| r.max_residual).fold(0.0, f64::max);
            let shift = reports.iter().map(|r| r.shift_residual).fold(0.0, f64::max);
            vec![
                params(Check::new("transport.commutation", comm, cfg.tol, Bound::Upper)),
                params(Check::new("transport.shift_linearity", shift, cfg.tol, Bound::Upper)),
            ]
        }
        Err(e) => vec![params(Check::failed(
            "transport.commutation",
            cfg.tol,
            Bound::Upper,
            &e,
        ))],
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

fn couplings() -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check_with("couplings.roundtrip", 1e-11, Bound::Upper, || {
        let mut worst = 0.0f64;
        for u in linspace(0.05, 1.4, 15) {
            for phi in linspace(0.1, 5.0, 15) {
                let back = spectral_from_couplings(couplings_from_spectral(u, phi, Branch::Plus)?)?;
                worst = worst.max((back.u - u).abs()).max((back.phi - phi).abs());
            }
        }
        Ok((
            worst,
            vec![
                ("u_range", vec![0.05, 1.4].into()),
                ("phi_range", vec![0.1, 5.0].into()),
            ],
        ))
    }));
    out.push(check_with("couplings.constraint", 1e-13, Bound::Upper, || {
        let mut worst = 0.0f64;
        for u in linspace(0.01, FRAC_PI_2, 20) {
            for phi in linspace(-6.0, 6.0, 41) {
                for branch in [Branch::Plus, Branch::Minus] {
                    worst = worst.max(check_constraint(couplings_from_spectral(u, phi, branch)?, u));
                }
            }
        }
        Ok((worst, vec![]))
    }));
    out.push(check_with("couplings.kondo_temperature", 1e-15, Bound::Upper, || {
        let mut worst = 0.0f64;
        for j in [0.1, 0.25, 0.5, 1.0] {
            for cutoff in [1.0, 10.0] {
                let bethe = kondo_temperature(1.0 / j, cutoff, KondoScheme::Bethe)?;
                let wilson = kondo_temperature(j, cutoff, KondoScheme::Wilson)?;
                worst = worst.max(((bethe - wilson) / wilson).abs());
            }
        }
        Ok((worst, vec![]))
    }));
    out
}

/// Max relative deviation of the RK4 flow from the integrable trajectory, with
/// couplings of order `25 u` over the run.
pub fn anisotropic_deviation(u: f64) -> Result<f64> {
    let c = 1.0986;
    let a = rg_slope(u);
    // towards growing couplings: phi runs from c down to 0.5
    let t1 = (0.5 - c) * PI / (2.0 * u);
    let p0 = couplings_from_spectral(u, integrable_phi(0.0, a, c), Branch::Plus)?;
    let traj = integrate_rg(p0, 0.0, t1, 2000, a, u)?;
    Ok(compare_with_integrable(&traj, u, a, c, Branch::Plus)?.max_rel_dev)
}

fn rgflow(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check_with("rgflow.conserved_drift", 1e-10, Bound::Upper, || {
        let traj = integrate_rg(CouplingPair::new(0.3, 0.1), 0.0, 10.0, 10_000, rg_slope(cfg.u), cfg.u)?;
        Ok((conserved_drift(&traj), vec![("steps", 10_000.into())]))
    }));
    out.push(check_with("rgflow.su2_closed_form", 1e-14, Bound::Upper, || {
        let worst = linspace(0.5, 100.0, 400)
            .map(|t| su2_closed_form_residual(t) * t * t / PI)
            .fold(0.0, f64::max);
        Ok((worst, vec![]))
    }));
    out.push(check_with("rgflow.su2_rk4", 1e-8, Bound::Upper, || {
        let samples = integrate_su2(PI, 1.0, 10.0, 100_000)?;
        Ok((compare_su2(&samples)?, vec![("steps", 100_000.into())]))
    }));
    let (u_big, u_small) = (0.02, 0.002);
    let deviations = anisotropic_deviation(u_big).and_then(|d1| Ok((d1, anisotropic_deviation(u_small)?)));
    out.push(check_with("rgflow.anisotropic_deviation", 1e-3, Bound::Upper, || {
        let (d1, _) = deviations.clone()?;
        Ok((d1, vec![("u", u_big.into())]))
    }));
    out.push(check_with("rgflow.quadratic_scaling", 20.0, Bound::Upper, || {
        let (d1, d2) = deviations.clone()?;
        let ratio = d1 / d2;
        Ok((
            (ratio - 100.0).abs(),
            vec![("ratio", ratio.into()), ("u", vec![u_big, u_small].into())],
        ))
    }));
    out.push(check_with("rgflow.toulouse", 1e-12, Bound::Upper, || {
        let mut worst = 0.0f64;
        for phi in linspace(0.1, 4.0, 20) {
            for branch in [Branch::Plus, Branch::Minus] {
                worst = worst.max(jpar_phi_derivative(FRAC_PI_2, phi, 1e-3, branch)?.abs());
            }
        }
        Ok((worst, vec![]))
    }));
    out
}

fn qkz1(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = cfg.rng(Suite::Qkz1);
    let profile = cfg.profile();
    let periods = 10;
    let values: Vec<AmplitudeVector> = (0..DEFAULT_GRID_POINTS)
        .map(|_| {
            AmplitudeVector(
                (0..4)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
        })
        .collect();
    let field = AmplitudeField::from_window(
        0.0,
        cfg.length,
        uniform_grid(0.0, cfg.length, DEFAULT_GRID_POINTS),
        values,
    );
    let extended = field
        .clone()
        .and_then(|f| extend_one_particle(&f, periods, &profile, cfg.u));
    let common = |c: Check| c.param("periods", periods).param("grid", DEFAULT_GRID_POINTS);
    vec![
        common(check_with("qkz1.pbc_residual", 1e-12, Bound::Upper, || {
            Ok((pbc_residual(&extended.clone()?, &profile, cfg.u)?, vec![]))
        })),
        common(check_with("qkz1.roundtrip", 1e-11, Bound::Upper, || {
            Ok((roundtrip_residual(&field.clone()?, periods, &profile, cfg.u)?, vec![]))
        })),
        common(check_with("qkz1.norm_preservation", 1e-12, Bound::Upper, || {
            let ext = extended.clone()?;
            let mut worst = 0.0f64;
            for n in -(periods as i64)..=periods as i64 {
                for k in 0..ext.grid().len() {
                    let d = ext.value(n, k).expect("in range").norm() - ext.value(0, k).expect("in range").norm();
                    worst = worst.max(d.abs());
                }
            }
            Ok((worst, vec![]))
        })),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(suite: Suite) -> VerifyConfig {
        VerifyConfig {
            suite,
            u: 0.5,
            a: rg_slope(0.5),
            c: 0.0,
            length: 1.0,
            n: 2,
            tol: 1e-9,
            profile: ProfileKind::Linear,
            eps: 0.1,
            seed: 0,
        }
    }

    #[test]
    fn default_configuration_passes() {
        let checks = run(&base(Suite::All));
        for c in &checks {
            assert!(c.pass, "{c:?}");
        }
        assert!(checks.len() > 15);
    }

    #[test]
    fn sine_profile_fails_transport_only_by_residual() {
        let mut cfg = base(Suite::Transport);
        cfg.profile = ProfileKind::Sine;
        let checks = run(&cfg);
        let comm = checks.iter().find(|c| c.name == "transport.commutation").unwrap();
        assert!(!comm.pass);
        assert!(comm.value > 1e-3);
    }

    #[test]
    fn invalid_anisotropy_is_reported() {
        let mut cfg = base(Suite::Ybe);
        cfg.u = 2.0;
        let checks = run(&cfg);
        assert_eq!(checks.len(), 1);
        assert!(!checks[0].pass);
        assert!(checks[0].value.is_nan());
        assert!(checks[0].params.contains_key("error"));
    }

    #[test]
    fn suites_are_independent_of_selection() {
        let alone = run(&base(Suite::Qkz1));
        let all = run(&base(Suite::All));
        let tail: Vec<_> = all.iter().filter(|c| c.name.starts_with("qkz1.")).cloned().collect();
        assert_eq!(alone, tail);
    }

    #[test]
    #[allow(clippy::approx_constant)] // rounded slope as typed on a command line
    fn identification_record() {
        let mut cfg = base(Suite::Rgflow);
        cfg.a = -0.3183;
        assert!(cfg.identification().holds);
        cfg.a = -0.5;
        assert!(!cfg.identification().holds);
    }
}
