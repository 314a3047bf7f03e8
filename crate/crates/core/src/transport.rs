//! Transport operators `Z_j` and the commutation test that decides
//! integrability of a spectral profile.
//!
//! `Z_j` carries particle `j` once around the periodic system:
//!
//! ```text
//! Z_j = S^{j,j+1}(z_j, z_{j+1}+L) ... S^{jN}(z_j, z_N+L) S^{j0}(z_j) S^{j1}(z_j, z_1) ... S^{j,j-1}(z_j, z_{j-1})
//! ```
//!
//! and consistency of the difference equations requires
//! `Z_i(.., z_j - L, ..) Z_j(z) = Z_j(.., z_i - L, ..) Z_i(z)` for every pair.

use crate::couplings::{check_shift_property, SpectralProfile};
use crate::error::{Error, Result};
use crate::smatrix::xxz_smatrix;
use crate::tensor::{compose, embed_two_site, residual, ChainSpec, ComplexMatrix};

/// Largest particle count supported by the transport checks.
pub const MAX_TRANSPORT_PARTICLES: usize = 5;

/// Default pass threshold for commutation and shift residuals.
pub const DEFAULT_TOL_PASS: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct TransportConfig {
    zs: Vec<f64>,
    pub spectral: SpectralProfile,
    pub u: f64,
    pub length: f64,
    pub kappa: f64,
    chain: ChainSpec,
}

impl TransportConfig {
    pub fn new(zs: Vec<f64>, spectral: SpectralProfile, u: f64, length: f64, kappa: f64) -> Result<Self> {
        if zs.is_empty() || zs.len() > MAX_TRANSPORT_PARTICLES {
            return Err(Error::ChainSize {
                got: zs.len(),
                max: MAX_TRANSPORT_PARTICLES,
            });
        }
        if !(length > 0.0) {
            return Err(Error::DomainError(format!(
                "system size must be positive, got {length}"
            )));
        }
        let chain = ChainSpec::new(zs.len())?;
        Ok(Self {
            zs,
            spectral,
            u,
            length,
            kappa,
            chain,
        })
    }

    pub fn n_particles(&self) -> usize {
        self.zs.len()
    }

    pub fn zs(&self) -> &[f64] {
        &self.zs
    }

    pub fn chain(&self) -> ChainSpec {
        self.chain
    }

    /// Copy with `z_particle` moved by `delta` (1-based particle index).
    pub fn shifted(&self, particle: usize, delta: f64) -> Result<Self> {
        self.check_particle(particle)?;
        let mut out = self.clone();
        out.zs[particle - 1] += delta;
        Ok(out)
    }

    fn check_particle(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.zs.len() {
            return Err(Error::InvalidParticle {
                index: j,
                n_particles: self.zs.len(),
            });
        }
        Ok(())
    }

    fn phi(&self, particle: usize) -> f64 {
        self.spectral.eval(self.zs[particle - 1])
    }
}

/// `Z_j` on the full chain, factors composed in the printed order.
pub fn transport_operator(j: usize, cfg: &TransportConfig) -> Result<ComplexMatrix> {
    cfg.check_particle(j)?;
    let n = cfg.n_particles();
    let chain = cfg.chain;
    let f_j = cfg.phi(j);
    let mut factors = Vec::with_capacity(n);

    for k in j + 1..=n {
        let f_k = cfg.spectral.eval(cfg.zs[k - 1] + cfg.length);
        factors.push(embed_two_site(&xxz_smatrix(f_j - f_k, cfg.u)?, j, k, chain)?);
    }
    factors.push(embed_two_site(&xxz_smatrix(f_j, cfg.u)?, j, 0, chain)?);
    for k in 1..j {
        factors.push(embed_two_site(&xxz_smatrix(f_j - cfg.phi(k), cfg.u)?, j, k, chain)?);
    }
    compose(&factors)
}

/// `|| Z_i(z; z_j - L) Z_j(z) - Z_j(z; z_i - L) Z_i(z) ||_F`.
pub fn commutation_residual(i: usize, j: usize, cfg: &TransportConfig) -> Result<f64> {
    cfg.check_particle(i)?;
    cfg.check_particle(j)?;
    if i == j {
        return Err(Error::DomainError("commutation needs two distinct particles".into()));
    }
    let lhs = transport_operator(i, &cfg.shifted(j, -cfg.length)?)?.matmul(&transport_operator(j, cfg)?)?;
    let rhs = transport_operator(j, &cfg.shifted(i, -cfg.length)?)?.matmul(&transport_operator(i, cfg)?)?;
    residual(&lhs, &rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Integrable,
    NonIntegrable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrabilityReport {
    /// Max commutation residual over ordered pairs; 0 for a single particle.
    pub max_residual: f64,
    /// Shift-linearity violation of the profile at the configured `z`s.
    pub shift_residual: f64,
    pub tol_pass: f64,
    pub verdict: Verdict,
}

pub fn integrability_witness(cfg: &TransportConfig, tol_pass: f64) -> Result<IntegrabilityReport> {
    let n = cfg.n_particles();
    let mut max_residual = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                max_residual = max_residual.max(commutation_residual(i, j, cfg)?);
            }
        }
    }
    let shift_residual = check_shift_property(&cfg.spectral, cfg.length, cfg.kappa, &cfg.zs);
    // A single particle has nothing to commute with.
    let verdict = if n == 1 || (max_residual < tol_pass && shift_residual < tol_pass) {
        Verdict::Integrable
    } else {
        Verdict::NonIntegrable
    };
    Ok(IntegrabilityReport {
        max_residual,
        shift_residual,
        tol_pass,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_cfg(zs: Vec<f64>, u: f64) -> TransportConfig {
        TransportConfig::new(zs, SpectralProfile::Linear { a: 0.4, c: 0.2 }, u, 1.0, 0.4).unwrap()
    }

    #[test]
    fn single_particle_is_raw_smatrix() {
        let cfg = linear_cfg(vec![0.7], 0.6);
        let z = transport_operator(1, &cfg).unwrap();
        let s = embed_two_site(&xxz_smatrix(0.4 * 0.7 + 0.2, 0.6).unwrap(), 1, 0, cfg.chain()).unwrap();
        assert_eq!(residual(&z, &s).unwrap(), 0.0);
    }

    #[test]
    fn zero_anisotropy_gives_identity() {
        let cfg = linear_cfg(vec![0.3, 1.1], 0.0);
        for j in 1..=2 {
            assert_eq!(transport_operator(j, &cfg).unwrap(), ComplexMatrix::identity(8));
        }
        assert_eq!(commutation_residual(1, 2, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn transport_is_unitary() {
        let cfg = linear_cfg(vec![0.3, 1.1], 0.6);
        for j in 1..=2 {
            let z = transport_operator(j, &cfg).unwrap();
            let zz = z.adjoint().matmul(&z).unwrap();
            assert!(residual(&zz, &ComplexMatrix::identity(8)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn commutation_linear_vs_sine() {
        let cfg = linear_cfg(vec![0.3, 1.1], 0.6);
        assert!(commutation_residual(1, 2, &cfg).unwrap() < 1e-10);

        let sine = TransportConfig::new(
            vec![0.3, 1.1],
            SpectralProfile::Sine {
                a: 0.4,
                c: 0.0,
                eps: 0.1,
            },
            0.6,
            1.0,
            0.4,
        )
        .unwrap();
        assert!(commutation_residual(1, 2, &sine).unwrap() > 1e-3);
    }

    #[test]
    fn witness_verdicts() {
        let one = linear_cfg(vec![0.5], 0.5);
        assert_eq!(
            integrability_witness(&one, DEFAULT_TOL_PASS).unwrap().verdict,
            Verdict::Integrable
        );

        let three = linear_cfg(vec![-0.8, 0.25, 1.3], 0.5);
        let r = integrability_witness(&three, DEFAULT_TOL_PASS).unwrap();
        assert_eq!(r.verdict, Verdict::Integrable, "{r:?}");

        let quad = TransportConfig::new(
            vec![0.3, 1.1],
            SpectralProfile::custom("quadratic", |z| z * z),
            0.5,
            1.0,
            1.0,
        )
        .unwrap();
        let r = integrability_witness(&quad, DEFAULT_TOL_PASS).unwrap();
        assert_eq!(r.verdict, Verdict::NonIntegrable);
        assert!(r.max_residual > 1e-3);
    }

    #[test]
    fn index_errors() {
        let cfg = linear_cfg(vec![0.3, 1.1], 0.6);
        assert!(matches!(
            transport_operator(3, &cfg),
            Err(Error::InvalidParticle { .. })
        ));
        assert!(transport_operator(0, &cfg).is_err());
        assert!(commutation_residual(1, 1, &cfg).is_err());
        assert!(TransportConfig::new(vec![0.0; 6], SpectralProfile::Linear { a: 1.0, c: 0.0 }, 0.5, 1.0, 1.0).is_err());
        assert!(TransportConfig::new(vec![], SpectralProfile::Linear { a: 1.0, c: 0.0 }, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn pole_is_reported() {
        // phi(z_1) = 0 with u = 0 puts S^{10} on its pole
        let cfg = TransportConfig::new(vec![-0.5], SpectralProfile::Linear { a: 0.4, c: 0.2 }, 0.0, 1.0, 0.4).unwrap();
        assert!(matches!(
            transport_operator(1, &cfg),
            Err(Error::SingularSMatrix { .. })
        ));
    }
}
