//! Particle-impurity and particle-particle S-matrices (trigonometric XXZ
//! R-matrix) and residuals for their algebraic identities.
//!
//! Both matrices share the block form
//!
//! ```text
//! | 1 0 0 0 |
//! | 0 b c 0 |      b = sinh(x) / sinh(x + iu)
//! | 0 c b 0 |      c = i sin(u) / sinh(x + iu)
//! | 0 0 0 1 |
//! ```
//!
//! with `x = phi(z_j)` for `S^{j0}` and `x = phi(z_i) - phi(z_j)` for `S^{ij}`.
//! The first superscript is the first tensor factor (see [`crate::tensor`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::couplings::SpectralProfile;
use crate::error::{Error, Result};
use crate::tensor::{compose, embed_two_site, residual, ChainSpec, ComplexMatrix, TwoSiteOperator};

/// Minimum `|sinh(x + iu)|` accepted by the S-matrix constructors.
pub const SINGULARITY_EPS: f64 = 1e-12;

/// Validated S-matrix argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrixArgs {
    f_val: f64,
    u: f64,
}

impl SMatrixArgs {
    pub fn new(f_val: f64, u: f64) -> Result<Self> {
        if !(u > -PI && u < PI) {
            return Err(Error::InvalidAnisotropy(u));
        }
        // |sinh(x + iu)|^2 = sinh^2 x + sin^2 u
        let modulus = f_val.sinh().hypot(u.sin());
        if !(modulus > SINGULARITY_EPS) {
            return Err(Error::SingularSMatrix { f_val, u, modulus });
        }
        Ok(Self { f_val, u })
    }

    pub fn f_val(&self) -> f64 {
        self.f_val
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// The mixing-block entries `(b, c)`.
    pub fn weights(&self) -> (Complex64, Complex64) {
        let x = Complex64::new(self.f_val, 0.0);
        let denom = Complex64::new(self.f_val, self.u).sinh();
        let b = x.sinh() / denom;
        let c = Complex64::new(0.0, self.u.sin()) / denom;
        (b, c)
    }
}

pub fn impurity_smatrix(args: SMatrixArgs) -> TwoSiteOperator {
    let (b, c) = args.weights();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let m = ComplexMatrix::from_rows([
        [one, zero, zero, zero],
        [zero, b, c, zero],
        [zero, c, b, zero],
        [zero, zero, zero, one],
    ]);
    TwoSiteOperator::new(m).expect("4x4 by construction")
}

/// `S(x)` for a raw argument, guarded.
pub fn xxz_smatrix(x: f64, u: f64) -> Result<TwoSiteOperator> {
    SMatrixArgs::new(x, u).map(impurity_smatrix)
}

/// How the particle-particle argument is formed from the two spectral values.
///
/// Only [`PairArgument::Difference`] is consistent; the skewed rule exists for
/// negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PairArgument {
    #[default]
    Difference,
    /// `f_i - k * f_j`.
    Skewed(f64),
}

impl PairArgument {
    pub fn eval(self, f_i: f64, f_j: f64) -> f64 {
        match self {
            Self::Difference => f_i - f_j,
            Self::Skewed(k) => f_i - k * f_j,
        }
    }
}

pub fn particle_smatrix(f_i: f64, f_j: f64, u: f64) -> Result<TwoSiteOperator> {
    xxz_smatrix(f_i - f_j, u)
}

/// `(||b|^2 + |c|^2 - 1|, |b c* + c b*|)` for real arguments.
pub fn unitarity_defect(args: SMatrixArgs) -> (f64, f64) {
    let (b, c) = args.weights();
    let norm = (b.norm_sqr() + c.norm_sqr() - 1.0).abs();
    let cross = (b * c.conj() + c * b.conj()).norm();
    (norm, cross)
}

/// `|| S(-x) S(x) - I ||_F` with both factors embedded on `(slot_a, slot_b)`.
pub fn inverse_property_residual(x: f64, u: f64, chain: ChainSpec, slot_a: usize, slot_b: usize) -> Result<f64> {
    let fwd = embed_two_site(&xxz_smatrix(x, u)?, slot_a, slot_b, chain)?;
    let back = embed_two_site(&xxz_smatrix(-x, u)?, slot_a, slot_b, chain)?;
    residual(&compose([&back, &fwd])?, &ComplexMatrix::identity(chain.dim()))
}

fn embedded(x: f64, u: f64, a: usize, b: usize, chain: ChainSpec) -> Result<ComplexMatrix> {
    embed_two_site(&xxz_smatrix(x, u)?, a, b, chain)
}

/// Residual of `S^{j0} S^{i0} S^{ij} = S^{ij} S^{i0} S^{j0}` on the
/// impurity + two particle chain (`i` = slot 1, `j` = slot 2).
pub fn ybe_impurity_residual(z_i: f64, z_j: f64, spectral: &SpectralProfile, u: f64) -> Result<f64> {
    let chain = ChainSpec::new(2)?;
    let (f_i, f_j) = (spectral.eval(z_i), spectral.eval(z_j));
    let s_i0 = embedded(f_i, u, 1, 0, chain)?;
    let s_j0 = embedded(f_j, u, 2, 0, chain)?;
    let s_ij = embedded(f_i - f_j, u, 1, 2, chain)?;
    let lhs = compose([&s_j0, &s_i0, &s_ij])?;
    let rhs = compose([&s_ij, &s_i0, &s_j0])?;
    residual(&lhs, &rhs)
}

/// Residual of `S^{ij} S^{ik} S^{jk} = S^{jk} S^{ik} S^{ij}` on a three-particle
/// chain (particles in slots 1, 2, 3).
pub fn ybe_particle_residual(z_i: f64, z_j: f64, z_k: f64, spectral: &SpectralProfile, u: f64) -> Result<f64> {
    ybe_particle_residual_with(z_i, z_j, z_k, spectral, u, PairArgument::Difference)
}

/// As [`ybe_particle_residual`], with the middle factor `S^{ik}` built from `middle`.
pub fn ybe_particle_residual_with(
    z_i: f64,
    z_j: f64,
    z_k: f64,
    spectral: &SpectralProfile,
    u: f64,
    middle: PairArgument,
) -> Result<f64> {
    let chain = ChainSpec::new(3)?;
    let (f_i, f_j, f_k) = (spectral.eval(z_i), spectral.eval(z_j), spectral.eval(z_k));
    let s_ij = embedded(f_i - f_j, u, 1, 2, chain)?;
    let s_ik = embedded(middle.eval(f_i, f_k), u, 1, 3, chain)?;
    let s_jk = embedded(f_j - f_k, u, 2, 3, chain)?;
    let lhs = compose([&s_ij, &s_ik, &s_jk])?;
    let rhs = compose([&s_jk, &s_ik, &s_ij])?;
    residual(&lhs, &rhs)
}
