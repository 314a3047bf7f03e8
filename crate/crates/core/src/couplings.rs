//! Maps between the spectral data `(phi, u)` and the physical couplings
//! `(J_par, J_perp)`, the integrable coupling family, and the SU(2) and
//! Kondo-temperature relations.
//!
//! The integrability constraint is used in its half-angle form
//! `cos(J_par / 2) = cos(u) * cos(J_perp / 2)`. Along the integrable family
//! this is satisfied identically, and for small couplings it reduces to
//! `J_par^2 - J_perp^2 = 4 u^2`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Slack allowed on arccos arguments before an input is declared invalid.
pub const ARCCOS_CLAMP: f64 = 1e-12;

/// Sign choice in the closed-form integrable couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum Branch {
    /// Weak-coupling endpoint `(2u, 0)` as `phi -> +inf`.
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Parallel and transverse exchange couplings, in radians.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CouplingPair {
    pub j_par: f64,
    pub j_perp: f64,
}

impl CouplingPair {
    pub const fn new(j_par: f64, j_perp: f64) -> Self {
        Self { j_par, j_perp }
    }

    pub fn is_finite(&self) -> bool {
        self.j_par.is_finite() && self.j_perp.is_finite()
    }
}

/// Parameters of the linear integrable spectral function `phi(z) = a z + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    pub a: f64,
    pub c: f64,
    pub u: f64,
    pub length: f64,
    pub kappa: f64,
}

impl SpectralParams {
    /// `kappa` is derived as `a * length`.
    pub fn new(a: f64, c: f64, u: f64, length: f64) -> Result<Self> {
        validate_anisotropy(u)?;
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::DomainError(format!(
                "system size must be positive, got {length}"
            )));
        }
        if !(a.is_finite() && c.is_finite()) {
            return Err(Error::DomainError("a and c must be finite".into()));
        }
        Ok(Self {
            a,
            c,
            u,
            length,
            kappa: a * length,
        })
    }

    /// Slope fixed by the time/cutoff identification, `a = -2u/pi`.
    pub fn rg_identified(c: f64, u: f64, length: f64) -> Result<Self> {
        Self::new(rg_slope(u), c, u, length)
    }

    pub fn profile(&self) -> SpectralProfile {
        SpectralProfile::Linear { a: self.a, c: self.c }
    }
}

/// `a = -2u/pi`.
pub fn rg_slope(u: f64) -> f64 {
    -2.0 * u / PI
}

/// The spectral function `phi(z)` fed to every S-matrix.
#[derive(Clone)]
pub enum SpectralProfile {
    /// `a z + c`, the only shift-linear choice.
    Linear { a: f64, c: f64 },
    /// `a z + c + eps * sin(3 z)`; breaks shift linearity for `eps != 0`.
    Sine { a: f64, c: f64, eps: f64 },
    Custom {
        name: String,
        func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl SpectralProfile {
    pub fn custom(name: impl Into<String>, func: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom {
            name: name.into(),
            func: Arc::new(func),
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        match self {
            Self::Linear { a, c } => a * z + c,
            Self::Sine { a, c, eps } => a * z + c + eps * (3.0 * z).sin(),
            Self::Custom { func, .. } => func(z),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Linear { .. } => "linear",
            Self::Sine { .. } => "sine",
            Self::Custom { name, .. } => name,
        }
    }
}

impl fmt::Debug for SpectralProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Linear { a, c } => f.debug_struct("Linear").field("a", a).field("c", c).finish(),
            Self::Sine { a, c, eps } => f
                .debug_struct("Sine")
                .field("a", a)
                .field("c", c)
                .field("eps", eps)
                .finish(),
            Self::Custom { name, .. } => f.debug_struct("Custom").field("name", name).finish(),
        }
    }
}

fn validate_anisotropy(u: f64) -> Result<()> {
    if u > 0.0 && u <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::InvalidAnisotropy(u))
    }
}

/// Integrable couplings at spectral argument `phi`:
///
/// `J_perp = 2 arccos(+-tanh(phi) / D)`, `J_par = 2 arccos(+-cos(u) tanh(phi) / D)`
/// with `D = sqrt(sin^2 u + cos^2 u tanh^2 phi)`.
///
/// Evaluated through the equivalent `atan2` forms, which stay accurate when
/// either half-angle approaches 0.
pub fn couplings_from_spectral(u: f64, phi: f64, branch: Branch) -> Result<CouplingPair> {
    validate_anisotropy(u)?;
    if phi.is_nan() {
        return Err(Error::DomainError("spectral argument is NaN".into()));
    }
    let (su, cu) = u.sin_cos();
    let t = branch.sign() * phi.tanh();
    let sech = 1.0 / phi.cosh();
    Ok(CouplingPair {
        j_par: 2.0 * su.atan2(cu * t),
        j_perp: 2.0 * (su * sech).atan2(t),
    })
}

/// Spectral data recovered from a coupling pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    /// `f~ >= 0`; `+inf` on the weak-coupling endpoint `J_perp = 0`.
    pub phi: f64,
    pub tanh_phi: f64,
    pub u: f64,
}

/// Inverse of [`couplings_from_spectral`]:
///
/// `u = arccos(cos(J_par/2) / cos(J_perp/2))`,
/// `tanh f~ = sqrt(sin((J_par - J_perp)/2) sin((J_par + J_perp)/2)) / sin(J_par/2)`.
///
/// `f~` itself is taken from `sinh f~ = sqrt(...) / sin(J_perp/2)`, which is the
/// same quantity but does not lose digits as `tanh f~ -> 1`. On the line
/// `J_par = J_perp` the anisotropy is not identifiable and `u = 0` is returned.
pub fn spectral_from_couplings(pair: CouplingPair) -> Result<SpectralPoint> {
    let CouplingPair { j_par, j_perp } = pair;
    if !pair.is_finite() || j_perp < 0.0 || j_par < j_perp || j_par <= 0.0 {
        return Err(Error::NonHyperbolicRegime { j_par, j_perp });
    }
    let half_par = 0.5 * j_par;
    let half_perp = 0.5 * j_perp;
    if j_par == j_perp {
        return Ok(SpectralPoint {
            phi: 0.0,
            tanh_phi: 0.0,
            u: 0.0,
        });
    }

    let ratio = half_par.cos() / half_perp.cos();
    let u = clamped_acos(ratio, "cos(J_par/2)/cos(J_perp/2)")?;

    let prod = (0.5 * (j_par - j_perp)).sin() * (0.5 * (j_par + j_perp)).sin();
    if prod < 0.0 {
        return Err(Error::DomainError(format!(
            "sin((J_par-J_perp)/2) sin((J_par+J_perp)/2) = {prod} is negative"
        )));
    }
    let root = prod.sqrt();
    let tanh_phi = clamp_unit(root / half_par.sin(), "tanh f")?;
    let phi = (root / half_perp.sin()).asinh();
    Ok(SpectralPoint { phi, tanh_phi, u })
}

fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + ARCCOS_CLAMP {
        return Err(Error::DomainError(format!("{what} = {x} is outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

fn clamped_acos(x: f64, what: &str) -> Result<f64> {
    clamp_unit(x, what).map(f64::acos)
}

/// `|cos(J_par/2) - cos(u) cos(J_perp/2)|`.
pub fn check_constraint(pair: CouplingPair, u: f64) -> f64 {
    ((0.5 * pair.j_par).cos() - u.cos() * (0.5 * pair.j_perp).cos()).abs()
}

/// Small-coupling form of the constraint: `4u^2 - (J_par^2 - J_perp^2)`.
pub fn weak_coupling_residual(pair: CouplingPair, u: f64) -> f64 {
    4.0 * u * u - (pair.j_par * pair.j_par - pair.j_perp * pair.j_perp)
}

/// Universal SU(2) coupling `J(t) = pi / t`.
pub fn su2_coupling(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidTime(t));
    }
    Ok(PI / t)
}

/// SU(2) spectral parameter `f = cot(J/2)`.
///
/// `J = pi` is accepted and maps to `f ~ 0`, the strong-coupling end.
pub fn su2_spectral(j: f64) -> Result<f64> {
    if !(j > 0.0 && j <= PI) {
        return Err(Error::DomainError(format!("SU(2) coupling {j} outside (0, pi]")));
    }
    Ok(1.0 / (0.5 * j).tan())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KondoScheme {
    /// `T_K = cutoff * exp(-pi f)`, argument is `f`.
    Bethe,
    /// One-loop `T_K = cutoff * exp(-pi / J)`, argument is `J`.
    Wilson,
}

pub fn kondo_temperature(f_or_j: f64, cutoff: f64, scheme: KondoScheme) -> Result<f64> {
    if !(cutoff > 0.0) {
        return Err(Error::DomainError(format!("cutoff must be positive, got {cutoff}")));
    }
    match scheme {
        KondoScheme::Bethe => Ok(cutoff * (-PI * f_or_j).exp()),
        KondoScheme::Wilson => {
            if f_or_j == 0.0 {
                return Err(Error::DomainError("Wilson scheme needs J != 0".into()));
            }
            Ok(cutoff * (-PI / f_or_j).exp())
        }
    }
}

/// Largest violation of `phi(z +- L) = phi(z) +- kappa` over `samples`.
pub fn check_shift_property(profile: &SpectralProfile, length: f64, kappa: f64, samples: &[f64]) -> f64 {
    samples
        .iter()
        .map(|&z| {
            let base = profile.eval(z);
            let up = (profile.eval(z + length) - base - kappa).abs();
            let down = (profile.eval(z - length) - base + kappa).abs();
            up.max(down)
        })
        .fold(0.0, f64::max)
}
