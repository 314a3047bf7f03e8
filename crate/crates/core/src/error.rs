use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid slot pair ({slot_a}, {slot_b}) for a chain with {n_slots} slots")]
    InvalidSlots {
        slot_a: usize,
        slot_b: usize,
        n_slots: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("cannot compose an empty operator list")]
    EmptyComposition,

    #[error("chain must hold between 1 and {max} particles, got {got}")]
    ChainSize { got: usize, max: usize },

    #[error("S-matrix pole: |sinh({f_val} + i*{u})| = {modulus:e} is below the singularity guard")]
    SingularSMatrix { f_val: f64, u: f64, modulus: f64 },

    #[error("anisotropy u = {0} is outside the admissible range")]
    InvalidAnisotropy(f64),

    #[error("couplings (j_par = {j_par}, j_perp = {j_perp}) are outside the hyperbolic regime j_par >= j_perp >= 0")]
    NonHyperbolicRegime { j_par: f64, j_perp: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("time must be positive, got {0}")]
    InvalidTime(f64),

    #[error("particle index {index} out of range 1..={n_particles}")]
    InvalidParticle { index: usize, n_particles: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("swap path does not lead to the requested target ordering")]
    PathMismatch,

    #[error("flow diverged after t = {t} (last finite couplings: {j_par}, {j_perp})")]
    DivergedFlow { t: f64, j_par: f64, j_perp: f64 },

    #[error("closed-form comparison requires a = -2u/pi = {expected}, got {got}")]
    IdentificationMismatch { expected: f64, got: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
