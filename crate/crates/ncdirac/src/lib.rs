//! Relativistic spectrum of a hydrogen-like atom on noncommutative phase space.
//!
//! The library computes exact Dirac-Coulomb energies and normalized radial
//! wavefunctions, then the first-order energy corrections induced by
//! space-space (`theta`) and momentum-momentum (`thetabar`) noncommutativity
//! via degenerate perturbation theory: radial integrals, angular secular
//! matrices, their eigenvalues, per-sublevel corrections, and the resulting
//! sublevel spacings.
//!
//! Organization:
//!
//! * [`constants`] - physical constants (eV-based natural units).
//! * [`halfint`] - exact half-integer quantum numbers (stored doubled).
//! * [`special_functions`] - Γ, the confluent series Φ(a,b;z), spherical
//!   harmonics, and spherical spinors.
//! * [`numerics`] - adaptive radial quadrature on `[0, ∞)`, a fixed-order
//!   sphere rule, and small Hermitian eigensolvers.
//! * [`dirac`] - the commutative relativistic bound-state problem.
//! * [`ncps`] - noncommutative parameters and the correction pipeline.
//! * [`report`] - run configuration, orchestration, CSV/JSON emission.
//!
//! Units: energies in eV, lengths in eV⁻¹ internally; `theta` crosses the CLI
//! boundary in m² and `thetabar` in the m²-mirrored convention documented in
//! [`ncps`], both converted via `(ħc)²`.

// Published coefficient tables and pinned reference values keep their full
// printed digits; negated comparisons like `!(x > 0.0)` are NaN-rejecting
// guards and must not become `x <= 0.0`.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dirac;
pub mod halfint;
pub mod ncps;
pub mod numerics;
pub mod report;
pub mod special_functions;

pub use constants::PhysicalConstants;
pub use dirac::{Level, RadialSolution};
pub use halfint::HalfInt;
pub use ncps::{AlphaShiftForm, CorrectionBreakdown, NcParams, Spacing, Sublevel};
pub use numerics::SecularMatrix;
pub use report::{LevelDiagram, OutputFormat, RunConfig};

/// Library error type. `exit_code` groups variants into the process exit
/// classes used by the CLI: 2 for configuration problems, 3 for physics /
/// numerical domain failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gamma function requires a positive argument, got {0}")]
    GammaDomain(f64),

    #[error("confluent series parameter b must not be zero or a negative integer, got b = {0}")]
    ConfluentDomain(f64),

    #[error(
        "confluent series did not converge within {max_terms} terms for (a={a}, b={b}, z={z})"
    )]
    ConfluentNoConvergence {
        a: f64,
        b: f64,
        z: f64,
        max_terms: usize,
    },

    #[error("invalid spinor quantum numbers: {0}")]
    SpinorDomain(String),

    #[error(
        "radial quadrature did not converge: relative error estimate {estimate:.3e} \
         after {intervals} intervals (integrand may not be integrable)"
    )]
    QuadratureNoConvergence { estimate: f64, intervals: usize },

    #[error("radial quadrature encountered a non-finite integrand value at r = {r:.6e}")]
    QuadratureNonFinite { r: f64 },

    #[error("matrix is not Hermitian: max |m - m†| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("energy is only real for Z e² < |κ|: Z e² = {ze2:.6} but |κ| = {kappa_abs}")]
    CouplingTooStrong { ze2: f64, kappa_abs: i32 },

    #[error("no closed form for {integral} at level {level}; use the quadrature route")]
    ClosedFormUnsupported {
        integral: &'static str,
        level: String,
    },

    #[error(
        "constraint θθ̄ = 4α²(1−α²) has no real solution on the α(0)=1 branch for θθ̄ = {0} > 1"
    )]
    ConstraintDomain(f64),

    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaDomain(f64),

    #[error("computing level {level}: {source}")]
    LevelContext {
        level: String,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit class: 2 = configuration error, 3 = physics or numerical
    /// domain error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LevelContext { source, .. } => source.exit_code(),
            Error::Config(_) | Error::Io { .. } => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
