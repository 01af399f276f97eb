//! Relativistic electrodynamics of a cold plasma hit by a transverse
//! plane-wave pulse, in CGS units.
//!
//! The library builds the exact zero-density solution of the plane-wave
//! Lorentz-Maxwell system (a fluid of electrons initially at rest, driven by
//! an arbitrary travelling wave with a front), the first-order correction for
//! a step-density plasma (immobile ions), and the design estimates for the
//! slingshot effect: backward expulsion of surface electrons after the pulse.
//!
//! Conventions used throughout:
//! * all times are light-times `x0 = c t` in cm; lengths in cm;
//! * `xi = x0 - z` is the forward lightcone phase, `xi_minus = x0 + z`;
//! * momenta are dimensionless (`u = p / m c`), `gamma = sqrt(1 + u^2)`;
//! * the wave arrives from `z = -infinity`, fields vanish for `xi <= 0`;
//! * the Heaviside step is right-continuous, `theta(0) = 1`.

pub mod constants;
pub mod correction;
pub mod kinematics;
pub mod numerics;
pub mod pulse;
pub mod slingshot;
pub mod validation;

use std::fmt;

/// Errors produced by table construction, inversion and the physics pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Sample and grid lengths differ.
    LengthMismatch { expected: usize, got: usize },
    /// A sample or grid point is NaN/infinite.
    NonFinite { what: &'static str, index: usize },
    /// Fewer than two grid points.
    TooFewPoints { got: usize },
    /// Grid points are not strictly increasing at `index`.
    NotIncreasing { index: usize },
    /// Table values violate the declared monotonicity at `index`.
    NotMonotone { index: usize },
    /// Query value outside the tabulated range; carries the violated bounds.
    OutOfRange { value: f64, min: f64, max: f64 },
    /// Root bracket does not straddle a sign change.
    NoSignChange { f_lo: f64, f_hi: f64 },
    /// Grid does not resolve the carrier wavelength (oscillatory mode).
    GridTooCoarse { nodes_per_wavelength: f64 },
    /// Grid does not span the pulse support.
    GridDoesNotSpanPulse {
        grid: (f64, f64),
        support: (f64, f64),
    },
    /// Operation requires a different envelope family.
    UnsupportedEnvelope { op: &'static str },
    /// A parameter that must be positive (or nonnegative) is not.
    NonPositive { what: &'static str, value: f64 },
    /// Peak intensity below the first-ionization threshold.
    BelowIonizationThreshold { peak_w_sq: f64, threshold: f64 },
    /// Corrected longitudinal velocity never changes sign on the support.
    NoTurningPoint { coupling: f64 },
    /// Malformed sampled-envelope CSV.
    InvalidCsv { line: usize, reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected} samples, got {got}")
            }
            Error::NonFinite { what, index } => {
                write!(f, "non-finite {what} at index {index}")
            }
            Error::TooFewPoints { got } => {
                write!(f, "need at least 2 grid points, got {got}")
            }
            Error::NotIncreasing { index } => {
                write!(f, "grid points not strictly increasing at index {index}")
            }
            Error::NotMonotone { index } => {
                write!(f, "table values violate declared monotonicity at index {index}")
            }
            Error::OutOfRange { value, min, max } => {
                write!(f, "value {value:e} outside tabulated range [{min:e}, {max:e}]")
            }
            Error::NoSignChange { f_lo, f_hi } => {
                write!(f, "bracket endpoints have the same sign: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")
            }
            Error::GridTooCoarse { nodes_per_wavelength } => {
                write!(
                    f,
                    "grid too coarse for oscillatory mode: {nodes_per_wavelength:.1} nodes per wavelength (need >= 16)"
                )
            }
            Error::GridDoesNotSpanPulse { grid, support } => {
                write!(
                    f,
                    "grid [{:e}, {:e}] does not span pulse support [{:e}, {:e}] (and the wavefront at 0)",
                    grid.0, grid.1, support.0, support.1
                )
            }
            Error::UnsupportedEnvelope { op } => {
                write!(f, "operation `{op}` is only defined for a polynomial envelope")
            }
            Error::NonPositive { what, value } => {
                write!(f, "{what} must be positive, got {value:e}")
            }
            Error::BelowIonizationThreshold { peak_w_sq, threshold } => {
                write!(
                    f,
                    "peak intensity w^2 = {peak_w_sq:e} below ionization threshold {threshold:e}"
                )
            }
            Error::NoTurningPoint { coupling } => {
                write!(
                    f,
                    "corrected velocity has no zero on the support (plasma coupling {coupling:e} cm^-2 too small)"
                )
            }
            Error::InvalidCsv { line, reason } => {
                write!(f, "invalid envelope CSV at line {line}: {reason}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
