//! Error type shared by all state constructions and vector operations.

use alloc::string::String;
use core::fmt;

/// Errors reported by Fock-space operations and state builders.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A basis index at or beyond the truncation dimension.
    IndexOutOfRange { n: usize, dim: usize },
    /// Two vectors of different truncation dimension were combined.
    DimensionMismatch { left: usize, right: usize },
    /// Normalization of a vector with zero norm.
    ZeroNorm,
    /// A diagonal function evaluated to NaN or infinity at `arg`.
    NonFinite { name: String, arg: i64 },
    /// A nonlinear function is zero at `arg`, so the build recurrence
    /// cannot divide by it.
    ZeroNonlinearity { name: String, arg: i64 },
    /// Probability mass beyond the residual-check boundary exceeds the
    /// configured tolerance; the truncation dimension is too small.
    /// `adequate_dim` is the smallest dimension estimated to suffice,
    /// when the coefficient recurrence converges within the search cap.
    TailMass {
        tail: f64,
        tol: f64,
        dim: usize,
        adequate_dim: Option<usize>,
    },
    /// Mandel Q is 0/0 on states with vanishing mean photon number.
    VacuumMandelQ,
    /// A sector-conjugate operator was applied to a state with support
    /// on an index where A·A† vanishes (outside the infinite sector).
    SectorSingular { n: usize },
    /// A series did not meet its termination criterion within the
    /// iteration cap.
    ConvergenceCap { iterations: usize, m: u32, z: f64 },
    /// Invalid configuration or parameter combination.
    InvalidConfig(&'static str),
    /// A reserved API slot that is intentionally not implemented.
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { n, dim } => {
                write!(f, "basis index {n} out of range for dimension {dim}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::ZeroNorm => write!(f, "cannot normalize a zero vector"),
            Error::NonFinite { name, arg } => {
                write!(f, "function `{name}` is not finite at n = {arg}")
            }
            Error::ZeroNonlinearity { name, arg } => {
                write!(f, "nonlinear function `{name}` vanishes at n = {arg}")
            }
            Error::TailMass {
                tail,
                tol,
                dim,
                adequate_dim,
            } => {
                write!(
                    f,
                    "tail mass {tail:.3e} exceeds tolerance {tol:.3e} at dimension {dim}"
                )?;
                match adequate_dim {
                    Some(d) => write!(f, "; smallest adequate dimension is about {d}"),
                    None => write!(f, "; no adequate dimension found within the search cap"),
                }
            }
            Error::VacuumMandelQ => {
                write!(f, "Mandel Q is undefined for vanishing mean photon number")
            }
            Error::SectorSingular { n } => {
                write!(f, "A*Adag vanishes at n = {n}: state leaves the infinite sector")
            }
            Error::ConvergenceCap { iterations, m, z } => {
                write!(
                    f,
                    "series failed to converge after {iterations} terms (m = {m}, z = {z})"
                )
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
