//! Error type shared by the model and simulator modules.

use alloc::string::String;
use core::fmt;

/// Errors raised by the cost models and simulators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A recursion level outside the modeled range was requested.
    UnknownLevel { level: u8 },
    /// No metrics entry exists for the requested (code, level) pair.
    MissingMetrics { what: String },
    /// A gate kind the operation cannot handle.
    UnsupportedGate { what: String },
    /// A circuit that violates its own structural invariants.
    InvalidCircuit { what: String },
    /// A parameter outside its documented domain.
    InvalidParameter { what: String },
    /// A cache or region too small to stage a single gate.
    CapacityTooSmall { capacity: u32, minimum: u32 },
    /// A schedule that spends more time at level 1 than the fidelity
    /// budget allows.
    FidelityViolation { fraction: f64, budget: f64 },
    /// Malformed circuit text.
    Parse { line: usize, what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownLevel { level } => {
                write!(f, "unknown recursion level {level} (expected 0, 1 or 2)")
            }
            Error::MissingMetrics { what } => write!(f, "missing code metrics: {what}"),
            Error::UnsupportedGate { what } => write!(f, "unsupported gate: {what}"),
            Error::InvalidCircuit { what } => write!(f, "invalid circuit: {what}"),
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::CapacityTooSmall { capacity, minimum } => {
                write!(f, "capacity {capacity} below minimum {minimum}")
            }
            Error::FidelityViolation { fraction, budget } => write!(
                f,
                "fidelity violation: level-1 time fraction {fraction:.4} exceeds budget {budget:.4}"
            ),
            Error::Parse { line, what } => write!(f, "parse error at line {line}: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
