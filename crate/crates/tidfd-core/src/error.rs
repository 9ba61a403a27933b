//! Crate-wide error type.

use core::fmt;

/// Errors raised by signal, frame, operator and reconstruction routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share the same grid size do not.
    SizeMismatch { expected: usize, got: usize },
    /// A spectrum claimed to represent a real signal fails conjugate
    /// symmetry beyond tolerance.
    SymmetryViolation { residual: f64, tolerance: f64 },
    /// Scale labels of two banks (or a bank and a coefficient family)
    /// do not coincide.
    LabelMismatch,
    /// The multiplier sum of a bank drops to (numerical) zero on an
    /// admitted frequency, so the bank is not a TI-frame.
    DegenerateFrame { min_sum: f64 },
    /// Invalid grid size or scale range for a bank constructor.
    BadScaleRange,
    /// A bank whose scale labels are not dyadic scale indices was passed
    /// where a wavelet-type bank is required.
    NonDyadicBank,
    /// Decimated coefficients whose strides do not match the bank.
    StrideMismatch,
    /// An operator whose domain requires zero-mean input was applied to
    /// a signal with nonzero mean. Callers must project explicitly.
    DomainViolation { mean: f64 },
    /// Attempted to invert a multiplier that vanishes away from DC.
    SingularMultiplier { k: i64 },
    /// A bank violates the scaled-support hypothesis needed for the
    /// vaguelette construction.
    UnboundedVaguelette,
    /// The supplied synthesis bank is not dual to the analysis bank.
    DualMismatch { residual: f64 },
    /// Regularization parameter outside (0, inf).
    BadAlpha { alpha: f64 },
    /// Bank bands overlap where disjoint bands are required.
    BandOverlap,
    /// A signal whose sample count is not a power of two (or is below
    /// the minimum grid), or contains non-finite values.
    InvalidSignal,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SizeMismatch { expected, got } => {
                write!(f, "size mismatch: expected {expected}, got {got}")
            }
            Error::SymmetryViolation { residual, tolerance } => write!(
                f,
                "conjugate symmetry violated: residual {residual:e} exceeds {tolerance:e}"
            ),
            Error::LabelMismatch => write!(f, "scale labels do not match"),
            Error::DegenerateFrame { min_sum } => write!(
                f,
                "degenerate frame: multiplier sum reaches {min_sum:e} on an admitted frequency"
            ),
            Error::BadScaleRange => write!(f, "invalid grid size or scale range"),
            Error::NonDyadicBank => write!(f, "bank does not carry dyadic scale labels"),
            Error::StrideMismatch => write!(f, "decimated coefficient strides do not match bank"),
            Error::DomainViolation { mean } => write!(
                f,
                "operator domain requires zero mean, input has mean {mean:e}"
            ),
            Error::SingularMultiplier { k } => {
                write!(f, "multiplier vanishes at frequency k = {k}, cannot invert")
            }
            Error::UnboundedVaguelette => {
                write!(f, "bank support violates the scaled-band hypothesis")
            }
            Error::DualMismatch { residual } => {
                write!(f, "banks are not dual: residual {residual:e}")
            }
            Error::BadAlpha { alpha } => write!(f, "regularization parameter {alpha} not in (0, inf)"),
            Error::BandOverlap => write!(f, "bank bands overlap; disjoint bands required"),
            Error::InvalidSignal => {
                write!(f, "signal length must be a power of two >= 8 with finite samples")
            }
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
