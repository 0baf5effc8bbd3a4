use core::fmt;

/// Errors reported by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Entry buffer length does not match the declared square dimension.
    BadMatrixData { dim: usize, len: usize },
    /// Zero-dimensional matrix passed to an eigensolver or register.
    ZeroDim,
    /// Matrix asymmetry exceeds the repairable bound of 1e-10.
    NotHermitian { max_asymmetry: f64 },
    /// Jacobi iteration failed to reduce the off-diagonal mass (should not
    /// happen for Hermitian input within the supported dimensions).
    NoConvergence,
    /// Matrix dimension is not 2^n for the declared qubit count.
    NotQubitRegister { n_qubits: usize, dim: usize },
    /// Subsystem label refers to a qubit the register does not have.
    SubsystemOutOfRange { index: usize, n_qubits: usize },
    /// Ket expansion with no nonzero amplitude.
    ZeroKet,
    /// Mixing probability outside [0, 1].
    InvalidProbability(f64),
    /// A coupling or photon-number parameter that must be >= 0 is negative.
    NegativeParameter { name: &'static str, value: f64 },
    /// Transmittance outside [0, 1].
    InvalidTransmittance(f64),
    /// Interaction time is not finite.
    NonFiniteInteractionTime(f64),
    /// Tail tolerance outside (0, 1e-2].
    InvalidTailTolerance(f64),
    /// The Fock cutoff cap was reached before the requested tail tolerance.
    CutoffCapExceeded { cap: u32, captured: f64 },
    /// A coefficient that the requested entanglement class forces to zero
    /// was nonzero.
    ClassPatternViolation { coefficient: &'static str },
    /// (alpha, omega) pair with |alpha|^2 + |omega|^2 != 1.
    UnnormalizedPair { norm_sq: f64 },
    /// Formula evaluated outside the coefficient form it is defined for.
    WrongCoefficientForm,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadMatrixData { dim, len } => {
                write!(
                    f,
                    "matrix data length {len} does not match dimension {dim}x{dim}"
                )
            }
            Error::ZeroDim => write!(f, "matrix dimension must be positive"),
            Error::NotHermitian { max_asymmetry } => {
                write!(
                    f,
                    "matrix is not Hermitian (max |M - M^dag| = {max_asymmetry:.3e})"
                )
            }
            Error::NoConvergence => write!(f, "eigensolver did not converge"),
            Error::NotQubitRegister { n_qubits, dim } => {
                write!(
                    f,
                    "dimension {dim} does not match a {n_qubits}-qubit register"
                )
            }
            Error::SubsystemOutOfRange { index, n_qubits } => {
                write!(f, "subsystem {index} out of range for {n_qubits} qubits")
            }
            Error::ZeroKet => write!(f, "ket expansion has no nonzero amplitude"),
            Error::InvalidProbability(p) => write!(f, "probability {p} outside [0, 1]"),
            Error::NegativeParameter { name, value } => {
                write!(f, "parameter {name} = {value} must be nonnegative")
            }
            Error::InvalidTransmittance(t) => write!(f, "transmittance {t} outside [0, 1]"),
            Error::NonFiniteInteractionTime(g) => {
                write!(f, "interaction time {g} is not finite")
            }
            Error::InvalidTailTolerance(t) => {
                write!(f, "tail tolerance {t} outside (0, 1e-2]")
            }
            Error::CutoffCapExceeded { cap, captured } => write!(
                f,
                "Fock cutoff cap {cap} reached with captured probability {captured}; \
                 parameters outside the supported photon-number regime"
            ),
            Error::ClassPatternViolation { coefficient } => {
                write!(f, "coefficient {coefficient} must be zero for this class")
            }
            Error::UnnormalizedPair { norm_sq } => {
                write!(f, "|alpha|^2 + |omega|^2 = {norm_sq} differs from 1")
            }
            Error::WrongCoefficientForm => {
                write!(
                    f,
                    "formula is defined only for the standard coefficient form"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
