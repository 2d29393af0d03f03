//! Error type shared by all modules.

use std::fmt;

/// Everything that can go wrong in the kernel.
///
/// `IndeterminateAtPrecision` and `WindowTooSmall` are retryable: callers
/// rebuild their inputs at a higher precision (or a wider lattice window)
/// and run the operation again. All other variants are hard input errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A claimed prime modulus is composite.
    NotPrime(u64),
    /// A tower polynomial is reducible; carries a witness factor (printed form).
    Reducible { poly: String, witness: String },
    /// Operands belong to different coefficient fields.
    FieldMismatch,
    /// Division by zero in a coefficient field.
    DivisionByZero,
    /// A series is zero through its stored precision, so a valuation
    /// (or anything derived from one) cannot be certified yet.
    IndeterminateAtPrecision,
    /// The lattice window of a torsor computation cannot hold all
    /// transported lattices; retry with a wider window.
    WindowTooSmall,
    /// Lattices live in different ambient windows or are otherwise
    /// incomparable.
    NonCommensurable,
    /// Newton-Puiseux hit a ramification index divisible by the
    /// characteristic.
    WildRamification { index: u64, characteristic: u64 },
    /// Input text failed to parse; `pos` is a byte offset into the input.
    Syntax { pos: usize, msg: String },
    /// A factored function violates squarefreeness or pairwise coprimality;
    /// carries the offending gcd.
    NotSquarefreeCoprime { witness: String },
    /// Two polynomials that must not share a component do.
    SharedComponent { witness: String },
    /// Branch analysis of a curve asserted irreducible exhibited a proper
    /// factor.
    ReducibleCurveDetected { witness: String },
    /// The retry policy ran out of precision budget.
    PrecisionCapExhausted { cap: i64 },
    /// An internal consistency check failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{} is not prime", p),
            Error::Reducible { poly, witness } => {
                write!(f, "polynomial {} is reducible (factor: {})", poly, witness)
            }
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::IndeterminateAtPrecision => {
                write!(f, "value indeterminate at current precision")
            }
            Error::WindowTooSmall => write!(f, "lattice window too small"),
            Error::NonCommensurable => write!(f, "lattices are not commensurable"),
            Error::WildRamification {
                index,
                characteristic,
            } => write!(
                f,
                "wild ramification: index {} divisible by characteristic {}",
                index, characteristic
            ),
            Error::Syntax { pos, msg } => write!(f, "syntax error at position {}: {}", pos, msg),
            Error::NotSquarefreeCoprime { witness } => {
                write!(f, "factors not squarefree-coprime (gcd witness: {})", witness)
            }
            Error::SharedComponent { witness } => {
                write!(f, "inputs share a component: {}", witness)
            }
            Error::ReducibleCurveDetected { witness } => {
                write!(f, "curve asserted irreducible has factor: {}", witness)
            }
            Error::PrecisionCapExhausted { cap } => {
                write!(f, "precision retry cap {} exhausted", cap)
            }
            Error::Internal(msg) => write!(f, "internal error: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors the retry-with-higher-precision policy may clear.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::IndeterminateAtPrecision | Error::WindowTooSmall
        )
    }
}
