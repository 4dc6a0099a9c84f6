//! Error type shared across the crate.

use core::fmt;

/// Errors reported by field, transform, and half-gcd operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Error {
    /// Division or inversion of a zero field element.
    DivisionByZero,
    /// A transform length exceeds what the field or plan supports.
    UnsupportedLength,
    /// A polynomial is too long for the requested transform length.
    LengthOverflow,
    /// Two spectra (or a spectrum and an expected length) disagree.
    LengthMismatch,
    /// The stated degree of a middle-product kernel does not match the input.
    DegreeMismatch,
    /// Power series inversion of a series with zero constant term.
    NotInvertible,
    /// A normal-case half-gcd hit a quotient of degree other than one.
    AbnormalSequence,
    /// gcd(0, 0) and other inputs with no defined answer.
    Undefined,
    /// An operation precondition (for example a degree ordering) was violated.
    PreconditionViolated,
    /// The quadratic reference oracle refuses degrees above its cap.
    OracleTooLarge,
    /// The modulus failed the primality or two-adicity check.
    BadModulus,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::DivisionByZero => "division by zero",
            Error::UnsupportedLength => "unsupported transform length",
            Error::LengthOverflow => "polynomial too long for transform length",
            Error::LengthMismatch => "spectrum length mismatch",
            Error::DegreeMismatch => "middle product kernel degree mismatch",
            Error::NotInvertible => "power series has zero constant term",
            Error::AbnormalSequence => "remainder sequence is not normal",
            Error::Undefined => "result is undefined for this input",
            Error::PreconditionViolated => "operation precondition violated",
            Error::OracleTooLarge => "input degree exceeds the reference oracle cap",
            Error::BadModulus => "modulus is not a prime with the declared two-adicity",
        };
        f.write_str(msg)
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
