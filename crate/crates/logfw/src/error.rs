//! Error type shared across the crate.

use std::fmt;

/// Everything that can go wrong while building or analyzing an instance.
///
/// Budget overflows are separated from genuine mathematical rejections so
/// the CLI can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coefficient domain admits no canonical characteristic-p² lift.
    NonLiftableCoefficient(String),
    /// Monoid membership search exhausted its node budget.
    SearchBudgetExceeded { nodes: usize },
    /// A Gröbner/Fitting/Hilbert computation exceeded its configured budget.
    BudgetExceeded { what: String },
    /// The structure map is not a monoid homomorphism into (R, ·).
    NotAHomomorphism(String),
    /// alpha^{-1}(units) does not equal the unit group of the monoid.
    NotLocalPrelog(String),
    /// The constructed section of Q -> Q/units failed its membership assertion.
    SectionVerificationFailed(String),
    /// Jacobian-based regularity is not justified for this base field.
    ImperfectBaseUnsupported(String),
    /// The brute-force derivation oracle was asked for a ring above its size cap.
    OracleTooLarge { size: usize, cap: usize },
    /// Monoid outside the supported class (torsion quotient, non-saturated sharpening, ...).
    UnsupportedMonoid(String),
    /// Mixed-characteristic ideal outside the supported fixture class.
    UnsupportedMixedIdeal(String),
    /// The distinguished point does not lie on the vanishing locus of the ideal.
    PointNotOnVariety(String),
    /// Instance file could not be parsed or failed schema validation.
    Instance(String),
    /// Polynomial expression parse error.
    Parse(String),
    /// Internal invariant violation; indicates a bug.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonLiftableCoefficient(s) => write!(f, "no canonical p^2 lift: {s}"),
            Error::SearchBudgetExceeded { nodes } => {
                write!(f, "monoid membership search budget exceeded ({nodes} nodes)")
            }
            Error::BudgetExceeded { what } => write!(f, "computation budget exceeded: {what}"),
            Error::NotAHomomorphism(s) => write!(f, "structure map is not a homomorphism: {s}"),
            Error::NotLocalPrelog(s) => write!(f, "prelog ring is not local: {s}"),
            Error::SectionVerificationFailed(s) => {
                write!(f, "section verification failed: {s}")
            }
            Error::ImperfectBaseUnsupported(s) => {
                write!(f, "regularity test not justified over this base: {s}")
            }
            Error::OracleTooLarge { size, cap } => {
                write!(f, "oracle ring has {size} elements, cap is {cap}")
            }
            Error::UnsupportedMonoid(s) => write!(f, "unsupported monoid: {s}"),
            Error::UnsupportedMixedIdeal(s) => {
                write!(f, "unsupported mixed-characteristic ideal: {s}")
            }
            Error::PointNotOnVariety(s) => write!(f, "point not on the variety: {s}"),
            Error::Instance(s) => write!(f, "instance error: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI maps this error to (1 = input, 2 = budget).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SearchBudgetExceeded { .. }
            | Error::BudgetExceeded { .. }
            | Error::OracleTooLarge { .. } => 2,
            _ => 1,
        }
    }
}
