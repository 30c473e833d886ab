use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of size {p}^{s} exceeds the bound of {bound} elements")]
    FieldTooLarge { p: u64, s: u32, bound: u64 },
    #[error("discrete logarithm of zero")]
    ZeroElement,
    #[error("exact Gauss sums are only available over prime fields (got degree {0})")]
    ExtensionFieldExactUnsupported(u32),
    #[error("characters live over different fields")]
    FieldMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no cyclotomic integer solves the division")]
    NonUnitQuotient,
    #[error("{n} is not coprime to {modulus}")]
    NotCoprime { n: i64, modulus: u64 },
    #[error("bad reduction at p = {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("q = {q} is not congruent to 1 modulo {modulus}")]
    WrongCongruence { q: u64, modulus: u64 },
    #[error("hypergeometric point count is not a rational integer")]
    NonIntegerTotal,
    #[error("Frobenius trace {trace} violates the Weil bound {bound:.3}")]
    WeilBoundViolation { trace: i64, bound: f64 },
    #[error("L-polynomial invariant failed: {0}")]
    LPolynomialInvariant(String),
    #[error("Gamma has a pole at {0}")]
    PoleAtNonPositiveInteger(String),
    #[error("|lambda| = {0} is outside the convergence domain")]
    OutsideConvergenceDomain(String),
    #[error("lower parameter c = {0} is a non-positive integer")]
    PoleInC(String),
    #[error("unsupported family {0}")]
    UnsupportedFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
