use thiserror::Error;

/// Errors produced by the parsing front end and the algebra engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("ring declaration has no variables")]
    EmptyRing,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown ideal name `{0}`")]
    UnknownIdeal(String),
    #[error("non-monomial generator `{0}`")]
    NonMonomial(String),
    #[error("non-homogeneous generator `{0}`")]
    NonHomogeneous(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("{0} is undefined for the zero ideal")]
    ZeroIdeal(&'static str),
    #[error("ideal is not Artinian: {0}")]
    NotArtinian(String),
    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("series did not stabilize: {0}")]
    NotStabilized(String),
    #[error("no n <= {max_n} with J I^n = I^(n+1)")]
    NotAReduction { max_n: usize },
    #[error("candidate reduction is not contained in the ideal")]
    NotContained,
    #[error("not a minimal reduction: {0}")]
    NotMinimalReduction(String),
    #[error("elements do not form a joint reduction for any n <= {max_n}")]
    NotJointReduction { max_n: usize },
    #[error("membership failure: {0}")]
    MembershipFailure(String),
    #[error("elements do not form a system of parameters")]
    NotParameterSystem,
    #[error("expected {expected} elements, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("grid too small for the requested differences")]
    GridTooSmall,
    #[error("operation requires a ring of dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("map is not a linearization of the poset: {0}")]
    NotALinearization(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coefficient of t^{n} is negative ({value})")]
    NegativeCoefficient { n: usize, value: i64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("corpus error: {0}")]
    Corpus(String),
    /// A computed value contradicts a theorem the engines rely on. Always a bug.
    #[error("FALSIFICATION: {0}")]
    Falsification(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsification(_))
    }

    /// Budget and stabilization failures, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded(_)
                | Error::NotStabilized(_)
                | Error::NotAReduction { .. }
                | Error::NotJointReduction { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
