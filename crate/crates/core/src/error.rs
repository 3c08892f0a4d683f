use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ring descriptor '{0}': {1}")]
    RingDescriptor(String, String),
    #[error("malformed ring element '{0}': {1}")]
    ElementSyntax(String, String),
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undefined name '{0}'")]
    UndefinedName(String),
    #[error("cannot factor zero")]
    FactorZero,
    #[error("cannot factor {0}")]
    Unfactorable(String),
    #[error("supplied factorization does not multiply out to the modulus {0}")]
    BadFactorization(String),
    #[error("operands live over different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("{0} is not a prime of {1}")]
    NotAPrime(String, String),
    #[error("no primes of height {0} in a ring of Krull dimension {1}")]
    HeightOutOfRange(u32, u32),
    #[error("atom {0} is not allowed over {1}: {2}")]
    IllegalAtom(String, String, String),
    #[error("{0} is not a regular element of {1}")]
    NotRegular(String, String),
    #[error("{0} is not injective")]
    NotInjective(String),
    #[error("{0} is not of the form E(R/P) for a single prime")]
    NotSinglePrimeInjective(String),
    #[error("{0} is not Gorenstein injective (required by {1})")]
    NotGorensteinInjective(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("probe set is empty")]
    EmptyProbes,
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("resolution stage budget {budget} too short for Tor_{k}")]
    StageBudget { k: u32, budget: u32 },
    #[error("direct limit did not stabilize within {0} stages")]
    NoStabilization(u32),
    #[error("oracle result outside the tame class: {0}")]
    OutsideTameClass(String),
    #[error("oracle cannot handle this input: {0}")]
    OracleUnsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
