use thiserror::Error;

/// Errors raised by the library. Variants carry enough context for the CLI
/// to print a useful diagnostic without re-deriving anything.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity of symbol {symbol} must be at least 1")]
    ZeroArity { symbol: usize },

    #[error("symbol {symbol}: tuple has length {found}, expected arity {expected}")]
    TupleArity {
        symbol: usize,
        expected: usize,
        found: usize,
    },

    #[error("element {element} out of range for domain of size {domain_size}")]
    ElementOutOfRange { element: usize, domain_size: usize },

    #[error("expected {expected} relations for the signature, found {found}")]
    RelationCount { expected: usize, found: usize },

    #[error("signatures differ: {left:?} vs {right:?}")]
    SignatureMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("operation requires a single binary relation, signature is {0:?}")]
    NotBinary(Vec<usize>),

    #[error("partial map is not injective: {0} has two preimages")]
    NotInjective(usize),

    #[error("size {n} out of range 0..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid profile target: {0}")]
    InvalidTarget(String),

    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("degree {requested} exceeds the basis truncation {max}")]
    DegreeOverflow { requested: usize, max: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("shuffle operands use different alphabets ({0} vs {1})")]
    AlphabetMismatch(usize, usize),

    #[error("series denominator must have constant term 1")]
    DenominatorConstantTerm,

    #[error("fit margin {margin} does not fit in a window of {len} coefficients")]
    MarginTooLarge { margin: usize, len: usize },

    #[error("integer overflow in series arithmetic")]
    Overflow,

    #[error("domain of size {0} is too large for exhaustive subset tables")]
    DomainTooLarge(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
