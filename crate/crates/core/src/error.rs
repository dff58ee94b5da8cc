use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("ring axiom `{axiom}` violated: {witness}")]
    RingAxiom { axiom: &'static str, witness: String },

    #[error("{message} (line {line}, column {column})")]
    Parse { line: usize, column: usize, message: String },

    #[error("malformed descriptor: {0}")]
    Descriptor(String),

    #[error("size bound exceeded: {what} ({actual} > {bound})")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("both gcd inputs are zero")]
    GcdOfZeros,

    #[error("the zero polynomial has every point as a root")]
    ZeroPolynomial,

    #[error("irreducibility test inconclusive for {0}")]
    Inconclusive(String),

    #[error("ring is not semiprimitive: Jacobson radical contains {0}")]
    NotSemiprimitive(String),

    #[error("no maximal ideal found")]
    NoMaximalIdeal,

    #[error("incompatible exponents: {0}")]
    IncompatibleExponents(String),

    #[error("fraction equality is undecidable for {0}")]
    UndecidableEquality(String),

    #[error("ideal contains a unit: {0}")]
    ImproperIdeal(String),

    #[error("image of the semi-transition map is not finite")]
    InfiniteImage,

    #[error("sequence has no I-limit under {0}")]
    NoILimit(String),

    #[error("block count {0} exceeds bound {1}")]
    BlockBound(usize, usize),

    #[error("blocks do not partition the natural numbers: {0}")]
    NotAPartition(String),

    #[error("point {0} is not in the lambda space")]
    UnknownPoint(String),

    #[error("part {0} is not certified transitional: {1}")]
    Uncertified(usize, String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("refutation: {0}")]
    Refutation(String),

    #[error("not an {n}-th root ring: {element} has no {n}-th root")]
    NotNthRootRing { n: u32, element: String },

    #[error("element kind mismatch: expected {expected}, got {got}")]
    ElementKind { expected: &'static str, got: String },
}

pub type Result<T> = std::result::Result<T, Error>;
