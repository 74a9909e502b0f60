use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("polynomial has degree 0 in `{0}`")]
    ConstantInVariable(String),

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("roots are not separated: inclusion disks {0} and {1} overlap")]
    RootsNotSeparated(usize, usize),

    #[error("continuation stalled at parameter {parameter} after {halvings} step halvings")]
    ContinuationStalled { parameter: f64, halvings: u32 },

    #[error("path passes within {distance:e} of a critical fiber at parameter {parameter}")]
    Clearance { parameter: f64, distance: f64 },

    #[error("ambiguous crossing in strand sweep: {0}")]
    AmbiguousCrossing(String),

    #[error("generator index {index} out of range for {n} strands/generators")]
    IndexOutOfRange { index: i64, n: usize },

    #[error("malformed arc: {0}")]
    MalformedArc(String),

    #[error("expected {expected} generators, found {found}")]
    WrongGeneratorCount { expected: usize, found: usize },

    #[error("coset enumeration exceeded {0} cosets")]
    CosetOverflow(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("structural check failed: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),
}
