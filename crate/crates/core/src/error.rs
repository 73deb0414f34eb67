use std::fmt;

/// Errors surfaced by dataset handling, exact algebra, and the verifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Document does not match the dataset schema. `path` points at the
    /// offending field (`points[2].weights[0]` style).
    Schema { path: String, message: String },
    /// Document is schema-valid but violates a dataset invariant.
    Invariant { path: String, message: String },
    /// Edge vectors at a vertex do not form a basis of the integer lattice.
    NotDelzant { vertex: String, detail: String },
    /// Vertex coordinates are not integers.
    NonIntegerVertex { vertex: String },
    /// The restriction vector is orthogonal to some weight.
    NotGeneric { point: String, slot: usize },
    /// Operands live in different exponent ranks.
    RankMismatch { expected: usize, found: usize },
    /// The candidate vector pairs to zero with some weight.
    NotPolarizing { point: String, slot: usize },
    /// The requested sign assignment selects an empty open cone.
    InfeasibleAssignment,
    /// Counting mode incompatible with the dataset or the query.
    ModeMismatch { message: String },
    /// The localization sum does not divide out to a Laurent polynomial.
    NotPolynomial { message: String },
    /// Series reconstructions under two sign assignments disagree.
    ReconstructionMismatch { message: String },
    /// One side of the point partition is empty, so the membership
    /// statements have no content on this dataset.
    EmptyClass { side: char },
    /// Dataset does not have the shape required by the verifier.
    ShapeMismatch { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Schema { path, message } => write!(f, "schema error at {path}: {message}"),
            Error::Invariant { path, message } => write!(f, "invariant violated at {path}: {message}"),
            Error::NotDelzant { vertex, detail } => {
                write!(f, "vertex {vertex} is not Delzant: {detail}")
            }
            Error::NonIntegerVertex { vertex } => {
                write!(f, "vertex {vertex} has non-integer coordinates")
            }
            Error::NotGeneric { point, slot } => write!(
                f,
                "restriction vector is orthogonal to weight {slot} of point {point}"
            ),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::NotPolarizing { point, slot } => write!(
                f,
                "vector pairs to zero with weight {slot} of point {point}"
            ),
            Error::InfeasibleAssignment => {
                write!(f, "sign assignment selects an empty open cone")
            }
            Error::ModeMismatch { message } => write!(f, "mode mismatch: {message}"),
            Error::NotPolynomial { message } => {
                write!(f, "localization sum is not a Laurent polynomial: {message}")
            }
            Error::ReconstructionMismatch { message } => {
                write!(f, "series reconstructions disagree: {message}")
            }
            Error::EmptyClass { side } => {
                write!(f, "point class Q{side} is empty; membership statements are vacuous")
            }
            Error::ShapeMismatch { message } => write!(f, "dataset shape mismatch: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
