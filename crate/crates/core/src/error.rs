use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("null vector encountered at position {index} (|g(r,r)| = {magnitude:e})")]
    NullVectorEncountered { index: usize, magnitude: f64 },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("matrix is not symmetric (|A - A^T| = {0:e})")]
    NonSymmetric(f64),

    #[error("dilation factor must be non-zero")]
    ZeroDilation,

    #[error("linear part is not complex orthogonal (|M^T M - I| = {0:e})")]
    NotOrthogonal(f64),

    #[error("bilinear form is degenerate or not symmetric")]
    InvalidForm,

    #[error("singular evaluation at `{node}`: {reason}")]
    SingularEvaluation { node: String, reason: String },

    #[error("derivative order {p}+{q} exceeds jet order 3")]
    DerivativeOrder { p: usize, q: usize },

    #[error("invalid program: {0}")]
    InvalidProgram(String),

    #[error("degenerate point ({u}, {v}): tangent plane is null")]
    DegeneratePoint { u: num_complex::Complex64, v: num_complex::Complex64 },

    #[error("degenerate plane: g(X,X)g(Y,Y) - g(X,Y)^2 vanishes")]
    DegeneratePlane,

    #[error("point is not on the ambient submanifold (residual {0:e})")]
    PointNotOnAmbient(f64),

    #[error("chart is not contained in the slice (residual {0:e})")]
    NotInSlice(f64),

    #[error("{property} not preserved by move: source residual {source_residual:e}, target residual {target_residual:e}")]
    TransferViolation {
        property: String,
        source_residual: f64,
        target_residual: f64,
    },

    #[error("source does not satisfy {property} (residual {residual:e}); nothing to transfer")]
    SourceViolation { property: String, residual: f64 },

    #[error("property {0} is not supported for this ambient space")]
    Unsupported(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("entry `{0}` has no real slice; refusing to export complex surface")]
    ComplexEntry(String),

    #[error("entry `{0}` is an ambient space without a surface chart")]
    NotASurface(String),

    #[error("too many degenerate sample points: {degenerate} of {total}")]
    TooManyDegenerate { degenerate: usize, total: usize },

    #[error("{0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
