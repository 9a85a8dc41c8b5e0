use thiserror::Error;

use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus tau = {re}+{im}i: imaginary part must be at least {min}")]
    InvalidTau { re: f64, im: f64, min: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("torsion order must be positive")]
    ZeroTorsionOrder,

    #[error("special set contains the same point twice: ({0}, {1})")]
    DuplicateSpecialPoint(f64, f64),

    #[error("evaluation at a pole: z = {0}")]
    Pole(Complex64),

    #[error("sample z = {0} too close to a zero or pole")]
    Singular(Complex64),

    #[error("jet order {order} exceeds the cap {cap}")]
    JetOrder { order: usize, cap: usize },

    #[error("element is not a unit")]
    NonUnit,

    #[error("series is not normalized: {0}")]
    SeriesNotNormalized(String),

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("q-order {order} exceeds the cap {cap}")]
    QOrderCap { order: usize, cap: usize },

    #[error("missing Pontryagin number {0}")]
    MissingPontryagin(String),

    #[error("invalid Pontryagin monomial {0:?}")]
    BadPontryaginMonomial(String),

    #[error("cannot parse Laurent polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("fixture schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), message: message.into() }
    }
}
