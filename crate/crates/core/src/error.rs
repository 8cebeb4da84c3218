use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient ring {ring} is not a PID; push the complex through a_f2 or borel first")]
    NotPid { ring: &'static str },
    #[error("series {0} has zero constant term and is not invertible")]
    NotInvertibleSeries(String),
    #[error("d*d is nonzero: {product}")]
    DSquaredNonzero { product: String },
    #[error("grading violation: entry {entry} from {from} (degree {from_deg}) to {to} (degree {to_deg})")]
    Grading { from: String, to: String, from_deg: i64, to_deg: i64, entry: String },
    #[error("differential lowers filtration: {from} (level {from_level}) to {to} (level {to_level})")]
    Filtration { from: String, to: String, from_level: i64, to_level: i64 },
    #[error("complex is not filtered")]
    Unfiltered,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("admissibility violation: {0}")]
    Admissibility(String),
    #[error("counts are not T-equivariant: {0}")]
    NonEquivariant(String),
    #[error("relation {name} fails: {witness}")]
    Relation { name: String, witness: String },
    #[error("index bookkeeping violated: {0}")]
    Index(String),
    #[error("action filtration violated: {0}")]
    Action(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
