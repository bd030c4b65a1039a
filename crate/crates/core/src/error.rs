use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vector is not normalized: <v,v> = {0}, expected -1")]
    NotNormalized(String),
    #[error("matrix is singular")]
    Singular,
    #[error("rank deficient: rank {rank}, need {need}")]
    RankDeficient { rank: usize, need: usize },
    #[error("not a Coxeter entry: {0}")]
    NonCoxeter(String),
    #[error("ambiguous angle classification: {0}")]
    Ambiguous(String),
    #[error("parity violation at node {node}: {detail}")]
    Parity { node: String, detail: String },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("limits missing: at least one of max_generation or max_bend is required")]
    NoLimits,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::DivisionByZero => "division_by_zero",
            Error::Dimension(_) => "dimension",
            Error::NotNormalized(_) => "not_normalized",
            Error::Singular => "singular",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::NonCoxeter(_) => "non_coxeter",
            Error::Ambiguous(_) => "ambiguous",
            Error::Parity { .. } => "parity",
            Error::Index(_) => "index",
            Error::InvalidConfig(_) => "invalid_config",
            Error::InvalidMatching(_) => "invalid_matching",
            Error::InvalidPolyhedron(_) => "invalid_polyhedron",
            Error::Unsupported(_) => "unsupported",
            Error::NoLimits => "no_limits",
            Error::NotFound(_) => "not_found",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
