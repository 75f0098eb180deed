use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },
    #[error("rank n = {0} out of the supported range")]
    Rank(usize),
    #[error("malformed root {0:?}")]
    MalformedRoot(Vec<i32>),
    #[error("short root {0:?} has no orthogonal mate")]
    NoMate(Vec<i32>),
    #[error("roots are not mutually orthogonal")]
    NotOrthogonal,
    #[error("no admissible set contains the given roots")]
    NoAdmissibleSuperset,
    #[error("parameters (class {class}, t = {t}) out of range for n = {n}")]
    OutOfRange { class: u8, t: usize, n: usize },
    #[error("word contains a non-reflection token at position {0}")]
    NotAGroupWord(usize),
    #[error("element is not in the requested subgroup product")]
    NotInProduct,
    #[error("relations force δ^{exponent} = 1 on a monomial")]
    DeltaTorsion { exponent: i32 },
    #[error("enumeration exceeded {limit} live nodes")]
    EnumerationLimit { limit: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid connector: {0}")]
    InvalidConnector(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
