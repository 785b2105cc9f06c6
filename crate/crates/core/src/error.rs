use thiserror::Error;

/// Errors produced by the letterplace library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("relation references undeclared element `{0}`")]
    UndeclaredElement(String),

    #[error("order relations contain a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("element `{0}` is not in the poset")]
    UnknownElement(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("the empty set cannot be a nonface")]
    EmptyNonface,

    #[error("vertex sets overlap at `{0}`")]
    OverlappingVertices(String),

    #[error("subset order is only defined for nonempty subsets")]
    EmptySubset,

    #[error("layer {0} of the multidegree is empty")]
    EmptyLayer(usize),

    #[error("multidegree has {found} layers, expected {expected}")]
    LayerCount { expected: usize, found: usize },

    #[error("complex is not a bipartite edge-ideal complex: {0}")]
    NotBipartite(String),

    #[error("poset is not a rooted forest")]
    NotForest,

    #[error("poset is not a rooted tree")]
    NotTree,

    #[error("invalid characteristic {0}: must be 0 or a prime below 2^31")]
    InvalidCharacteristic(u64),

    #[error("n must be at least {min}, got {got}")]
    InvalidN { min: usize, got: usize },

    #[error("table convention mismatch: expected {expected}, found {found}")]
    ConventionMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("size guard exceeded: {what} is {value}, limit {limit}")]
    Guard {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

impl Error {
    /// True for errors raised by a size guard rather than by bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::Guard { what, value, limit })
    } else {
        Ok(())
    }
}
