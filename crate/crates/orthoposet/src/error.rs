use thiserror::Error;

/// Errors produced by construction, parsing and analysis operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation has a directed cycle through `{0}`")]
    CycleDetected(String),
    #[error("structure has {0} elements, cap is {1}")]
    SizeExceeded(usize, usize),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset is not bounded (missing {0})")]
    NotBounded(&'static str),
    #[error("involution is not a permutation of the elements: {0}")]
    InvalidInvolution(String),
    #[error("not an orthoposet: {0} fails, witness {1:?}")]
    NotOrthoPoset(&'static str, Vec<String>),
    #[error("poset is not orthogonal (pair {0}, {1} has no join)")]
    NotOrthogonal(String, String),
    #[error("orthomodularity methods disagree: {0}")]
    InternalInconsistency(String),
    #[error("empty subset")]
    EmptySubset,
    #[error("{0} does not divide {1}")]
    BadDivisor(u32, u32),
    #[error("blocks do not partition the ground set into equal halves")]
    BadPartition,
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("ambient poset is not orthomodular")]
    NotOrthomodular,
    #[error("interval identity (x'\u{2228}a)\u{2227}b = (x'\u{2227}b)\u{2228}a fails at `{0}`")]
    IdentityViolation(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("element `{0}` is not central (witness `{1}`)")]
    NotCentral(String, String),
    #[error("internal embedding check failed: {0}")]
    EmbeddingCheckFailed(String),
    #[error("set is not closed under the involution (element `{0}`)")]
    NotClosedUnderInvolution(String),
    #[error("set is not a sub-ortholattice: {0}")]
    NotSublattice(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("label `{0}` cannot be written as a file token")]
    InvalidLabel(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
