use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("poset is not graded: cover {lo} -> {hi} spans ranks {rank_lo} -> {rank_hi}")]
    NotGraded {
        lo: usize,
        hi: usize,
        rank_lo: usize,
        rank_hi: usize,
    },
    #[error("cover relation contains a cycle through element {0}")]
    Cyclic(usize),
    #[error("element index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("duplicate cover {0} -> {1}")]
    DuplicateCover(usize, usize),
    #[error("elements {0} and {1} are not comparable as lo <= hi")]
    NotComparable(usize, usize),
    #[error("interval has rank zero")]
    RankZeroInterval,
    #[error("size limit exceeded: {what} exceeds {limit}")]
    SizeLimitExceeded { what: String, limit: u64 },
    #[error("polynomial is not palindromic with respect to degree {0}")]
    NotPalindromic(usize),
    #[error("gamma vector of degree {deg} does not fit in total degree {d}")]
    DegreeTooHigh { deg: usize, d: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("degree gap: deg f = {0}, deg g = {1}")]
    DegreeGap(usize, usize),
    #[error("label attached to non-cover {0} -> {1}")]
    NotACover(usize, usize),
    #[error("cover {0} -> {1} has no label")]
    MissingCover(usize, usize),
    #[error("element {0} is the top element")]
    TopElement(usize),
    #[error("labeling is not an EL-labeling: {0}")]
    NotEL(String),
    #[error("labeling is not UMEL: {0}")]
    NotUMEL(String),
    #[error("labeling is not rank-uniform: {0}")]
    NotRankUniformLabeling(String),
    #[error("poset is not a lattice: elements {0} and {1} have no join")]
    NotALattice(usize, usize),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("poset is not rank-uniform")]
    NotRankUniform,
    #[error("lattice is not supersolvable")]
    NotSupersolvable,
    #[error("poset is not lower rank-uniform")]
    NotLowerRankUniform,
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{check}: {source}")]
    InCheck { check: String, source: Box<Error> },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            Error::SizeLimitExceeded { .. } => true,
            Error::InCheck { source, .. } => source.is_resource_limit(),
            _ => false,
        }
    }
}
