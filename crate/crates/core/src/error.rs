use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is too large")]
    DegreeTooLarge(usize),
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("not a bijection: {0:?}")]
    NotABijection(Vec<usize>),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator {index} is not an involution: {perm}")]
    NotAnInvolution { index: usize, perm: String },
    #[error("generators {0} and {1} coincide")]
    RepeatedGenerator(usize, usize),
    #[error("no fracture graph: labels {0:?} have no separating edge")]
    NoFracture(Vec<usize>),
    #[error("rank {0} too large for the full intersection check")]
    RankTooLarge(usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("tail tree has {0} vertices, at least 4 are required")]
    TailTooSmall(usize),
    #[error("vertex {0} is not a leaf of the tail tree")]
    BadAttachVertex(usize),
    #[error("{what} = {n} outside supported range {lo}..={hi}")]
    OutOfRange { what: &'static str, n: usize, lo: usize, hi: usize },
    #[error("coset space too large: index {0} exceeds limit {1}")]
    IndexOverflow(u128, u128),
    #[error("chamber limit {0} exceeded")]
    ChamberOverflow(u128),
    #[error("not a geometry: flag {0:?} is maximal but not a chamber")]
    NotAGeometry(Vec<usize>),
    #[error("subgroup is not contained in the group")]
    NotASubgroup,
    #[error("coset limit {0} exceeded, enumeration inconclusive")]
    CosetLimitExceeded(usize),
    #[error("word uses generator {index} but rank is {rank}")]
    BadGenerator { index: usize, rank: usize },
    #[error("rank mismatch: presentation has rank {0}, model has {1}")]
    RankMismatch(usize, usize),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
