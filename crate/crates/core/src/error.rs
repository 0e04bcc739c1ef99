use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ground set size {n} outside 1..={max}")]
    GroundSize { n: usize, max: usize },
    #[error("element {element} outside the ground set [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("empty member set is only allowed in an explicit k = 0 family")]
    EmptyMember,
    #[error("members {first} and {second} are identical")]
    DuplicateMember { first: usize, second: usize },
    #[error("operation needs at least {needed} members, family has {got}")]
    TooFewMembers { needed: usize, got: usize },
    #[error("petal count must be at least 2, got {0}")]
    PetalCount(usize),
    #[error("member index {index} out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("member {index} has {size} elements, family must be {k}-uniform")]
    NotUniform { index: usize, size: usize, k: usize },
    #[error("members {first} and {second} meet in {size} elements, not allowed by {allowed:?}")]
    IntersectionViolation {
        first: usize,
        second: usize,
        size: usize,
        allowed: Vec<usize>,
    },
    #[error("family contains a sunflower with {r} petals: members {petals:?}")]
    ContainsSunflower { r: usize, petals: Vec<usize> },
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("{what} exceeds the configured limit {limit}")]
    SizeLimit { what: &'static str, limit: usize },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}
