use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} outside ground [{lo}, {n}]")]
    ElementOutOfGround { element: u32, lo: u32, n: u32 },
    #[error("ground size {0} exceeds the 128-element representation limit")]
    GroundTooLarge(u32),
    #[error("set has {found} elements, expected {expected}")]
    WrongCardinality { expected: u32, found: u32 },
    #[error("duplicate member in family")]
    DuplicateMember,
    #[error("ground mismatch: {0} vs {1}")]
    GroundMismatch(u32, u32),
    #[error("characteristic set is empty within its ground")]
    EmptyCharSet,
    #[error("families are not cross-intersecting")]
    NotCrossIntersecting,
    #[error("family is not intersecting")]
    NotIntersecting,
    #[error("parameter out of range: {0}")]
    ParamRange(String),
    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn range(msg: impl Into<String>) -> Error {
        Error::ParamRange(msg.into())
    }
}
