use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field specification has no sites")]
    EmptySpec,
    #[error("site `{0}` is declared more than once")]
    DuplicateSite(String),
    #[error("site `{0}` has an empty alphabet")]
    EmptyAlphabet(String),
    #[error("site `{site}` lists label `{label}` more than once")]
    DuplicateLabel { site: String, label: String },
    #[error("unknown site `{0}`")]
    UnknownSite(String),
    #[error("label `{label}` is not in the alphabet of site `{site}`")]
    UnknownLabel { site: String, label: String },
    #[error("assignment has {got} labels, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("assignment ({0}) is listed more than once")]
    DuplicateAssignment(String),
    #[error("invalid weight `{0}`: expected a nonnegative integer or p/q")]
    InvalidWeight(String),
    #[error("total weight is zero")]
    ZeroTotalWeight,
    #[error("label `{label}` of site `{site}` has zero marginal probability")]
    ZeroMarginalLabel { site: String, label: String },
    #[error("site index {site} out of range for a field with {n} sites")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("{what} is {size}, above the limit of {limit}")]
    InstanceTooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("malformed event: {0}")]
    MalformedEvent(String),
    #[error("conditioning event has probability zero")]
    ConditioningEventNull,
    #[error("cells do not form a partition of the outcome space: {0}")]
    NotAPartition(String),
    #[error("site set {sub} is not a subset of {sup}")]
    NotASubset { sub: String, sup: String },
    #[error("target site {0} may not appear in the information set")]
    TargetInScope(usize),
    #[error("assignment scope and constraint scope overlap on site {0}")]
    OverlappingScopes(usize),
    #[error("constraint on site {0} admits no labels")]
    EmptyConstraint(usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("enumeration would visit {projected} weight vectors, above the cap of {cap}")]
    BoundsTooLarge { projected: u128, cap: u128 },
    #[error("invalid enumeration bounds: {0}")]
    InvalidBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
}
