use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed PD code at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arc {arc} is used {count} times (expected exactly 2)")]
    ArcMultiplicity { arc: u32, count: usize },

    #[error("diagram is not connected")]
    Disconnected,

    #[error("diagram is not planar: traced {faces} faces, Euler formula requires {expected}")]
    NonPlanar { faces: usize, expected: usize },

    #[error("inconsistent orientation at crossing {crossing}: {msg}")]
    Orientation { crossing: usize, msg: String },

    #[error("basepoint arc {0} does not occur in the diagram")]
    Basepoint(u32),

    #[error("graph is not connected")]
    GraphDisconnected,

    #[error("not a twisted unknot: {0}")]
    NotTwistedUnknot(String),

    #[error("Jones polynomial of a knot has a non-integral exponent (t^({num}/4))")]
    NonIntegralExponent { num: i64 },

    #[error("differentials do not compose to zero")]
    Composability,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("incidence number {0} is not a unit")]
    IncidenceNotUnit(i64),

    #[error("partial order on spanning trees has a cycle")]
    PosetCycle,

    #[error("filtration violated: {0}")]
    Filtration(String),

    #[error("diagram is not alternating")]
    NonAlternating,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("unknown knot `{0}`")]
    UnknownKnot(String),

    #[error("{crossings} crossings exceeds the brute-force cap of {cap}; pass --force to override")]
    TooLarge { crossings: usize, cap: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
