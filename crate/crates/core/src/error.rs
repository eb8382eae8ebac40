use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Named failure of a short-exact-sequence invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactnessError {
    #[error("maps are not composable: mono target differs from epi source")]
    NotComposable,
    #[error("first map is not injective at vertex {0}")]
    NotMono(usize),
    #[error("second map is not surjective at vertex {0}")]
    NotEpi(usize),
    #[error("composite of the two maps is nonzero")]
    CompositeNonzero,
    #[error("dimension count fails at vertex {vertex}: {middle} != {left} + {right}")]
    DimensionCount { vertex: usize, left: usize, middle: usize, right: usize },
    #[error("image of the mono differs from the kernel of the epi at vertex {0}")]
    NotExactInMiddle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: relation {relation} does not vanish ({detail})")]
    InvalidModule { relation: usize, detail: String },
    #[error("invalid module: {0}")]
    ModuleShape(String),
    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("short exact sequence rejected: {0}")]
    Exactness(#[from] ExactnessError),
    #[error("no lift exists: extension class with coordinates {coordinates:?} is nonzero")]
    LiftObstruction { coordinates: Vec<u32> },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error(
        "the two descriptions of W disagree on catalog object {id} ({kind}): coresolution {coresolution}, resolution {resolution}"
    )]
    DescriptionsDisagree { id: usize, kind: String, coresolution: String, resolution: String },
}
