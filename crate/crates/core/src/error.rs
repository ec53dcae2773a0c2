use thiserror::Error;

/// Errors raised while building or transforming posets and maps.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("self-arrow on `{0}`")]
    SelfArrow(String),
    #[error("directed cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),
    #[error("map table has {got} entries, source has {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("map is not monotone: `{lo}` <= `{hi}` but images `{lo_image}`, `{hi_image}` are not ordered")]
    NotMonotone {
        lo: String,
        hi: String,
        lo_image: String,
        hi_image: String,
    },
    #[error("poset is not atomic: `{0}` is not the join of the atoms below it")]
    NotAtomic(String),
    #[error("map is not full: fiber over `{0}` is not a full subposet")]
    NotFull(String),
    #[error("`{r}` is not strictly above `{q}`")]
    NotAbove { r: String, q: String },
    #[error("no element of the fiber over `{q}` lies below `{p}`")]
    EmptyHatcherCone { p: String, q: String },
    #[error("target is not conditionally complete")]
    NotConditionallyComplete,
    #[error("diagram is not functorial at {0} > {1} > {2}")]
    NotFunctorial(String, String, String),
    #[error("diagram is missing the map for {0} > {1}")]
    MissingEdge(String, String),
    #[error("source is not nonsingular: interval [{0}, {1}] has three elements")]
    Singular(String, String),
    #[error("adjunction relation has a cycle: {}", .0.join(" < "))]
    AdjunctionCycle(Vec<String>),
    #[error("subposet mask has universe {got}, poset has {expected} elements")]
    MaskSize { expected: usize, got: usize },
    #[error("facet complex: {0}")]
    Facets(String),
    #[error("zip conditions fail at ({p}; {q}, {r}): {reason}")]
    ZipConditions {
        p: String,
        q: String,
        r: String,
        reason: String,
    },
    #[error("edge {v}{w} violates the link condition")]
    LinkCondition { v: String, w: String },
    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("scheme invariant violated: {0}")]
    Scheme(String),
    #[error("relation is not transitive: {a} < {b} < {c} but not {a} < {c}")]
    NotTransitive { a: String, b: String, c: String },
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
