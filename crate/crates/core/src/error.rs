use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants split into two families: malformed input (`Parse`, `Invalid`)
/// and domain preconditions (parabolic points, rational inputs, degenerate
/// ideals). The CLI maps the first family to exit code 1 and the second to 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("zero ideal")]
    ZeroIdeal,

    #[error("rational input")]
    RationalInput,

    #[error("precision exhausted: at most {max_safe} partial quotients are determined")]
    PrecisionExhausted { max_safe: usize },

    #[error("empty word")]
    EmptyWord,

    #[error("{0} is not the largest entry of a Markov triple within the search bound")]
    NotMarkov(u64),

    #[error("parabolic point")]
    ParabolicPoint,

    #[error("not a closed geodesic: {0}")]
    NotClosedGeodesic(String),

    #[error("parabolic/upper-triangular: same horoball")]
    SameHoroball,

    #[error("horoball not precisely invariant: |q| = {0} < 1")]
    OverlappingHoroball(f64),

    #[error("insufficient depth")]
    InsufficientDepth,

    #[error("not in group: {0}")]
    NotInGroup(String),

    #[error("not loxodromic: {0}")]
    NotLoxodromic(&'static str),

    #[error("empty generator set")]
    EmptyGenerators,

    #[error("explicit E'_I form requires the maximal order O_-m")]
    NonMaximalOrder,

    #[error("point violates the Heisenberg constraint 2 Re z = |w|^2 (residual {0})")]
    HeisenbergConstraint(f64),

    #[error("no admissible triples")]
    NoAdmissibleTriples,

    #[error("no admissible pairs")]
    NoAdmissiblePairs,

    #[error("non-positive argument {0}")]
    NonPositive(f64),

    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

impl Error {
    /// True for failures caused by the mathematical domain rather than by
    /// malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse(_) | Error::Invalid(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
