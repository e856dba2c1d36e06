use thiserror::Error;

/// Every failure the library can report.
///
/// Parse failures carry a human-readable location; domain failures carry
/// enough data to explain which precondition was violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("complex is not chordal: induced cycle ({})", .cycle.join(", "))]
    NotChordal { cycle: Vec<String> },

    #[error("complex is disconnected")]
    Disconnected,

    #[error("complex has fewer than two vertices")]
    Singleton,

    #[error("character is identically zero")]
    ZeroCharacter,

    #[error("character is not integral")]
    NonIntegral,

    #[error("character is not primitive (gcd of values is {gcd})")]
    NonPrimitive { gcd: String },

    #[error("character domain does not match the complex: {0}")]
    CharacterDomain(String),

    #[error("vertex sets are adjacent")]
    Adjacent,

    #[error("vertex sets intersect")]
    Overlapping,

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("no clique separates the given vertex sets")]
    NoCliqueSeparator,

    #[error("clique enumeration refused: {vertices} vertices exceeds the cap of {cap}")]
    CliqueCap { vertices: usize, cap: usize },

    #[error("ambient spaces do not match")]
    AmbientMismatch,

    #[error("graph of groups has {0} vertices, expected exactly one")]
    NotSingleVertex(usize),

    #[error("edge {0} has no stable letter")]
    MissingStableLetter(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Stable machine-readable tag, used in CLI error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NotChordal { .. } => "not_chordal",
            Error::Disconnected => "disconnected",
            Error::Singleton => "singleton",
            Error::ZeroCharacter => "zero_character",
            Error::NonIntegral => "non_integral",
            Error::NonPrimitive { .. } => "non_primitive",
            Error::CharacterDomain(_) => "character_domain",
            Error::Adjacent => "adjacent",
            Error::Overlapping => "overlapping",
            Error::EmptyVertexSet => "empty_vertex_set",
            Error::NoCliqueSeparator => "no_clique_separator",
            Error::CliqueCap { .. } => "clique_cap",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::NotSingleVertex(_) => "not_single_vertex",
            Error::MissingStableLetter(_) => "missing_stable_letter",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }

    /// Whether the failure comes from reading input rather than from the mathematics.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
