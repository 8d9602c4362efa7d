use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has {size} vertices, limit is {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operands live over different graphs")]
    GraphMismatch,
    #[error("the identity element has no rank")]
    EmptyWord,
    #[error("root search exceeded its budget of {0} candidates")]
    RootSearchBudget(usize),
    #[error("word is not equal to its reverse")]
    NotReverseInvariant,
    #[error("illegal generator {symbol}: {reason}")]
    IllegalGenerator { symbol: String, reason: String },
    #[error("images do not define an endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("no provenance and no factorization available to invert")]
    NoProvenance,
    #[error("automorphism is not palindromic")]
    NotPalindromic,
    #[error("automorphism is not pure palindromic")]
    NotPurePalindromic,
    #[error("automorphism does not commute with the hyperelliptic involution")]
    NotInCentralizer,
    #[error("extracted middle-letter map is not a graph automorphism")]
    NotGraphAutomorphism,
    #[error("matrix is not in the level-2 image: {0}")]
    NotInTheta(String),
    #[error("length descent stalled at length {0}")]
    DescentStall(usize),
    #[error("runtime assumption failed: {0}")]
    AssumptionFailed(String),
    #[error("fixed set cannot be respected: {0}")]
    FixedSetViolated(String),
    #[error("Torelli search exhausted its budget after {nodes} nodes (depth {depth})")]
    TorelliBudget { nodes: usize, depth: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index out of range: {0}")]
    Index(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::Parse(_) => "Parse",
            Error::GraphMismatch => "GraphMismatch",
            Error::EmptyWord => "EmptyWord",
            Error::RootSearchBudget(_) => "RootSearchBudget",
            Error::NotReverseInvariant => "NotReverseInvariant",
            Error::IllegalGenerator { .. } => "IllegalGenerator",
            Error::NotEndomorphism(_) => "NotEndomorphism",
            Error::NoProvenance => "NoProvenance",
            Error::NotPalindromic => "NotPalindromic",
            Error::NotPurePalindromic => "NotPurePalindromic",
            Error::NotInCentralizer => "NotInCentralizer",
            Error::NotGraphAutomorphism => "NotGraphAutomorphism",
            Error::NotInTheta(_) => "NotInTheta",
            Error::DescentStall(_) => "DescentStall",
            Error::AssumptionFailed(_) => "AssumptionFailed",
            Error::FixedSetViolated(_) => "FixedSetViolated",
            Error::TorelliBudget { .. } => "TorelliBudget",
            Error::Precondition(_) => "Precondition",
            Error::Index(_) => "Index",
        }
    }
}
