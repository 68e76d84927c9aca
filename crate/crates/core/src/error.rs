use crate::environment::Direction;
use crate::ingest::JournalId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid journal id {id:?}: {reason}")]
    InvalidJournalId { id: String, reason: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("input contains no citation rows")]
    EmptyInput,

    #[error("cannot merge matrices for different years ({left} and {right})")]
    YearMismatch { left: i32, right: i32 },

    #[error("citation count overflow at ({citing}, {cited})")]
    CountOverflow { citing: JournalId, cited: JournalId },

    #[error("unknown journal {0}")]
    UnknownJournal(JournalId),

    #[error("column list is empty")]
    EmptyColumns,

    #[error("threshold {0} outside the open interval (0, 1)")]
    InvalidThreshold(f64),

    #[error("seed {seed} is isolated: it has no {direction} citations")]
    IsolatedSeed { seed: JournalId, direction: Direction },

    #[error("{0} is not a member of the environment")]
    NotAMember(JournalId),

    #[error("environment needs at least 2 members, found {0}")]
    TooFewMembers(usize),

    #[error("vector lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("need at least {needed} coordinates, found {found}")]
    TooShort { needed: usize, found: usize },

    #[error("undefined similarity: zero vector")]
    UndefinedSimilarity,

    #[error("vector entry {index} is negative or not finite ({value})")]
    InvalidEntry { index: usize, value: f64 },

    #[error("correlation undefined: zero variance")]
    ZeroVariance,

    #[error("unknown node {0:?}")]
    UnknownNode(String),

    #[error("duplicate node {0:?}")]
    DuplicateNode(String),

    #[error("duplicate edge {0}--{1}")]
    DuplicateEdge(String, String),

    #[error("self-loop on node {0:?}")]
    SelfLoop(String),

    #[error("edge weight must be positive and finite, got {0}")]
    InvalidWeight(f64),

    #[error("brute-force oracle is limited to {limit} nodes, graph has {nodes}")]
    OracleScale { nodes: usize, limit: usize },

    #[error("graph has no edges")]
    NoEdges,

    #[error("power iteration did not converge after {iterations} iterations (last change {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("no citable items in the two-year window")]
    NoCitableItems,

    #[error("self-citations ({self_cites}) exceed citations ({cites})")]
    SelfCitesExceedCites { self_cites: u64, cites: u64 },

    #[error("{0} receives no citations")]
    ZeroCitedTotal(JournalId),

    #[error("no counts recorded for {journal} in publication year {year}")]
    MissingYear { journal: JournalId, year: i32 },

    #[error("no glyph for node {0}")]
    MissingGlyph(JournalId),

    #[error("member sets disagree: {0}")]
    MemberMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("metadata: {0}")]
    Json(#[from] serde_json::Error),
}
