use thiserror::Error;

pub type Result<T, E = MagError> = std::result::Result<T, E>;

/// Everything that can go wrong while building, encoding or measuring a MAG.
#[derive(Debug, Error)]
pub enum MagError {
    #[error("bit string must not be empty")]
    EmptyBitString,

    #[error("companion tuple needs at least one aspect")]
    EmptyTuple,

    #[error("aspect {aspect} has size 0")]
    ZeroAspect { aspect: usize },

    #[error("multidimensional space does not fit in 64-bit counters: {0}")]
    Overflow(String),

    #[error("space needs {bits} edge bits, above the size cap of {cap} bits")]
    SizeCap { bits: u64, cap: u64 },

    #[error("coordinate {value} of aspect {aspect} is outside 1..={size}")]
    InvalidCoordinate { aspect: usize, value: u64, size: u64 },

    #[error("vertex has {got} coordinates, companion tuple has order {expected}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (must be < {limit})")]
    IndexOutOfRange { index: u64, limit: u64 },

    #[error("composite edge would be a self-loop")]
    SelfLoop,

    #[error("expected {expected} bits, got {got}")]
    LengthMismatch { expected: u64, got: u64 },

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("malformed stream: {0}")]
    Malformed(String),

    #[error("stream ended early")]
    Truncated,

    #[error("graph has {graph} vertices but the companion tuple spans {tuple}")]
    VertexCountMismatch { graph: u64, tuple: u64 },

    #[error("vertex map is not a permutation: {0}")]
    NotPermutation(String),

    #[error("zero has no Elias-gamma code")]
    ZeroValue,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("degenerate space: {0}")]
    Degenerate(String),

    #[error("unknown compressor `{0}`")]
    UnknownCompressor(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl MagError {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            MagError::SizeCap { .. } => 3,
            MagError::Io(_) => 4,
            _ => 2,
        }
    }
}
