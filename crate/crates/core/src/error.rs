use thiserror::Error;

/// All failures raised by the library. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("negative entry at ({i},{j})")]
    NegativeEntry { i: usize, j: usize },
    #[error("nonzero diagonal entry at ({i},{i})")]
    NonzeroDiagonal { i: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("scale must be positive, got {0}")]
    NonpositiveScale(String),
    #[error("invalid twist word: {0}")]
    InvalidWord(String),
    #[error("matrix has non-integral entries")]
    NotIntegral,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not Perron-Frobenius: {0}")]
    NotPerronFrobenius(String),
    #[error("exact division by (x-1)^{exponent} failed")]
    DivisionFailed { exponent: usize },
    #[error("graph of omega is not bipartite")]
    NotBipartite,
    #[error("bipartition blocks are not contiguous")]
    BlocksNotContiguous,
    #[error("could not assign the PF root to a unique factor; raise precision")]
    AmbiguousRootAssignment,
    #[error("lambda is not a root of u_k at scale index {0}")]
    RootMismatch(usize),
    #[error("({i},{j}) is not an edge of G(omega)")]
    NotAnEdge { i: usize, j: usize },
    #[error("path is not supported in G(omega): edge ({i},{j}) missing")]
    NotSupported { i: usize, j: usize },
    #[error("row {0} of omega is zero")]
    DegenerateRow(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("word is not general: generator {0} unused")]
    NotGeneral(usize),
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("curves {i1} and {i2} intersect")]
    CurvesIntersect { i1: usize, i2: usize },
    #[error("surface {0} is outside the dimension formula range")]
    OutOfFormulaRange(String),
    #[error("{0} admits no pseudo-Anosov maps")]
    NoPseudoAnosov(String),
    #[error("path is not contractible")]
    NotContractible,
    #[error("path does not visit vertex {0}")]
    NotGeneralPath(usize),
    #[error("no stable degree found up to k = {k_max} (inconclusive)")]
    KBudgetExhausted { k_max: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 input validation, 3 mathematical
    /// precondition, 4 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            NotSquare { .. }
            | NotSymmetric { .. }
            | NegativeEntry { .. }
            | NonzeroDiagonal { .. }
            | IndexOutOfRange { .. }
            | NonpositiveScale(_)
            | InvalidWord(_)
            | DimensionMismatch { .. }
            | UnknownId(_)
            | Parse(_) => 2,
            KBudgetExhausted { .. } => 4,
            _ => 3,
        }
    }
}
