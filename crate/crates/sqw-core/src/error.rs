use thiserror::Error;

/// Pair of polygons (one per tessellation) whose intersection has two or
/// more vertices, which rules out a Szegedy form for the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionObstruction {
    /// Index of the offending polygon in the first tessellation.
    pub alpha_index: usize,
    /// Index of the offending polygon in the second tessellation.
    pub beta_index: usize,
    /// The shared vertices (at least two).
    pub shared: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum SqwError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("bipartite parts must both be nonempty")]
    EmptyPart,

    #[error("bipartite graph is not connected")]
    Disconnected,

    #[error("vertex set {0:?} does not induce a clique")]
    NotAClique(Vec<usize>),

    #[error("polygons overlap at vertex {0}")]
    OverlappingPolygons(usize),

    #[error("polygon has no vertices")]
    EmptyPolygon,

    #[error("polygon amplitude at vertex {0} is zero")]
    ZeroAmplitude(usize),

    #[error("polygon amplitude vector has zero norm")]
    ZeroNorm,

    #[error("expected {expected} amplitudes, got {got}")]
    AmplitudeCount { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("a tessellation family needs at least two tessellations, got {0}")]
    FamilyTooSmall(usize),

    #[error("this operation is defined for exactly two tessellations, got {0}; diagonalize the operator directly instead")]
    TwoTessellationsRequired(usize),

    #[error("operation requires non-partial tessellations")]
    PartialTessellation,

    #[error("operator is not unitary (defect {0:.3e})")]
    NotUnitary(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("row {row} sums to {sum}, not 1")]
    NotStochastic { row: usize, sum: f64 },

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("stochastic matrix support disagrees with the bipartite edge set at ({x}, {y})")]
    SupportMismatch { x: usize, y: usize },

    #[error("polygons alpha[{}] and beta[{}] share vertices {:?}; no Szegedy form exists", .0.alpha_index, .0.beta_index, .0.shared)]
    Obstructed(ConversionObstruction),

    #[error("marked set must be a nonempty proper subset of the vertices")]
    InvalidMarkedSet,

    #[error("marked count {marked} invalid for {n} vertices")]
    InvalidMarkedCount { marked: usize, n: usize },

    #[error("not a valid Krausz partition: {0}")]
    InvalidPartition(String),

    #[error("tessellation family is invalid: {0}")]
    InvalidFamily(String),

    #[error("vertex {vertex} must lie in exactly one clique of each colour class")]
    VertexNotBicovered { vertex: usize },

    #[error("cliques {a} and {b} share {} vertices ({:?}); edge labelling is ambiguous", shared.len(), shared)]
    AmbiguousLabelling { a: usize, b: usize, shared: Vec<usize> },

    #[error("tolerance must be positive and finite")]
    InvalidTolerance,

    #[error("cross-check failed in {context} (defect {defect:.3e})")]
    CrossCheck { context: &'static str, defect: f64 },
}

pub type Result<T> = std::result::Result<T, SqwError>;
