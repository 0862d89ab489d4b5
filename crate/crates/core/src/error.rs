use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("block grid is not square or its blocks have mixed dimensions")]
    InhomogeneousBlocks,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("coefficient dimensions do not match")]
    DimensionMismatch,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("divisor is not monic")]
    NotMonic,
    #[error("degree {found} is too small, need at least {needed}")]
    DegreeTooSmall { found: usize, needed: usize },
    #[error("empty coefficient list")]
    NoCoefficients,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdgeId(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("edges {first:?} and {second:?} share tail and head")]
    DuplicateEdge { first: String, second: String },
    #[error("directed cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("edge {edge:?} violates rank: r(tail)={tail_rank}, r(head)={head_rank}")]
    RankViolation { edge: String, tail_rank: u32, head_rank: u32 },
    #[error("rank given for some vertices but not for {0:?}")]
    PartialRank(String),
    #[error("edge set is empty")]
    EmptyEdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HasseError {
    #[error("n = {n} outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error("order is not irreflexive at {0:?}")]
    Reflexive(String),
    #[error("order is not antisymmetric on {0:?}, {1:?}")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive on {0:?} < {1:?} < {2:?}")]
    NotTransitive(String, String, String),
    #[error("rank is not strictly monotone on {lower:?} < {upper:?}")]
    RankNotMonotone { lower: String, upper: String },
    #[error("cover {upper:?} > {lower:?} skips a rank")]
    RankGap { upper: String, lower: String },
    #[error("not a complex: {subset:?} is missing but {superset:?} is present")]
    NotAComplex { subset: String, superset: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("edges {0:?} and {1:?} do not share a tail")]
    NoCommonTail(String, String),
    #[error("edges {0:?} and {1:?} do not share a head")]
    NoCommonHead(String, String),
    #[error("an operation needs two distinct edges, got {0:?} twice")]
    SameEdge(String),
    #[error("edge set is not DU-complete")]
    NotComplete,
    #[error("edge set is not connected")]
    NotConnected,
    #[error("vertex {0:?} is not spanned by the edge set")]
    VertexOutsideSet(String),
    #[error("a positive path from {0:?} to {1:?} exists")]
    PathExists(String, String),
    #[error("no witness edge for ({u:?}, {v:?}): lemma violated, this is a bug")]
    LemmaViolated { u: String, v: String },
    #[error("host graph is not the boolean lattice the edge set was built on")]
    HostMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("root set is empty")]
    Empty,
    #[error("root index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("repeated index {0}")]
    RepeatedIndex(usize),
    #[error("index {index} lies in the subset")]
    IndexInSubset { index: usize },
    #[error("Vandermonde matrix V{0:?} is singular")]
    SingularVandermonde(Vec<usize>),
    #[error("quasideterminant v{0:?} is singular")]
    SingularQuasidet(Vec<usize>),
    #[error("value depends on ordering: {0}")]
    OrderingDependence(String),
    #[error("table invariant violated: {0}")]
    TableInvariant(String),
    #[error("specialization values must be pairwise distinct, {0} repeats")]
    RepeatedValue(String),
    #[error("no generic root set found after {0} attempts")]
    SamplingFailed(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("difference of the two operands is not invertible")]
    SingularDifference,
    #[error("labels are inconsistent at edge {edge:?}: {detail}")]
    InconsistentLabels { edge: String, detail: String },
    #[error("generator {0:?} has no value")]
    UnboundGenerator(String),
    #[error("edge set is not sufficient")]
    NotSufficient,
    #[error("sufficient set, but every source-to-sink path needs a label blocked by a singular difference")]
    Blocked,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("no path from the source to the vertex 1")]
    NoSourceSinkPath,
    #[error("divisor graph invariant violated: {0}")]
    Invariant(String),
    #[error("graph does not match the boolean lattice: {0}")]
    LatticeMismatch(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
