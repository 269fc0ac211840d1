use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition of {got} given where a partition of {expected} is required")]
    PartitionSize { expected: usize, got: usize },

    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("quandle axiom violated: {0}")]
    Axiom(AxiomViolation),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("pullback constraint violated: {0}")]
    Constraint(String),

    #[error("element is not in the kernel of the projection: {0}")]
    NotInKernel(String),

    #[error("not a transposition: {0}")]
    NotTransposition(String),

    #[error("relation fails in the permutation group: {0}")]
    RelationFails(String),

    #[error("group order exceeds the limit of {0} elements")]
    GroupTooLarge(usize),

    #[error(
        "infinite-order generator unsupported: generator {0} has no power relation in its class"
    )]
    InfiniteOrderGenerator(usize),

    #[error("duplicate power relation in one conjugacy class (generators {0} and {1})")]
    DuplicatePowerRelation(usize, usize),

    #[error("power relation exponent {exponent} for generator {generator} does not equal its order {order}")]
    PowerOrderMismatch {
        generator: usize,
        exponent: u64,
        order: u64,
    },

    #[error("{corollary} check failed: {detail}")]
    CorollaryFailed {
        corollary: &'static str,
        detail: String,
    },

    #[error(
        "methods disagree for partition ({partition}): snf gives {snf}, closed form gives {closed}"
    )]
    MethodDisagreement {
        partition: String,
        snf: String,
        closed: String,
    },
}

// not `#[from]`: that would also make the violation the error source and print it twice
impl From<AxiomViolation> for Error {
    fn from(v: AxiomViolation) -> Self {
        Error::Axiom(v)
    }
}

/// First violated quandle axiom, with 0-based witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("table is not square over 0..{size}: {detail}")]
    Shape { size: usize, detail: String },

    #[error("idempotence fails: {a} * {a} = {value}")]
    Idempotence { a: usize, value: usize },

    #[error("right translation by {b} is not bijective: {a1} * {b} = {a2} * {b}")]
    Bijectivity { b: usize, a1: usize, a2: usize },

    #[error("self-distributivity fails at (a, b, c) = ({a}, {b}, {c})")]
    SelfDistributivity { a: usize, b: usize, c: usize },
}
