use thiserror::Error;

/// Everything that can go wrong inside the decomposition library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size {requested} exceeds the capacity limit of {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("outcome space must contain at least one outcome")]
    EmptySpace,

    #[error("duplicate outcome label {0:?}")]
    DuplicateLabel(String),

    #[error("values refer to different outcome spaces")]
    SpaceMismatch,

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("outcome index {index} out of range for a space of {n} outcomes")]
    OutOfRange { index: usize, n: usize },

    #[error("weight {value} at outcome {index} is negative or not finite")]
    Domain { index: usize, value: f64 },

    #[error("atom of degree {0} is not an element of the complex (degree must be at least 2)")]
    Degree(u32),

    #[error("distribution is not normalized (total mass {0})")]
    Unnormalized(f64),

    #[error("finite-difference step {step} is too large for member weight {weight}")]
    StepUnderflow { step: f64, weight: f64 },

    #[error("outcome {0} is not a member of the atom")]
    NotMember(usize),

    #[error("derivative order {0} is not supported (expected 0, 1 or 2)")]
    DerivativeOrder(u32),

    #[error("variable {0:?} is not bound")]
    UnboundVariable(String),

    #[error("generator has a zero-probability member; its sign is undefined")]
    UndefinedSign,

    #[error("sign law violated: expected {expected}, measured {value}")]
    SignLaw { expected: i8, value: f64 },

    #[error("co-information of {variables} variables has a minimal generator of degree {degree}")]
    DegreeBound { variables: usize, degree: u32 },

    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error("operation requires a nonempty ideal")]
    EmptyIdeal,

    #[error("construction would produce {0} partitions, above the limit")]
    BlowUp(usize),

    #[error("no witness distribution with a stable sign found for generator {0}")]
    NoWitness(String),

    #[error("at least {expected} entries are required, found {found}")]
    TooFew { expected: usize, found: usize },

    #[error("unknown gate {0:?}")]
    UnknownGate(String),

    #[error("gate dimensions must be positive, got {nx}x{ny}")]
    GateShape { nx: usize, ny: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
