use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("defining polynomial {0:#x} is reducible over F_2")]
    ReducibleModulus(u64),
    #[error("defining polynomial {poly:#x} does not have degree {n}")]
    BadModulusDegree { n: u32, poly: u64 },
    #[error("extension degree {0} outside the supported range 2..=32")]
    UnsupportedDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("w^2 + w = c has no solution in the base field (trace 1)")]
    NoSolution,
    #[error("x-coordinate does not lift to a rational point")]
    NoRationalPoint,
    #[error("group order {0} has no prime factor larger than 4")]
    DegenerateGroup(u64),
    #[error("summation polynomial formula not available for this curve form")]
    UnsupportedCurveForm,
    #[error("resultant operand has vanishing leading form in the eliminated variable")]
    ZeroLeadingForm,
    #[error("polynomial size limit exceeded ({terms} terms > {limit})")]
    SizeLimit { terms: usize, limit: usize },
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("no decomposition")]
    NoDecomposition,
    #[error("solver solution does not lift to a point relation")]
    LiftMismatch,
    #[error("budget exhausted after {trials} trials ({found} relations)")]
    BudgetExhausted { trials: u64, found: usize },
    #[error("no kernel vector: more relations needed")]
    NoKernel,
    #[error("combined kernel vector has b = 0 mod r")]
    DegenerateB,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
