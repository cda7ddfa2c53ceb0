use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair {{{0}, {1}}} is listed more than once")]
    DuplicatePair(usize, usize),

    #[error("self loop at vertex {0}")]
    SelfLoop(usize),

    #[error("pair {{{0}, {1}}} is not covered by any edge")]
    MissingPair(usize, usize),

    #[error("vertex {vertex} is out of range for a tournament on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} appears more than once in a vertex list")]
    DuplicateVertex(usize),

    #[error("expected {expected} blocks, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("generator set does not define a tournament: pair {{{u}, {v}}} oriented {times} times")]
    NotATournament { u: usize, v: usize, times: u8 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{what} too large: {size} exceeds the limit {max}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },

    #[error("chain must have at least one element")]
    EmptyChain,

    #[error("h must be at least 2, got {0}")]
    HTooSmall(usize),

    #[error("unknown witness `{0}` (expected one of tau1, tau2, T5, U7, V7, H3)")]
    UnknownWitness(String),

    #[error("enumeration budget exceeded: {needed} subsets needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("index tournament has {size} vertices, at most {max} are supported")]
    IndexTooLarge { size: usize, max: usize },

    #[error("series has {got} terms, at least {needed} are required")]
    TooFewTerms { got: usize, needed: usize },

    #[error("n = {n} is outside the domain of {formula}")]
    Domain { formula: &'static str, n: u64 },

    #[error("non-integer value for {formula} at n = {n}")]
    NonInteger { formula: &'static str, n: u64 },

    #[error("floating-point form disagrees with the recurrence at n = {n}: {float} vs {exact}")]
    Precision { n: u64, float: u128, exact: u128 },

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("line {line}: {msg}")]
    BadFile { line: usize, msg: String },
}
