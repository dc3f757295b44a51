use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands use different variable tables")]
    TableMismatch,
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("term budget of {0} terms exceeded")]
    TermBudget(usize),
    #[error("state budget of {0} states exceeded")]
    StateBudget(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVar(String),
    #[error("circuit is not skew: product gate g{0} has no leaf child")]
    NotSkew(usize),
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("ABP edge labels carry constant terms")]
    AffineLabel,
    #[error("degree must be even, got {0}")]
    OddDegree(usize),
    #[error("automaton is nondeterministic at state {state} on `{var}`")]
    Nondeterministic { state: String, var: String },
    #[error("substitution output of degree {0} exceeds the cap of 3")]
    OutputDegree(usize),
    #[error("variable `{0}` is not mapped")]
    Unmapped(String),
    #[error("position {pos} has both variable and scalar images")]
    MixedPosition { pos: usize },
    #[error("witness word has coefficient {0}, expected 1")]
    WitnessCoefficient(String),
    #[error("polynomial is not set-multilinear")]
    NotSetMultilinear,
    #[error("word is not balanced")]
    Unbalanced,
    #[error("scalar {0} is not invertible in the configured field")]
    NotInvertible(String),
    #[error("invalid character table: {0}")]
    Chi(String),
    #[error("invalid family: {0}")]
    Family(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
