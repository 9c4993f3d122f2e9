use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The parameters fall outside the hypotheses of the bound being evaluated.
    #[error("out of regime: {0}")]
    OutOfRegime(String),

    #[error("size limit exceeded: {what} needs {required} > budget {budget}")]
    SizeLimit {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("degenerate plane: the two plane vectors are (nearly) parallel")]
    DegeneratePlane,

    #[error("unbounded shadow: the polytope is unbounded in a direction of the plane")]
    UnboundedShadow,

    #[error("invalid start vertex: {0}")]
    InvalidStart(String),

    #[error("infeasible margin: nu = {0} is not positive")]
    InfeasibleMargin(f64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
