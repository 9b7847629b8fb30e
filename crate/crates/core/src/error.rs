use crate::logic::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{count} propositions exceed the enumeration bound of {max}")]
    TooManyPropositions { count: usize, max: usize },
    #[error("conditioning event `{0}` is impossible")]
    ImpossibleConditioning(String),
    #[error("value {0} is outside [0, 1]")]
    ValueOutOfRange(String),
    #[error("event `{0}` is not in the algebra generated by the assessed events")]
    NotInAlgebra(String),
    #[error("the base assessment is not coherent")]
    IncoherentBase,
    #[error("the default knowledge base is inconsistent")]
    InconsistentKb,
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}
