use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("vertex {vertex} is not minuscule for {diagram}")]
    NotMinuscule { diagram: String, vertex: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a reverse plane partition: {0}")]
    NotRpp(String),
    #[error("toggle at minimal element {0} needs a finite bound")]
    UnboundedToggle(usize),
    #[error("representation has a summand outside the minuscule category: {0}")]
    OutsideCategory(String),
    #[error("filling is not in the image of the bijection: {0}")]
    NotInImage(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
    #[error("could not sample an indecomposable for root {0} within budget")]
    SamplingBudget(String),
    #[error("generic Jordan data did not stabilise across samples: {0}")]
    GenericityFailure(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("inconsistent Jordan data: {0}")]
    JordanData(String),
    #[error("invalid rim hook: {0}")]
    InvalidRimHook(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
