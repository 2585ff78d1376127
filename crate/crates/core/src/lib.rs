//! Alexander modules, Crowell maps, longitudes and medial quandles of link
//! diagrams, with finite shadows over `F_p[t]/(q)` for exhaustive checks.

pub mod alexmod;
pub mod finquot;
pub mod laurent;
pub mod linkdiag;
pub mod quandle;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Diagram(#[from] linkdiag::DiagramError),
    #[error(transparent)]
    Alex(#[from] alexmod::AlexError),
    #[error(transparent)]
    Finquot(#[from] finquot::FinquotError),
    #[error(transparent)]
    Quandle(#[from] quandle::QuandleError),
    #[error("unknown check '{0}'")]
    UnknownCheck(String),
}

impl Error {
    /// True for budget overruns, which callers report separately from
    /// computation errors.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::Finquot(e) => e.is_budget(),
            Error::Quandle(e) => e.is_budget(),
            _ => false,
        }
    }
}
