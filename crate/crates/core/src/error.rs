use thiserror::Error;

use crate::group::Element;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} does not belong to {group}")]
    Mismatch { element: String, group: String },

    #[error("invalid group descriptor: {0}")]
    InvalidGroup(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("rotation angles are rationally dependent: {0}")]
    DependentAngles(String),

    #[error("step {k} is not coprime to modulus {m}")]
    NotCoprime { k: u64, m: u64 },

    #[error("cut orders at {p} and {q} disagree on ({x}, {y}) beyond a cut")]
    IncompatibleCuts {
        x: Box<Element>,
        y: Box<Element>,
        p: Box<Element>,
        q: Box<Element>,
    },

    #[error("word is not reduced: {0}")]
    NotReduced(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("clause set is satisfiable; not a certificate")]
    NotUnsat,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search exhausted after {0} rounds")]
    Exhausted(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(element: &Element, group: &impl std::fmt::Display) -> Error {
    Error::Mismatch {
        element: element.to_string(),
        group: group.to_string(),
    }
}
