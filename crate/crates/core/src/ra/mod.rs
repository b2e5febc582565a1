//! Right-angled Artin and Coxeter groups: defining graphs, normal forms,
//! balls in the universal covers, and the explicit automorphisms built on
//! them.

use thiserror::Error;

use crate::automorphism::AutomorphismError;
use crate::median::ComplexError;

pub mod ball;
pub mod davis;
pub mod extension;
pub mod gamma;
pub mod stars;
pub mod syllable;
pub mod twist;
pub mod word;

pub use ball::Ball;
pub use gamma::{DefiningGraph, Generator};
pub use word::{Group, GroupKind, Letter, NormalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RaError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("invalid defining graph: {0}")]
    InvalidGraph(String),
    #[error("ball has {found} vertices, cap is {cap}")]
    SizeLimitExceeded { found: usize, cap: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error("hyperplane {0} carries several labels")]
    LabelIncoherent(usize),
    #[error("generators {0} and {1} are adjacent")]
    GeneratorsAdjacent(String, String),
    #[error("ball too small: {0}")]
    BallTooSmall(String),
    #[error("no star containment St {0} ⊆ St {1}")]
    StarNotContained(String, String),
    #[error("not interior: {0}")]
    NotInterior(String),
    #[error("defining graph is not a cone")]
    NotACone,
    #[error("wrong group kind: {0}")]
    WrongKind(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
