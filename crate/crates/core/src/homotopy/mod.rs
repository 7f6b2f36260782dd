//! The map `f: V → K(π,1)` as edge words, and relative systoles computed in the
//! covering space associated with `ker f_*`.

mod group;
mod phi;
mod systole;
mod words;

pub use group::{
    word_is_trivial, CyclicOracle, FreeAbelianOracle, FreeOracle, GroupPresentation, OracleKind,
    PresentationDocument, WordOracle,
};
pub use phi::{EdgeHomomorphism, HomomorphismDocument, Normality};
pub use systole::{
    covering_ball, pointwise_systole, relative_systole, systolic_ratio, CoveringBall, LoopWitness, SystoleOptions,
    SystoleResult,
};
pub use words::{concat, format_word, free_reduce, inverse, letter, parse_word, Letter, Word};

use thiserror::Error;

use crate::mesh::Simplex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomotopyError {
    #[error("custom group has no word-problem routine")]
    UndecidableOracle,
    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },
    #[error("malformed word `{word}`: {reason}")]
    MalformedWord { word: String, reason: String },
    #[error("invalid presentation: {reason}")]
    InvalidPresentation { reason: String },
    #[error("tree edges do not form a spanning tree: {reason}")]
    NotSpanningTree { reason: String },
    #[error("tree edge ({u}, {v}) carries a nontrivial word")]
    TreeEdgeWord { u: usize, v: usize },
    #[error("edge ({u}, {v}) is given two different words")]
    ConflictingEdgeWord { u: usize, v: usize },
    #[error("({u}, {v}) is not an edge of the complex")]
    UnknownEdge { u: usize, v: usize },
    #[error("boundary of triangle {simplex:?} maps to `{word}`, not the identity")]
    CocycleViolation { simplex: Simplex, word: String },
    #[error("covering search stopped after {states} states; systole is at least {lower_bound}")]
    SearchCutoffExceeded { lower_bound: f64, states: usize },
    #[error("systole is infinite: no loop has nontrivial image")]
    InfiniteSystole,
    #[error("node {node} is not in the graph")]
    UnknownNode { node: usize },
}

impl HomotopyError {
    pub fn kind(&self) -> &'static str {
        match self {
            HomotopyError::UndecidableOracle => "UndecidableOracle",
            HomotopyError::UnknownGenerator { .. } => "UnknownGenerator",
            HomotopyError::MalformedWord { .. } => "MalformedWord",
            HomotopyError::InvalidPresentation { .. } => "InvalidPresentation",
            HomotopyError::NotSpanningTree { .. } => "NotSpanningTree",
            HomotopyError::TreeEdgeWord { .. } => "TreeEdgeWord",
            HomotopyError::ConflictingEdgeWord { .. } => "ConflictingEdgeWord",
            HomotopyError::UnknownEdge { .. } => "UnknownEdge",
            HomotopyError::CocycleViolation { .. } => "CocycleViolation",
            HomotopyError::SearchCutoffExceeded { .. } => "SearchCutoffExceeded",
            HomotopyError::InfiniteSystole => "InfiniteSystole",
            HomotopyError::UnknownNode { .. } => "UnknownNode",
        }
    }
}
