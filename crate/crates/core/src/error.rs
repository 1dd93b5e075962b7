use std::fmt;

use thiserror::Error;

use crate::element_set::ElementSet;

/// Which inequality or structural condition a ranked family fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// The two flats have no join (or no meet) inside the family.
    Z0 { x: ElementSet, y: ElementSet, missing: LatticeBound },
    /// The least flat has nonzero rank.
    Z1 { least: ElementSet, rank: usize },
    /// Nested flats whose rank gap is not strictly between 0 and the size gap.
    Z2 { lower: ElementSet, upper: ElementSet },
    /// Incomparable flats violating the corrected submodular inequality.
    Z3 { x: ElementSet, y: ElementSet },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeBound {
    Join,
    Meet,
    Least,
}

impl AxiomViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::Z0 { .. } => "Z0",
            AxiomViolation::Z1 { .. } => "Z1",
            AxiomViolation::Z2 { .. } => "Z2",
            AxiomViolation::Z3 { .. } => "Z3",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Z0 { x, y, missing } => {
                write!(f, "(Z0) flats {x:?} and {y:?} have no {missing:?} in the family")
            }
            AxiomViolation::Z1 { least, rank } => {
                write!(f, "(Z1) least flat {least:?} has rank {rank}, expected 0")
            }
            AxiomViolation::Z2 { lower, upper } => {
                write!(f, "(Z2) rank gap between {lower:?} and {upper:?} is out of range")
            }
            AxiomViolation::Z3 { x, y } => {
                write!(f, "(Z3) incomparable flats {x:?} and {y:?} violate the submodular bound")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum MatroidError {
    #[error("ground set of {0} elements exceeds the 64-element word limit")]
    GroundTooLarge(usize),
    #[error("{what} needs an exhaustive scan; {n} elements exceeds the limit of {limit}")]
    ScanLimit { what: &'static str, n: usize, limit: usize },
    #[error("duplicate flat {0:?}")]
    DuplicateFlat(ElementSet),
    #[error("flat {flat:?} has rank {rank} larger than its size")]
    RankExceedsSize { flat: ElementSet, rank: usize },
    #[error("flat {0:?} leaves the ground set")]
    FlatOutsideGround(ElementSet),
    #[error("presentation violates {0}")]
    Axiom(AxiomViolation),
    #[error("label `{0}` appears twice")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("deleted and contracted sets overlap in {0:?}")]
    MinorOverlap(ElementSet),
    #[error("set {0:?} leaves the ground set")]
    SetOutsideGround(ElementSet),
    #[error("rank oracle is not a matroid rank function: {0}")]
    BadOracle(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("intertwine parameters rejected: {0}")]
    Params(String),
    #[error("circuit-hyperplane family rejected: {0}")]
    ChFamily(String),
    #[error("search limit: {0}")]
    SearchLimit(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = MatroidError> = std::result::Result<T, E>;
