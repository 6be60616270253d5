use thiserror::Error;

use crate::rootdata::LeviSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid rank {rank} for type {letter}")]
    InvalidRank { letter: char, rank: usize },

    #[error("total rank {0} exceeds the supported maximum of 63")]
    RankTooLarge(usize),

    #[error("lattice basis must be {expected}x{expected}, got {rows}x{cols}")]
    LatticeShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("lattice basis matrix is singular")]
    SingularLattice,

    #[error("lattice does not contain the simple root alpha_{0}")]
    LatticeContainment(usize),

    #[error("Levi set {small} is not contained in {large}")]
    NotSubset { small: LeviSet, large: LeviSet },

    #[error("Levi set {set} refers to simple roots beyond rank {rank}")]
    LeviOutOfRange { set: LeviSet, rank: usize },

    #[error("component group of Z(L_S) is nontrivial for proper S = {0}")]
    NontrivialPi0(LeviSet),

    #[error("center diagram is not functorial along {0} -> {1} -> {2}")]
    FunctorialityViolation(LeviSet, LeviSet, LeviSet),

    #[error("purity substitution produced a non-polynomial term (q-degree {degree} > {bound})")]
    NonPolynomialResult { degree: usize, bound: usize },

    #[error("purity substitution produced a negative coefficient {coeff} at t^{degree}")]
    NegativeCoefficient { degree: usize, coeff: String },

    #[error("boundary homology is not that of S^{expected_dim}: got {betti:?}")]
    BoundaryNotSphere {
        expected_dim: usize,
        betti: Vec<usize>,
    },
}

impl Error {
    /// Whether the error is a mathematical refusal rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NontrivialPi0(_)
                | Error::NonPolynomialResult { .. }
                | Error::NegativeCoefficient { .. }
        )
    }
}
