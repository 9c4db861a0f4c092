//! Laurent superpolynomials and rational superfunctions in one even
//! variable `z` and up to two odd variables.

mod eval;
mod poly;
mod rational;

use thiserror::Error;

use crate::grassmann::{GrassmannError, Parity};

pub use eval::SuperPoint;
pub use poly::SuperPolynomial;
pub use rational::RationalSuperfunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperfieldError {
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator body vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("denominator body vanishes identically after substitution")]
    SingularComposition,
    #[error("divisor has vanishing body")]
    NotInvertible,
    #[error("nilpotent part of the substituted even variable does not cube to zero")]
    NilpotencyViolation,
    #[error("substituted even variable is not parity-homogeneous even")]
    OddSubstitution,
    #[error("expected {expected} odd variables, found {found}")]
    OddVarCount { expected: u8, found: u8 },
}

/// One of the odd variables. A single odd variable `θ` shares the slot of `θ⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OddVar {
    Plus,
    Minus,
}

impl OddVar {
    pub(crate) fn bit(self) -> u8 {
        match self {
            OddVar::Plus => 1,
            OddVar::Minus => 2,
        }
    }

    pub fn other(self) -> OddVar {
        match self {
            OddVar::Plus => OddVar::Minus,
            OddVar::Minus => OddVar::Plus,
        }
    }
}

/// Monomial in the odd variables, always ordered `θ⁺θ⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ThetaMono(pub(crate) u8);

impl ThetaMono {
    pub const EMPTY: ThetaMono = ThetaMono(0);
    pub const PLUS: ThetaMono = ThetaMono(1);
    pub const MINUS: ThetaMono = ThetaMono(2);
    pub const BOTH: ThetaMono = ThetaMono(3);

    pub fn single(var: OddVar) -> Self {
        ThetaMono(var.bit())
    }

    pub fn all(odd_vars: u8) -> Vec<ThetaMono> {
        (0..(1u8 << odd_vars)).map(ThetaMono).collect()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, var: OddVar) -> bool {
        self.0 & var.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn parity(self) -> Parity {
        Parity::from_len(self.len())
    }

    pub(crate) fn required_vars(self) -> u8 {
        if self.contains(OddVar::Minus) {
            2
        } else if self.contains(OddVar::Plus) {
            1
        } else {
            0
        }
    }
}
