//! The super-Riemann spheres `S²Ĉ(n)`, given by their transition map
//! `Iₙ`, and their automorphism groups.

mod action;
mod north;
mod params;
mod validate;

use thiserror::Error;

use crate::gaussian::GaussianRational;
use crate::grassmann::Supernumber;
use crate::superconformal::{ScError, SuperconformalMap};
use crate::superfield::{RationalSuperfunction, SuperfieldError};

pub use action::{group_action, kernel_check, odd_translation, GroupElement};
pub use north::{NorthReport, PoleReport};
pub use params::{normalize_determinant, AutomorphismParams, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not in the automorphism family: {0}")]
    NotInFamily(String),
    #[error(transparent)]
    Superconformal(#[from] ScError),
    #[error(transparent)]
    Superfield(#[from] SuperfieldError),
}

/// `S²Ĉ(n)`, represented by its transition map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperSphere {
    pub n: i32,
    pub transition: SuperconformalMap,
}

impl SuperSphere {
    pub fn new(n: i32, generators: usize) -> Self {
        Self { n, transition: transition(n, generators) }
    }
}

/// `Iₙ(z, θ⁺, θ⁻) = (1/z, iθ⁺z^{n−1}, iθ⁻z^{−n−1})`.
pub fn transition(n: i32, generators: usize) -> SuperconformalMap {
    transition_with_unit(n, generators, GaussianRational::i())
}

/// `Iₙ⁻¹ = (1/z, −iθ⁺z^{n−1}, −iθ⁻z^{−n−1})`.
pub fn transition_inverse(n: i32, generators: usize) -> SuperconformalMap {
    transition_with_unit(n, generators, -GaussianRational::i())
}

fn transition_with_unit(n: i32, l: usize, unit: GaussianRational) -> SuperconformalMap {
    let u = RationalSuperfunction::scalar(l, 2, unit);
    SuperconformalMap::new(
        RationalSuperfunction::z_pow(l, 2, -1),
        &u * &RationalSuperfunction::z_pow(l, 2, n - 1),
        &u * &RationalSuperfunction::z_pow(l, 2, -n - 1),
        RationalSuperfunction::zero(l, 2),
        RationalSuperfunction::zero(l, 2),
    )
}

/// An automorphism of `S²Ĉ(n)`, stored as its southern-chart map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereAutomorphism {
    pub n: i32,
    pub southern: SuperconformalMap,
}

impl SphereAutomorphism {
    pub fn identity(n: i32, generators: usize) -> Self {
        Self { n, southern: SuperconformalMap::identity(generators) }
    }

    pub fn generators(&self) -> usize {
        self.southern.generators()
    }

    /// `self ∘ inner`, validated back into the family.
    pub fn compose(&self, inner: &Self) -> Result<(Self, AutomorphismParams), SphereError> {
        if self.n != inner.n {
            return Err(SphereError::InvalidParams(format!("degree mismatch {} vs {}", self.n, inner.n)));
        }
        let m = self.southern.compose(&inner.southern)?;
        let p = AutomorphismParams::validate(&m, self.n)?;
        Ok((Self { n: self.n, southern: m }, p))
    }

    pub fn inverse(&self) -> Result<Self, SphereError> {
        Ok(Self { n: self.n, southern: self.southern.invert()? })
    }

    pub fn params(&self) -> Result<AutomorphismParams, SphereError> {
        AutomorphismParams::validate(&self.southern, self.n)
    }
}

/// `(cz + d)` as a function.
pub(crate) fn linear(c: &Supernumber, d: &Supernumber) -> RationalSuperfunction {
    let l = c.generators();
    &(&RationalSuperfunction::constant(c.clone(), 2) * &RationalSuperfunction::z(l, 2))
        + &RationalSuperfunction::constant(d.clone(), 2)
}

/// `(cz + d)^k` for any integer `k`.
pub(crate) fn linear_pow(c: &Supernumber, d: &Supernumber, k: i32) -> Result<RationalSuperfunction, SuperfieldError> {
    let lin = linear(c, d);
    if k >= 0 {
        Ok(lin.pow(k as u32))
    } else {
        Ok(lin.recip()?.pow(k.unsigned_abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_function;

    #[test]
    fn transition_examples() {
        let l = 4;
        let p = |s: &str| parse_function(s, l, 2).unwrap();
        let t0 = transition(0, l);
        assert_eq!(t0.g_plus, p("(0+1i)*z^(-1)"));
        assert_eq!(t0.g_minus, p("(0+1i)*z^(-1)"));
        let t1 = transition(1, l);
        assert_eq!(t1.g_plus, p("(0+1i)"));
        assert_eq!(t1.g_minus, p("(0+1i)*z^(-2)"));
        for n in -4..=4 {
            assert!(transition(n, l).is_superconformal());
            assert_eq!(transition(n, l).compose(&transition_inverse(n, l)).unwrap(), SuperconformalMap::identity(l));
        }
    }
}
