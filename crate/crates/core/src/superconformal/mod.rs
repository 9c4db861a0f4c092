//! N=2 superconformal maps in component form `(f, g±, ψ±)`, their full
//! coordinate expansions, composition, inversion, and the correspondence
//! with N=1 superanalytic maps.

mod invert;
mod n1;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::Parity;
use crate::serial::{function_from_json, function_to_json, FunctionJson};
use crate::superfield::{OddVar, RationalSuperfunction, SuperfieldError, ThetaMono};
use crate::text::ParseError;

pub use n1::N1SuperanalyticMap;
pub(crate) use invert::body_mobius;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clause {
    /// `f′ = (ψ⁺)′ψ⁻ − ψ⁺(ψ⁻)′ + g⁺g⁻`
    Constraint,
    GPlusBody,
    GMinusBody,
    /// `D⁺θ̃⁻ = 0`
    DPlusThetaMinus,
    /// `D⁻θ̃⁺ = 0`
    DMinusThetaPlus,
    /// `D⁺z̃ − θ̃⁻D⁺θ̃⁺ = 0`
    DPlusZ,
    /// `D⁻z̃ − θ̃⁺D⁻θ̃⁻ = 0`
    DMinusZ,
    ExpansionMismatch,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::Constraint => "f' = psi+' psi- - psi+ psi-' + g+ g-",
            Clause::GPlusBody => "g+ has nonzero body",
            Clause::GMinusBody => "g- has nonzero body",
            Clause::DPlusThetaMinus => "D+ theta-~ = 0",
            Clause::DMinusThetaPlus => "D- theta+~ = 0",
            Clause::DPlusZ => "D+ z~ - theta-~ D+ theta+~ = 0",
            Clause::DMinusZ => "D- z~ - theta+~ D- theta-~ = 0",
            Clause::ExpansionMismatch => "full map equals the expansion of its components",
        };
        f.write_str(s)
    }
}

/// Outcome of a superconformality check. Parity and coefficient-range
/// observations are informational and never make a map invalid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnosis {
    pub failures: Vec<Clause>,
    pub parity_homogeneous: bool,
    pub coefficients_in_bound: bool,
}

impl Diagnosis {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<Clause> {
        self.failures.first().copied()
    }
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "superconformal");
        }
        let v: Vec<String> = self.failures.iter().map(|c| c.to_string()).collect();
        write!(f, "violated: {}", v.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScError {
    #[error(transparent)]
    Superfield(#[from] SuperfieldError),
    #[error("not superconformal ({0})")]
    NotSuperconformal(Diagnosis),
    #[error("component {0} has vanishing body")]
    NotInvertibleComponent(&'static str),
    #[error("map is not invertible: {0}")]
    NotInvertible(String),
}

/// A full coordinate map `(z̃, θ̃⁺, θ̃⁻)` in two odd variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMap {
    pub z: RationalSuperfunction,
    pub theta_plus: RationalSuperfunction,
    pub theta_minus: RationalSuperfunction,
}

impl SuperMap {
    pub fn identity(generators: usize) -> Self {
        Self {
            z: RationalSuperfunction::z(generators, 2),
            theta_plus: RationalSuperfunction::theta(generators, 2, OddVar::Plus),
            theta_minus: RationalSuperfunction::theta(generators, 2, OddVar::Minus),
        }
    }

    pub fn generators(&self) -> usize {
        self.z.generators()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SuperMap) -> Result<SuperMap, SuperfieldError> {
        let images = [inner.theta_plus.clone(), inner.theta_minus.clone()];
        Ok(SuperMap {
            z: self.z.substitute(&inner.z, &images)?,
            theta_plus: self.theta_plus.substitute(&inner.z, &images)?,
            theta_minus: self.theta_minus.substitute(&inner.z, &images)?,
        })
    }

    /// Apply `self` to a function `G`: `G ∘ self`.
    pub fn pull_back(&self, g: &RationalSuperfunction) -> Result<RationalSuperfunction, SuperfieldError> {
        g.substitute(&self.z, &[self.theta_plus.clone(), self.theta_minus.clone()])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.generators())
    }

    /// The four differential conditions, each listed if it fails.
    pub fn d_conditions(&self) -> Result<Vec<Clause>, SuperfieldError> {
        let mut out = Vec::new();
        let dp_tm = self.theta_minus.apply_d(OddVar::Plus)?;
        let dm_tp = self.theta_plus.apply_d(OddVar::Minus)?;
        if !dp_tm.is_zero() {
            out.push(Clause::DPlusThetaMinus);
        }
        if !dm_tp.is_zero() {
            out.push(Clause::DMinusThetaPlus);
        }
        let dp_z = self.z.apply_d(OddVar::Plus)?;
        let dp_tp = self.theta_plus.apply_d(OddVar::Plus)?;
        if !(&dp_z - &(&self.theta_minus * &dp_tp)).is_zero() {
            out.push(Clause::DPlusZ);
        }
        let dm_z = self.z.apply_d(OddVar::Minus)?;
        let dm_tm = self.theta_minus.apply_d(OddVar::Minus)?;
        if !(&dm_z - &(&self.theta_plus * &dm_tm)).is_zero() {
            out.push(Clause::DMinusZ);
        }
        Ok(out)
    }
}

impl fmt::Display for SuperMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.z, self.theta_plus, self.theta_minus)
    }
}

/// Component form of an N=2 superconformal map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperconformalMap {
    pub f: RationalSuperfunction,
    pub g_plus: RationalSuperfunction,
    pub g_minus: RationalSuperfunction,
    pub psi_plus: RationalSuperfunction,
    pub psi_minus: RationalSuperfunction,
}

impl SuperconformalMap {
    /// Components are stored with two odd variables regardless of input.
    pub fn new(
        f: RationalSuperfunction,
        g_plus: RationalSuperfunction,
        g_minus: RationalSuperfunction,
        psi_plus: RationalSuperfunction,
        psi_minus: RationalSuperfunction,
    ) -> Self {
        let two = |r: RationalSuperfunction| r.with_odd_vars(2);
        Self { f: two(f), g_plus: two(g_plus), g_minus: two(g_minus), psi_plus: two(psi_plus), psi_minus: two(psi_minus) }
    }

    pub fn identity(generators: usize) -> Self {
        let one = RationalSuperfunction::one(generators, 2);
        let zero = RationalSuperfunction::zero(generators, 2);
        Self::new(RationalSuperfunction::z(generators, 2), one.clone(), one, zero.clone(), zero)
    }

    pub fn generators(&self) -> usize {
        self.f.generators()
    }

    fn components(&self) -> [&RationalSuperfunction; 5] {
        [&self.f, &self.g_plus, &self.g_minus, &self.psi_plus, &self.psi_minus]
    }

    pub fn check(&self) -> Diagnosis {
        let mut failures = Vec::new();
        let lhs = self.f.diff_z();
        let rhs = &(&(&self.psi_plus.diff_z() * &self.psi_minus) - &(&self.psi_plus * &self.psi_minus.diff_z()))
            + &(&self.g_plus * &self.g_minus);
        if lhs != rhs {
            failures.push(Clause::Constraint);
        }
        if !self.g_plus.has_nonzero_body() {
            failures.push(Clause::GPlusBody);
        }
        if !self.g_minus.has_nonzero_body() {
            failures.push(Clause::GMinusBody);
        }
        let even = [&self.f, &self.g_plus, &self.g_minus].iter().all(|c| c.parity() == Some(Parity::Even));
        let odd = [&self.psi_plus, &self.psi_minus].iter().all(|c| c.is_zero() || c.parity() == Some(Parity::Odd));
        let l = self.generators();
        Diagnosis {
            failures,
            parity_homogeneous: even && odd,
            coefficients_in_bound: l >= 2 && self.components().iter().all(|c| c.coefficients_in(l - 2)),
        }
    }

    pub fn is_superconformal(&self) -> bool {
        self.check().is_valid()
    }

    /// Full coordinate map built from the components.
    pub fn expand_unchecked(&self) -> SuperMap {
        let l = self.generators();
        let tp = RationalSuperfunction::theta(l, 2, OddVar::Plus);
        let tm = RationalSuperfunction::theta(l, 2, OddVar::Minus);
        let tt = &tp * &tm;
        let z = &(&(&self.f + &(&tp * &(&self.g_plus * &self.psi_minus))) + &(&tm * &(&self.g_minus * &self.psi_plus)))
            + &(&tt * &(&self.psi_plus * &self.psi_minus).diff_z());
        let theta_plus = &(&self.psi_plus + &(&tp * &self.g_plus)) + &(&tt * &self.psi_plus.diff_z());
        let theta_minus = &(&self.psi_minus + &(&tm * &self.g_minus)) - &(&tt * &self.psi_minus.diff_z());
        SuperMap { z, theta_plus, theta_minus }
    }

    pub fn expand(&self) -> Result<SuperMap, ScError> {
        let d = self.check();
        if !d.is_valid() {
            return Err(ScError::NotSuperconformal(d));
        }
        Ok(self.expand_unchecked())
    }

    /// Read the components off a full map after checking the D-conditions.
    pub fn extract(full: &SuperMap) -> Result<Self, ScError> {
        let failures = full.d_conditions()?;
        let diag = |failures: Vec<Clause>| Diagnosis { failures, parity_homogeneous: true, coefficients_in_bound: true };
        if !failures.is_empty() {
            return Err(ScError::NotSuperconformal(diag(failures)));
        }
        let m = Self::new(
            full.z.theta_component(ThetaMono::EMPTY),
            full.theta_plus.theta_component(ThetaMono::PLUS),
            full.theta_minus.theta_component(ThetaMono::MINUS),
            full.theta_plus.theta_component(ThetaMono::EMPTY),
            full.theta_minus.theta_component(ThetaMono::EMPTY),
        );
        let d = m.check();
        if !d.is_valid() {
            return Err(ScError::NotSuperconformal(d));
        }
        if m.expand_unchecked() != *full {
            return Err(ScError::NotSuperconformal(diag(vec![Clause::ExpansionMismatch])));
        }
        Ok(m)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, ScError> {
        let full = self.expand()?.compose(&inner.expand()?)?;
        Self::extract(&full)
    }

    pub fn extend(&self, target: usize) -> Result<Self, crate::grassmann::GrassmannError> {
        Ok(Self::new(
            self.f.extend(target)?,
            self.g_plus.extend(target)?,
            self.g_minus.extend(target)?,
            self.psi_plus.extend(target)?,
            self.psi_minus.extend(target)?,
        ))
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            f: function_to_json(&self.f),
            g_plus: function_to_json(&self.g_plus),
            g_minus: function_to_json(&self.g_minus),
            psi_plus: function_to_json(&self.psi_plus),
            psi_minus: function_to_json(&self.psi_minus),
        }
    }

    pub fn from_json(j: &MapJson) -> Result<Self, ParseError> {
        Ok(Self::new(
            function_from_json(&j.f)?,
            function_from_json(&j.g_plus)?,
            function_from_json(&j.g_minus)?,
            function_from_json(&j.psi_plus)?,
            function_from_json(&j.psi_minus)?,
        ))
    }
}

impl fmt::Display for SuperconformalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f = {}; g+ = {}; g- = {}; psi+ = {}; psi- = {}",
            self.f, self.g_plus, self.g_minus, self.psi_plus, self.psi_minus
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub f: FunctionJson,
    pub g_plus: FunctionJson,
    pub g_minus: FunctionJson,
    pub psi_plus: FunctionJson,
    pub psi_minus: FunctionJson,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::GaussianRational;
    use crate::grassmann::Supernumber;
    use crate::text::parse_function;

    const L: usize = 4;

    fn p(s: &str) -> RationalSuperfunction {
        parse_function(s, L, 2).unwrap()
    }

    fn transition(n: i32) -> SuperconformalMap {
        let i = RationalSuperfunction::scalar(L, 2, GaussianRational::i());
        SuperconformalMap::new(
            p("z^(-1)"),
            &i * &RationalSuperfunction::z_pow(L, 2, n - 1),
            &i * &RationalSuperfunction::z_pow(L, 2, -n - 1),
            p("0"),
            p("0"),
        )
    }

    #[test]
    fn check_examples() {
        assert!(SuperconformalMap::identity(L).is_superconformal());
        for n in -3..=3 {
            assert!(transition(n).is_superconformal());
        }
        let bad = SuperconformalMap::new(p("z^2"), p("1"), p("1"), p("0"), p("0"));
        assert_eq!(bad.check().first_failure(), Some(Clause::Constraint));
    }

    #[test]
    fn expand_examples() {
        assert!(SuperconformalMap::identity(L).expand().unwrap().is_identity());
        let full = transition(2).expand().unwrap();
        assert_eq!(full.theta_plus, p("(0+1i)*tp*z"));
        assert_eq!(full.theta_minus, p("(0+1i)*tm*z^(-3)"));
        let zeta = RationalSuperfunction::constant(Supernumber::generator(L, 1), 2);
        let m = SuperconformalMap::new(p("z"), p("1"), p("1"), zeta, p("0"));
        let full = m.expand().unwrap();
        assert_eq!(full.z, p("z + tm*z[1]"));
        assert_eq!(full.theta_plus, p("z[1] + tp"));
        assert_eq!(full.theta_minus, p("tm"));
        assert!(full.d_conditions().unwrap().is_empty());
    }

    #[test]
    fn extract_rejects_swapped_odd_coordinates() {
        let swapped = SuperMap { z: p("z"), theta_plus: p("tm"), theta_minus: p("tp") };
        match SuperconformalMap::extract(&swapped) {
            Err(ScError::NotSuperconformal(d)) => assert!(d.failures.contains(&Clause::DPlusThetaMinus)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn transition_squares_to_odd_sign_flip() {
        for n in [0, 1, 3, -2] {
            let sq = transition(n).compose(&transition(n)).unwrap();
            assert_eq!(sq, SuperconformalMap::new(p("z"), p("-1"), p("-1"), p("0"), p("0")));
        }
    }
}
