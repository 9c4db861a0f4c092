use std::fmt;

use super::{ScError, SuperconformalMap};
use crate::gaussian::GaussianRational;
use crate::superfield::{OddVar, RationalSuperfunction, SuperfieldError};

/// N=1 superanalytic map `(f₁ + θξ, ψ + θg)` in component form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct N1SuperanalyticMap {
    pub f1: RationalSuperfunction,
    pub xi: RationalSuperfunction,
    pub psi: RationalSuperfunction,
    pub g: RationalSuperfunction,
}

impl N1SuperanalyticMap {
    pub fn new(
        f1: RationalSuperfunction,
        xi: RationalSuperfunction,
        psi: RationalSuperfunction,
        g: RationalSuperfunction,
    ) -> Self {
        let one = |r: RationalSuperfunction| r.with_odd_vars(1);
        Self { f1: one(f1), xi: one(xi), psi: one(psi), g: one(g) }
    }

    pub fn generators(&self) -> usize {
        self.f1.generators()
    }

    /// `(z̃, θ̃)` in one odd variable.
    pub fn expand(&self) -> (RationalSuperfunction, RationalSuperfunction) {
        let t = RationalSuperfunction::theta(self.generators(), 1, OddVar::Plus);
        (&self.f1 + &(&t * &self.xi), &self.psi + &(&t * &self.g))
    }

    /// The N=2 superconformal map with these N=1 data:
    /// `f = f₁ − ψξ/(2g)`, `g⁺ = g`, `g⁻ = f₁′/g − ψ′ξ/g²`, `ψ⁺ = ψ`, `ψ⁻ = ξ/(2g)`.
    pub fn to_n2(&self) -> Result<SuperconformalMap, ScError> {
        if !self.g.has_nonzero_body() {
            return Err(ScError::NotInvertibleComponent("g"));
        }
        let two = |r: &RationalSuperfunction| r.clone().with_odd_vars(2);
        let (f1, xi, psi, g) = (two(&self.f1), two(&self.xi), two(&self.psi), two(&self.g));
        let inv_g = g.recip().map_err(|_| ScError::NotInvertibleComponent("g"))?;
        let half = GaussianRational::from_ratio(1, 2);
        let psi_minus = (&xi * &inv_g).scale(&half);
        let f = &f1 - &(&psi * &psi_minus);
        let g_minus = &(&f1.diff_z() * &inv_g) - &(&(&psi.diff_z() * &xi) * &(&inv_g * &inv_g));
        Ok(SuperconformalMap::new(f, g, g_minus, psi, psi_minus))
    }
}

impl SuperconformalMap {
    /// `f₁ = f + ψ⁺ψ⁻`, `ξ = 2g⁺ψ⁻`, `ψ = ψ⁺`, `g = g⁺`.
    pub fn to_n1(&self) -> Result<N1SuperanalyticMap, SuperfieldError> {
        let two = GaussianRational::from(2);
        Ok(N1SuperanalyticMap::new(
            &self.f + &(&self.psi_plus * &self.psi_minus),
            (&self.g_plus * &self.psi_minus).scale(&two),
            self.psi_plus.clone(),
            self.g_plus.clone(),
        ))
    }
}

impl fmt::Display for N1SuperanalyticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (z, t) = self.expand();
        write!(f, "({z}, {t})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_function;

    const L: usize = 4;

    fn p1(s: &str) -> RationalSuperfunction {
        parse_function(s, L, 1).unwrap()
    }
    fn p2(s: &str) -> RationalSuperfunction {
        parse_function(s, L, 2).unwrap()
    }

    #[test]
    fn odd_shift_example() {
        let h = N1SuperanalyticMap::new(p1("z"), p1("1"), p1("0"), p1("1"));
        let m = h.to_n2().unwrap();
        assert!(m.is_superconformal());
        let full = m.expand().unwrap();
        assert_eq!(full.z, p2("z + 1/2*tp"));
        assert_eq!(full.theta_plus, p2("tp"));
        assert_eq!(full.theta_minus, p2("1/2 + tm"));
        assert_eq!(m.to_n1().unwrap(), h);
    }

    #[test]
    fn transition_image() {
        for n in [-2, 0, 1, 4] {
            let i = RationalSuperfunction::scalar(L, 2, GaussianRational::i());
            let m = SuperconformalMap::new(
                p2("z^(-1)"),
                &i * &RationalSuperfunction::z_pow(L, 2, n - 1),
                &i * &RationalSuperfunction::z_pow(L, 2, -n - 1),
                p2("0"),
                p2("0"),
            );
            let (z, t) = m.to_n1().unwrap().expand();
            assert_eq!(z, p1("z^(-1)"));
            let expected = &RationalSuperfunction::scalar(L, 1, GaussianRational::i())
                * &(&p1("t") * &RationalSuperfunction::z_pow(L, 1, n - 1));
            assert_eq!(t, expected);
        }
    }

    #[test]
    fn zero_g_is_rejected() {
        let h = N1SuperanalyticMap::new(p1("z"), p1("0"), p1("0"), p1("z[1]z[2]"));
        assert_eq!(h.to_n2(), Err(ScError::NotInvertibleComponent("g")));
    }
}
