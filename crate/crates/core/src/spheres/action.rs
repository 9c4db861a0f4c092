use super::{linear, linear_pow, AutomorphismParams, Regime, SphereAutomorphism, SphereError};
use crate::grassmann::{Parity, Supernumber};
use crate::superconformal::SuperconformalMap;
use crate::superfield::RationalSuperfunction;

/// An element `((a b; c d), ε)` of `SL(2, Λ⁰) × GL(1, Λ⁰)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub a: Supernumber,
    pub b: Supernumber,
    pub c: Supernumber,
    pub d: Supernumber,
    pub eps: Supernumber,
}

impl GroupElement {
    pub fn identity(generators: usize) -> Self {
        let one = Supernumber::one(generators);
        let zero = Supernumber::zero(generators);
        Self { a: one.clone(), b: zero.clone(), c: zero, d: one.clone(), eps: one }
    }

    pub fn from_ints(generators: usize, v: [i64; 5]) -> Self {
        let s = |x| Supernumber::from_int(generators, x);
        Self { a: s(v[0]), b: s(v[1]), c: s(v[2]), d: s(v[3]), eps: s(v[4]) }
    }

    /// Group product `self · other`.
    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            eps: &self.eps * &o.eps,
        }
    }

    pub fn inverse(&self) -> Result<Self, SphereError> {
        let eps = self.eps.inv().map_err(|_| SphereError::InvalidParams("eps is not invertible".into()))?;
        Ok(Self { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone(), eps })
    }

    fn check(&self) -> Result<(), SphereError> {
        let det = &(&self.a * &self.d) - &(&self.b * &self.c);
        if !det.is_one() {
            return Err(SphereError::InvalidParams(format!("ad - bc = {det}, expected 1")));
        }
        for x in [&self.a, &self.b, &self.c, &self.d, &self.eps] {
            if x.parity() != Some(Parity::Even) {
                return Err(SphereError::InvalidParams(format!("{x} is not even")));
            }
        }
        if num_traits::Zero::is_zero(&self.eps.body()) {
            return Err(SphereError::InvalidParams("eps is not invertible".into()));
        }
        Ok(())
    }

    /// The parameters of the same automorphism in the regime form
    /// (`ε` enters inverted for `n < 0`).
    pub fn params(&self, n: i32) -> Result<AutomorphismParams, SphereError> {
        self.check()?;
        let mut p = AutomorphismParams::mobius(n, [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]);
        let inv = self.eps.inv().map_err(|_| SphereError::InvalidParams("eps is not invertible".into()))?;
        match &mut p.regime {
            Regime::Zero { eps_plus, eps_minus, .. } => {
                *eps_plus = self.eps.clone();
                *eps_minus = inv;
            }
            Regime::PlusOne { eps, .. } | Regime::Positive { eps, .. } => *eps = self.eps.clone(),
            Regime::MinusOne { eps, .. } | Regime::Negative { eps, .. } => *eps = inv,
        }
        Ok(p)
    }
}

/// `(z, θ⁺, θ⁻) ↦ ((az+b)/(cz+d), θ⁺ε(cz+d)^{n−1}, θ⁻ε⁻¹(cz+d)^{−n−1})`.
pub fn group_action(n: i32, g: &GroupElement) -> Result<SphereAutomorphism, SphereError> {
    g.check()?;
    let l = g.a.generators();
    let k = |x: &Supernumber| RationalSuperfunction::constant(x.clone(), 2);
    let f = (&(&k(&g.a) * &RationalSuperfunction::z(l, 2)) + &k(&g.b)).try_div(&linear(&g.c, &g.d))?;
    let inv = g.eps.inv().map_err(|_| SphereError::InvalidParams("eps is not invertible".into()))?;
    let m = SuperconformalMap::new(
        f,
        &k(&g.eps) * &linear_pow(&g.c, &g.d, n - 1)?,
        &k(&inv) * &linear_pow(&g.c, &g.d, -n - 1)?,
        RationalSuperfunction::zero(l, 2),
        RationalSuperfunction::zero(l, 2),
    );
    Ok(SphereAutomorphism { n, southern: m })
}

/// Whether two group elements act identically on `S²Ĉ(n)`.
pub fn kernel_check(n: i32, alpha: &GroupElement, beta: &GroupElement) -> Result<bool, SphereError> {
    Ok(group_action(n, alpha)?.southern == group_action(n, beta)?.southern)
}

/// For `n ≥ 2`, the map with `f = z`, `g± = 1`, `ψ⁺ = 0`, `ψ⁻ = Σ_j v_j z^j`;
/// for `n ≤ −2` the same with the roles of `ψ±` exchanged. The vector has
/// `|n| + 2` odd entries, highest power of `z` first.
pub fn odd_translation(n: i32, coeffs: &[Supernumber]) -> Result<SphereAutomorphism, SphereError> {
    if n.abs() < 2 {
        return Err(SphereError::InvalidParams("odd translations need |n| >= 2".into()));
    }
    if coeffs.len() != (n.unsigned_abs() + 2) as usize {
        return Err(SphereError::InvalidParams(format!("expected {} coefficients, got {}", n.abs() + 2, coeffs.len())));
    }
    let l = coeffs[0].generators();
    let by_power: Vec<Supernumber> = coeffs.iter().rev().cloned().collect();
    let mut p = AutomorphismParams::identity(n, l);
    match &mut p.regime {
        Regime::Positive { psi_minus, .. } => *psi_minus = by_power,
        Regime::Negative { psi_plus, .. } => *psi_plus = by_power,
        _ => unreachable!(),
    }
    p.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 4;

    #[test]
    fn kernels() {
        let id = GroupElement::identity(L);
        for n in -3..=3 {
            let minus = GroupElement::from_ints(L, [-1, 0, 0, -1, -1]);
            let plus = GroupElement::from_ints(L, [-1, 0, 0, -1, 1]);
            assert_eq!(kernel_check(n, &id, &minus).unwrap(), n % 2 == 0, "n={n}");
            assert_eq!(kernel_check(n, &id, &plus).unwrap(), n % 2 != 0, "n={n}");
        }
    }

    #[test]
    fn action_matches_regime_formulas() {
        let g = GroupElement {
            eps: Supernumber::from_int(L, 3),
            ..GroupElement::from_ints(L, [2, 1, 1, 1, 1])
        };
        for n in -3..=3 {
            let built = g.params(n).unwrap().build().unwrap();
            assert_eq!(built, group_action(n, &g).unwrap(), "n={n}");
        }
    }

    #[test]
    fn odd_translation_example() {
        let z1 = Supernumber::generator(L, 1);
        let zero = Supernumber::zero(L);
        let t = odd_translation(2, &[zero.clone(), zero.clone(), zero, z1]).unwrap();
        let full = t.southern.expand().unwrap();
        let q = |s: &str| crate::text::parse_function(s, L, 2).unwrap();
        assert_eq!(full.z, q("z + tp*z[1]"));
        assert_eq!(full.theta_plus, q("tp"));
        assert_eq!(full.theta_minus, q("z[1] + tm"));
        assert!(odd_translation(2, &[Supernumber::zero(L)]).is_err());
    }
}
