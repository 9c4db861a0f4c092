use std::fmt;

use super::{linear, linear_pow, SphereAutomorphism, SphereError};
use crate::grassmann::{Parity, Supernumber};
use crate::superconformal::SuperconformalMap;
use crate::superfield::RationalSuperfunction;

/// Regime-dependent part of an automorphism. Coefficient vectors are
/// indexed by the power of `z` they multiply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regime {
    /// `n = 0`: `ψ± = (ψ±₁z + ψ±₀)/(cz+d)`.
    Zero {
        psi_plus: [Supernumber; 2],
        psi_minus: [Supernumber; 2],
        eps_plus: Supernumber,
        eps_minus: Supernumber,
    },
    /// `n = 1`: `ψ⁺ = ψ⁺₀`, `ψ⁻` quadratic over `(cz+d)²`, `g⁺ = ε`.
    PlusOne { eps: Supernumber, psi_plus0: Supernumber, psi_minus: [Supernumber; 3] },
    /// `n = −1`: `ψ⁻ = ψ⁻₀`, `ψ⁺` quadratic over `(cz+d)²`, `g⁻ = ε`.
    MinusOne { eps: Supernumber, psi_minus0: Supernumber, psi_plus: [Supernumber; 3] },
    /// `n ≥ 2`: `ψ⁺ = 0`, `n + 2` coefficients for `ψ⁻`.
    Positive { eps: Supernumber, psi_minus: Vec<Supernumber> },
    /// `n ≤ −2`: `ψ⁻ = 0`, `−n + 2` coefficients for `ψ⁺`.
    Negative { eps: Supernumber, psi_plus: Vec<Supernumber> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismParams {
    pub n: i32,
    pub a: Supernumber,
    pub b: Supernumber,
    pub c: Supernumber,
    pub d: Supernumber,
    pub regime: Regime,
}

fn invalid(msg: impl Into<String>) -> SphereError {
    SphereError::InvalidParams(msg.into())
}

/// Rescale `(a, b, c, d)` with `ad − bc = 1 + s`, `s` nilpotent, to unit
/// determinant by `(1 + s)^{−1/2}`.
pub fn normalize_determinant(abcd: [Supernumber; 4]) -> Result<[Supernumber; 4], SphereError> {
    let [a, b, c, d] = abcd;
    let det = &(&a * &d) - &(&b * &c);
    let (body, soul) = det.body_soul();
    if !num_traits::One::is_one(&body) {
        return Err(invalid("determinant body must be 1"));
    }
    let k = Supernumber::inv_sqrt_one_plus(&soul);
    Ok([&a * &k, &b * &k, &c * &k, &d * &k])
}

impl AutomorphismParams {
    /// Möbius-only parameters with unit `ε` and zero odd data.
    pub fn mobius(n: i32, abcd: [Supernumber; 4]) -> Self {
        let l = abcd[0].generators();
        let zero = || Supernumber::zero(l);
        let one = || Supernumber::one(l);
        let regime = match n {
            0 => Regime::Zero { psi_plus: [zero(), zero()], psi_minus: [zero(), zero()], eps_plus: one(), eps_minus: one() },
            1 => Regime::PlusOne { eps: one(), psi_plus0: zero(), psi_minus: [zero(), zero(), zero()] },
            -1 => Regime::MinusOne { eps: one(), psi_minus0: zero(), psi_plus: [zero(), zero(), zero()] },
            n if n >= 2 => Regime::Positive { eps: one(), psi_minus: vec![zero(); (n + 2) as usize] },
            n => Regime::Negative { eps: one(), psi_plus: vec![zero(); (2 - n) as usize] },
        };
        let [a, b, c, d] = abcd;
        Self { n, a, b, c, d, regime }
    }

    pub fn identity(n: i32, generators: usize) -> Self {
        let one = Supernumber::one(generators);
        let zero = Supernumber::zero(generators);
        Self::mobius(n, [one.clone(), zero.clone(), zero, one])
    }

    pub fn generators(&self) -> usize {
        self.a.generators()
    }

    fn odd_params(&self) -> Vec<&Supernumber> {
        match &self.regime {
            Regime::Zero { psi_plus, psi_minus, .. } => psi_plus.iter().chain(psi_minus.iter()).collect(),
            Regime::PlusOne { psi_plus0, psi_minus, .. } => std::iter::once(psi_plus0).chain(psi_minus.iter()).collect(),
            Regime::MinusOne { psi_minus0, psi_plus, .. } => std::iter::once(psi_minus0).chain(psi_plus.iter()).collect(),
            Regime::Positive { psi_minus, .. } => psi_minus.iter().collect(),
            Regime::Negative { psi_plus, .. } => psi_plus.iter().collect(),
        }
    }

    fn even_params(&self) -> Vec<&Supernumber> {
        let mut v = vec![&self.a, &self.b, &self.c, &self.d];
        match &self.regime {
            Regime::Zero { eps_plus, eps_minus, .. } => {
                v.push(eps_plus);
                v.push(eps_minus);
            }
            Regime::PlusOne { eps, .. }
            | Regime::MinusOne { eps, .. }
            | Regime::Positive { eps, .. }
            | Regime::Negative { eps, .. } => v.push(eps),
        }
        v
    }

    /// Check every parameter constraint; the first violation is reported.
    pub fn check(&self) -> Result<(), SphereError> {
        let l = self.generators();
        if l < 2 {
            return Err(invalid("need at least two generators"));
        }
        let regime_ok = match (&self.regime, self.n) {
            (Regime::Zero { .. }, 0) | (Regime::PlusOne { .. }, 1) | (Regime::MinusOne { .. }, -1) => true,
            (Regime::Positive { psi_minus, .. }, n) if n >= 2 => psi_minus.len() == (n + 2) as usize,
            (Regime::Negative { psi_plus, .. }, n) if n <= -2 => psi_plus.len() == (2 - n) as usize,
            _ => false,
        };
        if !regime_ok {
            return Err(invalid(format!("parameter shape does not match n = {}", self.n)));
        }
        for x in self.even_params().into_iter().chain(self.odd_params()) {
            if x.generators() != l {
                return Err(invalid("generator count mismatch"));
            }
            if !x.supported_in(l - 2) {
                return Err(invalid(format!("parameter {x} is not in the first L-2 generators")));
            }
        }
        for x in self.even_params() {
            if x.parity() != Some(Parity::Even) {
                return Err(invalid(format!("even parameter {x} has odd terms")));
            }
        }
        for x in self.odd_params() {
            if !x.is_zero() && x.parity() != Some(Parity::Odd) {
                return Err(invalid(format!("odd parameter {x} has even terms")));
            }
        }
        let det = &(&self.a * &self.d) - &(&self.b * &self.c);
        if !det.is_one() {
            return Err(invalid(format!("ad - bc = {det}, expected 1")));
        }
        match &self.regime {
            Regime::Zero { psi_plus, psi_minus, eps_plus, eps_minus } => {
                let lhs = eps_plus * eps_minus;
                let rhs = &(&Supernumber::one(l) - &(&psi_plus[1] * &psi_minus[0])) - &(&psi_minus[1] * &psi_plus[0]);
                if lhs != rhs {
                    return Err(invalid("eps+ eps- != 1 - psi+_1 psi-_0 - psi-_1 psi+_0"));
                }
            }
            Regime::PlusOne { eps, .. }
            | Regime::MinusOne { eps, .. }
            | Regime::Positive { eps, .. }
            | Regime::Negative { eps, .. } => {
                if num_traits::Zero::is_zero(&eps.body()) {
                    return Err(invalid("eps is not invertible"));
                }
            }
        }
        Ok(())
    }

    /// The southern-chart components given by the regime formulas.
    pub fn components(&self) -> Result<SuperconformalMap, SphereError> {
        self.check()?;
        let l = self.generators();
        let k = |x: &Supernumber| RationalSuperfunction::constant(x.clone(), 2);
        let z = RationalSuperfunction::z(l, 2);
        let poly = |cs: &[Supernumber]| {
            let mut acc = RationalSuperfunction::zero(l, 2);
            for (j, c) in cs.iter().enumerate() {
                acc = &acc + &(&k(c) * &RationalSuperfunction::z_pow(l, 2, j as i32));
            }
            acc
        };
        let lp = |e: i32| linear_pow(&self.c, &self.d, e);
        let f = (&(&k(&self.a) * &z) + &k(&self.b)).try_div(&linear(&self.c, &self.d))?;
        let zero = RationalSuperfunction::zero(l, 2);
        let (c, d) = (&self.c, &self.d);
        let m = match &self.regime {
            Regime::Zero { psi_plus, psi_minus, eps_plus, eps_minus } => {
                let (pp, pm) = (psi_plus, psi_minus);
                let p11 = &pp[1] * &pm[1];
                let q = &(&(&pp[0] * &pm[0]) * c) - &(&(&(&pp[1] * &pm[0]) - &(&pm[1] * &pp[0])) * d);
                let r = &(&(&p11 * &pp[0]) * &pm[0]) * d;
                let f_plus = -&(&(eps_plus * &p11) * d);
                let f_minus = &(eps_minus * &p11) * d;
                let h_plus = eps_plus * &(&q - &r);
                let h_minus = -&(eps_minus * &(&q + &r));
                let g = |eps: &Supernumber, fc: &Supernumber, hc: &Supernumber| -> Result<RationalSuperfunction, SphereError> {
                    Ok(&(&k(eps) * &lp(-1)?) + &(&(&(&k(fc) * &z) + &k(hc)) * &lp(-2)?))
                };
                SuperconformalMap::new(
                    f,
                    g(eps_plus, &f_plus, &h_plus)?,
                    g(eps_minus, &f_minus, &h_minus)?,
                    &poly(pp) * &lp(-1)?,
                    &poly(pm) * &lp(-1)?,
                )
            }
            Regime::PlusOne { eps, psi_plus0, psi_minus } => {
                let pm = psi_minus;
                let inv_eps = eps.inv().map_err(|_| invalid("eps is not invertible"))?;
                // ψ⁺₀(2ψ⁻₂dz − ψ⁻₁(cz − d) − 2ψ⁻₀c)
                let inner = &(&(&k(&(&pm[2] * d).scale(&2.into())) * &z) - &(&k(&pm[1]) * &(&(&k(c) * &z) - &k(d))))
                    - &k(&(&pm[0] * c).scale(&2.into()));
                let g_minus = &(&k(&inv_eps) * &lp(-2)?) + &(&(&(&k(psi_plus0) * &inner) * &k(&inv_eps)) * &lp(-3)?);
                SuperconformalMap::new(f, k(eps), g_minus, k(psi_plus0), &poly(pm) * &lp(-2)?)
            }
            Regime::MinusOne { eps, psi_minus0, psi_plus } => {
                let pp = psi_plus;
                let inv_eps = eps.inv().map_err(|_| invalid("eps is not invertible"))?;
                let inner = &(&(&k(&(&pp[2] * d).scale(&2.into())) * &z) - &(&k(&pp[1]) * &(&(&k(c) * &z) - &k(d))))
                    - &k(&(&pp[0] * c).scale(&2.into()));
                let g_plus = &(&k(&inv_eps) * &lp(-2)?) - &(&(&(&inner * &k(psi_minus0)) * &k(&inv_eps)) * &lp(-3)?);
                SuperconformalMap::new(f, g_plus, k(eps), &poly(pp) * &lp(-2)?, k(psi_minus0))
            }
            Regime::Positive { eps, psi_minus } => {
                let n = self.n;
                let inv_eps = eps.inv().map_err(|_| invalid("eps is not invertible"))?;
                SuperconformalMap::new(
                    f,
                    &k(eps) * &lp(n - 1)?,
                    &k(&inv_eps) * &lp(-n - 1)?,
                    zero,
                    &poly(psi_minus) * &lp(-(n + 1))?,
                )
            }
            Regime::Negative { eps, psi_plus } => {
                let n = self.n;
                let inv_eps = eps.inv().map_err(|_| invalid("eps is not invertible"))?;
                SuperconformalMap::new(
                    f,
                    &k(&inv_eps) * &lp(n - 1)?,
                    &k(eps) * &lp(-n - 1)?,
                    &poly(psi_plus) * &lp(n - 1)?,
                    zero,
                )
            }
        };
        Ok(m)
    }

    /// Build the automorphism; the result is checked for superconformality.
    pub fn build(&self) -> Result<SphereAutomorphism, SphereError> {
        let m = self.components()?;
        let diag = m.check();
        if !diag.is_valid() {
            return Err(SphereError::Superconformal(crate::superconformal::ScError::NotSuperconformal(diag)));
        }
        Ok(SphereAutomorphism { n: self.n, southern: m })
    }
}

impl fmt::Display for AutomorphismParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} a={} b={} c={} d={}", self.n, self.a, self.b, self.c, self.d)?;
        let list = |v: &[Supernumber]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match &self.regime {
            Regime::Zero { psi_plus, psi_minus, eps_plus, eps_minus } => write!(
                f,
                " eps+={eps_plus} eps-={eps_minus} psi+=[{}] psi-=[{}]",
                list(psi_plus),
                list(psi_minus)
            ),
            Regime::PlusOne { eps, psi_plus0, psi_minus } => {
                write!(f, " eps={eps} psi+0={psi_plus0} psi-=[{}]", list(psi_minus))
            }
            Regime::MinusOne { eps, psi_minus0, psi_plus } => {
                write!(f, " eps={eps} psi-0={psi_minus0} psi+=[{}]", list(psi_plus))
            }
            Regime::Positive { eps, psi_minus } => write!(f, " eps={eps} psi-=[{}]", list(psi_minus)),
            Regime::Negative { eps, psi_plus } => write!(f, " eps={eps} psi+=[{}]", list(psi_plus)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_function;

    const L: usize = 4;

    fn zeta(j: usize) -> Supernumber {
        Supernumber::generator(L, j)
    }

    #[test]
    fn identity_and_single_odd_coefficient() {
        assert_eq!(AutomorphismParams::identity(3, L).build().unwrap().southern, SuperconformalMap::identity(L));
        let mut p = AutomorphismParams::identity(3, L);
        if let Regime::Positive { psi_minus, .. } = &mut p.regime {
            psi_minus[0] = zeta(1);
        }
        let t = p.build().unwrap();
        let full = t.southern.expand().unwrap();
        let q = |s: &str| parse_function(s, L, 2).unwrap();
        assert_eq!(full.z, q("z + tp*z[1]"));
        assert_eq!(full.theta_plus, q("tp"));
        assert_eq!(full.theta_minus, q("z[1] + tm"));
    }

    #[test]
    fn zero_regime_constraint_is_enforced() {
        let mut p = AutomorphismParams::identity(0, L);
        if let Regime::Zero { eps_plus, .. } = &mut p.regime {
            *eps_plus = Supernumber::from_int(L, 2);
        }
        assert!(matches!(p.build(), Err(SphereError::InvalidParams(_))));
    }

    #[test]
    fn coefficients_outside_first_generators_are_rejected() {
        let mut p = AutomorphismParams::identity(2, L);
        if let Regime::Positive { psi_minus, .. } = &mut p.regime {
            psi_minus[1] = zeta(4);
        }
        assert!(matches!(p.build(), Err(SphereError::InvalidParams(_))));
    }

    #[test]
    fn determinant_normalization() {
        let one = Supernumber::one(L);
        let zero = Supernumber::zero(L);
        let s = &zeta(1) * &zeta(2);
        let a = &one + &s;
        let [a, b, c, d] = normalize_determinant([a, zero.clone(), zero, one]).unwrap();
        assert!((&(&a * &d) - &(&b * &c)).is_one());
    }
}
