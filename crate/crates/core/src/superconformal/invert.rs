use super::{ScError, SuperMap, SuperconformalMap};
use crate::gaussian::GaussianRational;
use crate::scalar_poly::ScalarPoly;
use crate::superfield::{OddVar, RationalSuperfunction};

/// Body of `f` as a Möbius matrix `(a, b, c, d)`, if it is one.
pub(crate) fn body_mobius(f: &RationalSuperfunction) -> Option<[GaussianRational; 4]> {
    let (shift, p, den) = f.body_rational();
    let (num, den) = if shift < 0 {
        (p, den.shift((-shift) as usize))
    } else {
        (p.shift(shift as usize), den)
    };
    let g = num.gcd(&den);
    let (num, den) = if g.degree().unwrap_or(0) > 0 {
        (num.div_exact(&g)?, den.div_exact(&g)?)
    } else {
        (num, den)
    };
    if num.degree().unwrap_or(0) > 1 || den.degree()? > 1 {
        return None;
    }
    Some([num.coeff(1), num.coeff(0), den.coeff(1), den.coeff(0)])
}

impl SuperconformalMap {
    /// Inverse map. The body Möbius transformation and body scalings of
    /// the odd coordinates are inverted in closed form; the remaining
    /// nilpotent discrepancy `E = m ∘ m_B⁻¹` is removed by the iteration
    /// `X ← X − (E∘X − id)`, which gains at least one soul degree per round.
    pub fn invert(&self) -> Result<Self, ScError> {
        let l = self.generators();
        let full = self.expand()?;
        let [a, b, c, d] = body_mobius(&self.f).ok_or_else(|| ScError::NotInvertible("body of f is not Mobius".into()))?;
        let det = &(&a * &d) - &(&b * &c);
        if num_traits::Zero::is_zero(&det) {
            return Err(ScError::NotInvertible("body Mobius matrix is singular".into()));
        }
        let f_inv = RationalSuperfunction::scalar_rational(
            l,
            2,
            &ScalarPoly::new(vec![-&b, d.clone()]),
            &ScalarPoly::new(vec![a.clone(), -&c]),
        )?;
        let odd_scale = |g: &RationalSuperfunction, var| -> Result<RationalSuperfunction, ScError> {
            let gb = g.body_part().compose_theta_free(&f_inv)?;
            let inv = gb.recip().map_err(|_| ScError::NotInvertibleComponent("g"))?;
            Ok(&RationalSuperfunction::theta(l, 2, var) * &inv)
        };
        let body_inv = SuperMap {
            z: f_inv.clone(),
            theta_plus: odd_scale(&self.g_plus, OddVar::Plus)?,
            theta_minus: odd_scale(&self.g_minus, OddVar::Minus)?,
        };
        let e = full.compose(&body_inv)?;
        let id = SuperMap::identity(l);
        let mut x = id.clone();
        let mut converged = false;
        for _ in 0..=l + 2 {
            let ex = e.compose(&x)?;
            let err = SuperMap {
                z: &ex.z - &id.z,
                theta_plus: &ex.theta_plus - &id.theta_plus,
                theta_minus: &ex.theta_minus - &id.theta_minus,
            };
            if err.z.is_zero() && err.theta_plus.is_zero() && err.theta_minus.is_zero() {
                converged = true;
                break;
            }
            x = SuperMap {
                z: &x.z - &err.z,
                theta_plus: &x.theta_plus - &err.theta_plus,
                theta_minus: &x.theta_minus - &err.theta_minus,
            };
        }
        if !converged {
            return Err(ScError::NotInvertible("nilpotent correction did not terminate".into()));
        }
        Self::extract(&body_inv.compose(&x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Supernumber;
    use crate::text::parse_function;

    const L: usize = 4;

    fn p(s: &str) -> RationalSuperfunction {
        parse_function(s, L, 2).unwrap()
    }

    #[test]
    fn transition_inverse() {
        for n in [-2, 0, 1, 3] {
            let i = RationalSuperfunction::scalar(L, 2, GaussianRational::i());
            let m = SuperconformalMap::new(
                p("z^(-1)"),
                &i * &RationalSuperfunction::z_pow(L, 2, n - 1),
                &i * &RationalSuperfunction::z_pow(L, 2, -n - 1),
                p("0"),
                p("0"),
            );
            let inv = m.invert().unwrap();
            let mi = -&i;
            assert_eq!(inv.g_plus, &mi * &RationalSuperfunction::z_pow(L, 2, n - 1));
            assert_eq!(inv.g_minus, &mi * &RationalSuperfunction::z_pow(L, 2, -n - 1));
            assert_eq!(m.compose(&inv).unwrap(), SuperconformalMap::identity(L));
            assert_eq!(inv.compose(&m).unwrap(), SuperconformalMap::identity(L));
        }
    }

    #[test]
    fn odd_translation_inverse() {
        let zeta = RationalSuperfunction::constant(Supernumber::generator(L, 1), 2);
        let m = SuperconformalMap::new(p("z"), p("1"), p("1"), zeta.clone(), &zeta * &p("z"));
        assert!(m.is_superconformal());
        let inv = m.invert().unwrap();
        assert_eq!(m.compose(&inv).unwrap(), SuperconformalMap::identity(L));
    }
}
