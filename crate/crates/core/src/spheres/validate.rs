use num_traits::Zero;

use super::{linear, linear_pow, AutomorphismParams, Regime, SphereError};
use crate::grassmann::Supernumber;
use crate::superconformal::SuperconformalMap;
use crate::superfield::{RationalSuperfunction, ThetaMono};

fn reject(msg: impl Into<String>) -> SphereError {
    SphereError::NotInFamily(msg.into())
}

/// Coefficients `c_0..c_max` of a θ-free polynomial, or the clause it breaks.
fn poly_coeffs(r: &RationalSuperfunction, max: i32, what: &str) -> Result<Vec<Supernumber>, SphereError> {
    let shape_err = || reject(format!("{what} is not a polynomial of degree at most {max} in z"));
    if !r.is_polynomial() || !r.is_theta_free() {
        return Err(shape_err());
    }
    let num = r.numerator();
    if num.min_exp().unwrap_or(0) < 0 || num.max_exp().unwrap_or(0) > max {
        return Err(shape_err());
    }
    Ok((0..=max).map(|k| num.coeff(ThetaMono::EMPTY, k)).collect())
}

fn constant(r: &RationalSuperfunction, what: &str) -> Result<Supernumber, SphereError> {
    Ok(poly_coeffs(r, 0, what)?.remove(0))
}

fn div(x: &Supernumber, y: &Supernumber, what: &str) -> Result<Supernumber, SphereError> {
    Ok(x * &y.inv().map_err(|_| reject(format!("{what}: divisor has zero body")))?)
}

impl AutomorphismParams {
    /// Recover the parameters of a southern-chart map, normalizing the sign
    /// of `(a, b, c, d)`: the first entry among `d, c, b, a` with nonzero body
    /// gets positive real part (or zero real part and positive imaginary part).
    pub fn validate(m: &SuperconformalMap, n: i32) -> Result<Self, SphereError> {
        let diag = m.check();
        if let Some(c) = diag.first_failure() {
            return Err(reject(format!("not superconformal: {c}")));
        }
        let l = m.generators();
        let two = Supernumber::from_int(l, 2);

        // (cz + d)² = 1/f′
        let q = m
            .f
            .diff_z()
            .recip()
            .map_err(|_| reject("f' has vanishing body"))?;
        let q = poly_coeffs(&q, 2, "1/f'")?;
        let sqrt = |x: &Supernumber| x.sqrt().ok_or_else(|| reject("1/f' has no exact square root"));
        let (c, d) = if !q[0].body().is_zero() {
            let d = sqrt(&q[0])?;
            (div(&q[1], &(&two * &d), "c")?, d)
        } else {
            let c = sqrt(&q[2])?;
            let d = div(&q[1], &(&two * &c), "d")?;
            (c, d)
        };
        if &c * &c != q[2] || &d * &d != q[0] {
            return Err(reject("1/f' is not the square of a linear polynomial"));
        }
        let ab = poly_coeffs(&(&m.f * &linear(&c, &d)), 1, "f (cz+d)")?;
        let (mut a, mut b, mut c, mut d) = (ab[1].clone(), ab[0].clone(), c, d);
        let lead = [&d, &c, &b, &a].into_iter().map(|x| x.body()).find(|x| !x.is_zero());
        if lead.is_some_and(|x| !x.is_positive_normalized()) {
            a = -&a;
            b = -&b;
            c = -&c;
            d = -&d;
        }
        let lp = |k: i32| linear_pow(&c, &d, k).map_err(SphereError::from);

        let regime = match n {
            0 => {
                let pp = poly_coeffs(&(&m.psi_plus * &lp(1)?), 1, "psi+ (cz+d)")?;
                let pm = poly_coeffs(&(&m.psi_minus * &lp(1)?), 1, "psi- (cz+d)")?;
                let gp = poly_coeffs(&(&m.g_plus * &lp(2)?), 1, "g+ (cz+d)^2")?;
                let gm = poly_coeffs(&(&m.g_minus * &lp(2)?), 1, "g- (cz+d)^2")?;
                let p11 = &pp[1] * &pm[1];
                let qq = &(&(&pp[0] * &pm[0]) * &c) - &(&(&(&pp[1] * &pm[0]) - &(&pm[1] * &pp[0])) * &d);
                let r = &(&(&p11 * &pp[0]) * &pm[0]) * &d;
                let pd = &p11 * &d;
                let (eps_plus, eps_minus) = if !d.body().is_zero() {
                    (
                        div(&gp[0], &(&(&d + &qq) - &r), "eps+")?,
                        div(&gm[0], &(&(&d - &qq) - &r), "eps-")?,
                    )
                } else {
                    (div(&gp[1], &(&c - &pd), "eps+")?, div(&gm[1], &(&c + &pd), "eps-")?)
                };
                Regime::Zero {
                    psi_plus: [pp[0].clone(), pp[1].clone()],
                    psi_minus: [pm[0].clone(), pm[1].clone()],
                    eps_plus,
                    eps_minus,
                }
            }
            1 => {
                let psi_plus0 = constant(&m.psi_plus, "psi+")?;
                let pm = poly_coeffs(&(&m.psi_minus * &lp(2)?), 2, "psi- (cz+d)^2")?;
                let eps = constant(&m.g_plus, "g+")?;
                Regime::PlusOne { eps, psi_plus0, psi_minus: [pm[0].clone(), pm[1].clone(), pm[2].clone()] }
            }
            -1 => {
                let psi_minus0 = constant(&m.psi_minus, "psi-")?;
                let pp = poly_coeffs(&(&m.psi_plus * &lp(2)?), 2, "psi+ (cz+d)^2")?;
                let eps = constant(&m.g_minus, "g-")?;
                Regime::MinusOne { eps, psi_minus0, psi_plus: [pp[0].clone(), pp[1].clone(), pp[2].clone()] }
            }
            n if n >= 2 => {
                if !m.psi_plus.is_zero() {
                    return Err(reject("psi+ = 0"));
                }
                let pm = poly_coeffs(&(&m.psi_minus * &lp(n + 1)?), n + 1, "psi- (cz+d)^(n+1)")?;
                let eps = constant(&(&m.g_plus * &lp(1 - n)?), "g+ (cz+d)^(1-n)")?;
                Regime::Positive { eps, psi_minus: pm }
            }
            n => {
                if !m.psi_minus.is_zero() {
                    return Err(reject("psi- = 0"));
                }
                let pp = poly_coeffs(&(&m.psi_plus * &lp(1 - n)?), 1 - n, "psi+ (cz+d)^(1-n)")?;
                let inv = constant(&(&m.g_plus * &lp(1 - n)?), "g+ (cz+d)^(1-n)")?;
                let eps = inv.inv().map_err(|_| reject("g+ has vanishing body"))?;
                Regime::Negative { eps, psi_plus: pp }
            }
        };
        let p = AutomorphismParams { n, a, b, c, d, regime };
        let rebuilt = p.components().map_err(|e| match e {
            SphereError::InvalidParams(msg) => reject(msg),
            other => other,
        })?;
        for (name, x, y) in [
            ("f", &rebuilt.f, &m.f),
            ("g+", &rebuilt.g_plus, &m.g_plus),
            ("g-", &rebuilt.g_minus, &m.g_minus),
            ("psi+", &rebuilt.psi_plus, &m.psi_plus),
            ("psi-", &rebuilt.psi_minus, &m.psi_minus),
        ] {
            if x != y {
                return Err(reject(format!("{name} does not have the regime shape")));
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 4;

    fn zeta(j: usize) -> Supernumber {
        Supernumber::generator(L, j)
    }

    #[test]
    fn rejects_nonzero_psi_plus_for_positive_degree() {
        let m = SuperconformalMap::new(
            RationalSuperfunction::z(L, 2),
            RationalSuperfunction::one(L, 2),
            RationalSuperfunction::one(L, 2),
            RationalSuperfunction::constant(zeta(1), 2),
            RationalSuperfunction::zero(L, 2),
        );
        assert_eq!(AutomorphismParams::validate(&m, 2), Err(SphereError::NotInFamily("psi+ = 0".into())));
    }

    #[test]
    fn recovers_single_coefficient_for_degree_one() {
        let mut p = AutomorphismParams::identity(1, L);
        if let Regime::PlusOne { psi_minus, .. } = &mut p.regime {
            psi_minus[2] = zeta(1);
        }
        let t = p.build().unwrap();
        assert_eq!(AutomorphismParams::validate(&t.southern, 1).unwrap(), p);
    }

    #[test]
    fn sign_tie_break() {
        let s = |x| Supernumber::from_int(L, x);
        let p = AutomorphismParams::mobius(3, [s(-1), s(-1), s(0), s(-1)]);
        let t = p.build().unwrap();
        let back = AutomorphismParams::validate(&t.southern, 3).unwrap();
        assert_eq!((back.a.clone(), back.b.clone(), back.d.clone()), (s(1), s(1), s(1)));
    }
}
