use num_traits::Zero;

use super::{OddVar, RationalSuperfunction, SuperPolynomial, SuperfieldError, ThetaMono};
use crate::gaussian::GaussianRational;
use crate::grassmann::{Parity, Supernumber};

/// A point `(z, θ₁, …)` with `z` even and each `θ` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoint {
    pub z: Supernumber,
    pub thetas: Vec<Supernumber>,
}

impl SuperPoint {
    pub fn new(z: Supernumber, thetas: Vec<Supernumber>) -> Result<Self, SuperfieldError> {
        if z.parity() != Some(Parity::Even) {
            return Err(SuperfieldError::OddSubstitution);
        }
        for t in &thetas {
            if !t.is_zero() && t.parity() != Some(Parity::Odd) {
                return Err(SuperfieldError::OddSubstitution);
            }
        }
        Ok(Self { z, thetas })
    }

    fn theta_power(&self, mono: ThetaMono) -> Supernumber {
        let l = self.z.generators();
        let mut acc = Supernumber::one(l);
        for (var, idx) in [(OddVar::Plus, 0), (OddVar::Minus, 1)] {
            if mono.contains(var) {
                let t = self.thetas.get(idx).cloned().unwrap_or_else(|| Supernumber::zero(l));
                acc = &acc * &t;
            }
        }
        acc
    }
}

impl RationalSuperfunction {
    /// Value at a super point by the soul Taylor expansion
    /// `Σ_l z_S^l / l! · F^{(l)}(z_B)` of each odd component.
    pub fn evaluate(&self, p: &SuperPoint) -> Result<Supernumber, SuperfieldError> {
        let l = self.generators();
        if p.z.generators() != l {
            return Err(crate::grassmann::GrassmannError::DimensionMismatch { left: l, right: p.z.generators() }.into());
        }
        let (zb, zs) = p.z.body_soul();
        if self.pole_denominator().eval(&zb).is_zero() {
            return Err(SuperfieldError::PoleAtPoint);
        }
        let mut out = Supernumber::zero(l);
        for mono in self.theta_monos() {
            let comp = self.theta_component(mono);
            let mut value = Supernumber::zero(l);
            let mut deriv = comp;
            let mut zs_pow = Supernumber::one(l);
            let mut fact = GaussianRational::from(1);
            let mut k = 0i64;
            while !zs_pow.is_zero() && !deriv.is_zero() {
                let at = deriv.eval_scalar_z(&zb)?;
                let c = at.coeff(ThetaMono::EMPTY, 0);
                value = &value + &(&zs_pow * &c).scale(&fact.inv().unwrap());
                k += 1;
                fact = &fact * &GaussianRational::from(k);
                zs_pow = &zs_pow * &zs;
                deriv = deriv.diff_z();
            }
            out = &out + &(&p.theta_power(mono) * &value);
        }
        Ok(out)
    }

    /// `F(w, images)`: replace `z` by the even function `w` and each odd
    /// variable by its image. `w` is split as `w_red + w_nil` and each odd
    /// component of `F` is expanded to second order in `w_nil`.
    pub fn substitute(&self, w: &RationalSuperfunction, images: &[RationalSuperfunction]) -> Result<Self, SuperfieldError> {
        if w.parity() != Some(Parity::Even) {
            return Err(SuperfieldError::OddSubstitution);
        }
        let (w_red, w_nil) = w.split_theta();
        let nil2 = &w_nil * &w_nil;
        if !(&nil2 * &w_nil).is_zero() {
            return Err(SuperfieldError::NilpotencyViolation);
        }
        let l = self.generators();
        let out_vars = w.odd_vars().max(images.iter().map(|t| t.odd_vars()).max().unwrap_or(0));
        let mut out = RationalSuperfunction::zero(l, out_vars);
        for mono in self.theta_monos() {
            let comp = self.theta_component(mono);
            let mut value = comp.compose_theta_free(&w_red)?;
            if !w_nil.is_zero() {
                let d1 = comp.diff_z();
                value = &value + &(&d1.compose_theta_free(&w_red)? * &w_nil);
                if !nil2.is_zero() {
                    let d2 = d1.diff_z();
                    let half = GaussianRational::from_ratio(1, 2);
                    value = &value + &(&d2.compose_theta_free(&w_red)? * &nil2).scale(&half);
                }
            }
            let mut t = RationalSuperfunction::one(l, out_vars);
            for (var, idx) in [(OddVar::Plus, 0), (OddVar::Minus, 1)] {
                if mono.contains(var) {
                    let img = images.get(idx).ok_or(SuperfieldError::OddVarCount {
                        expected: idx as u8 + 1,
                        found: images.len() as u8,
                    })?;
                    t = &t * img;
                }
            }
            out = &out + &(&t * &value);
        }
        Ok(out)
    }

    /// Composition of a θ-free function with a θ-free even function, by
    /// homogenized Horner evaluation of numerator and denominator.
    pub(crate) fn compose_theta_free(&self, w: &RationalSuperfunction) -> Result<Self, SuperfieldError> {
        let l = self.generators();
        let vars = self.odd_vars().max(w.odd_vars());
        if self.is_zero() {
            return Ok(RationalSuperfunction::zero(l, vars));
        }
        let lo = self.numerator().min_exp().unwrap_or(0);
        let hi = self.numerator().max_exp().unwrap_or(0);
        let coeff = |k: i32| self.numerator().coeff(ThetaMono::EMPTY, k);
        let mut num = horner(w, lo.max(0), hi, &coeff, vars)?;
        if lo < 0 {
            let v = w.recip().map_err(|_| SuperfieldError::SingularComposition)?;
            let neg = horner(&v, 1, -lo, &|k: i32| coeff(-k), vars)?;
            num = &num + &neg;
        }
        let den_poly = self.denominator();
        if den_poly.is_one() {
            return Ok(num);
        }
        let den_coeffs = |k: i32| Supernumber::scalar(l, den_poly.coeff(k as usize));
        let den = horner(w, 0, den_poly.degree().unwrap() as i32, &den_coeffs, vars)?;
        num.try_div(&den).map_err(|e| match e {
            SuperfieldError::NotInvertible => SuperfieldError::SingularComposition,
            other => other,
        })
    }
}

/// `Σ_{k=lo}^{hi} c_k w^k` for `w = P/Q`, as `Σ c_k P^k Q^{hi−k} / Q^hi`.
fn horner(
    w: &RationalSuperfunction,
    lo: i32,
    hi: i32,
    coeff: &dyn Fn(i32) -> Supernumber,
    vars: u8,
) -> Result<RationalSuperfunction, SuperfieldError> {
    let l = w.generators();
    if hi < lo {
        return Ok(RationalSuperfunction::zero(l, vars));
    }
    let p = w.numerator().clone().with_odd_vars(vars);
    let q = w.denominator();
    let mut q_pows = vec![crate::scalar_poly::ScalarPoly::one()];
    for _ in 0..hi {
        let next = q_pows.last().unwrap() * q;
        q_pows.push(next);
    }
    // Laurent numerators (q = 1) may carry negative exponents; the product
    // below stays a valid Laurent superpolynomial either way.
    let mut acc = SuperPolynomial::constant(coeff(hi), vars);
    for k in (0..hi).rev() {
        acc = &acc * &p;
        if k >= lo {
            let c = SuperPolynomial::constant(coeff(k), vars);
            acc = &acc + &c.mul_scalar_poly(&q_pows[(hi - k) as usize]);
        }
    }
    RationalSuperfunction::new(acc, q_pows[hi as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta12(l: usize) -> Supernumber {
        &Supernumber::generator(l, 1) * &Supernumber::generator(l, 2)
    }

    #[test]
    fn evaluation_examples() {
        let l = 4;
        let p = SuperPoint::new(&Supernumber::one(l) + &zeta12(l), vec![]).unwrap();
        let z2 = RationalSuperfunction::z_pow(l, 2, 2);
        assert_eq!(z2.evaluate(&p).unwrap(), &p.z * &p.z);
        let inv = RationalSuperfunction::z_pow(l, 2, -1);
        assert_eq!(inv.evaluate(&p).unwrap(), p.z.inv().unwrap());
        let q = SuperPoint::new(zeta12(l), vec![]).unwrap();
        assert_eq!(inv.evaluate(&q), Err(SuperfieldError::PoleAtPoint));
    }

    #[test]
    fn substitution_examples() {
        let l = 4;
        let z = RationalSuperfunction::z(l, 2);
        let tp = RationalSuperfunction::theta(l, 2, OddVar::Plus);
        let tm = RationalSuperfunction::theta(l, 2, OddVar::Minus);
        let w = &z + &(&tp * &tm);
        let ids = [tp.clone(), tm.clone()];
        assert_eq!(z.substitute(&w, &ids).unwrap(), w);
        let sq = z.pow(2).substitute(&w, &ids).unwrap();
        let expected = &z.pow(2) + &(&(&tp * &tm) * &z).scale(&GaussianRational::from(2));
        assert_eq!(sq, expected);
        let inv = RationalSuperfunction::z_pow(l, 2, -1);
        assert_eq!(inv.substitute(&inv, &ids).unwrap(), z);
    }
}
