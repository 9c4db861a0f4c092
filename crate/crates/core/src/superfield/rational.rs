use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::poly::laurent_from_entries;
use super::{OddVar, SuperPolynomial, SuperfieldError, ThetaMono};
use crate::gaussian::GaussianRational;
use crate::grassmann::{GrassmannError, Parity, Supernumber};
use crate::scalar_poly::ScalarPoly;

/// `numerator / denominator` with a monic scalar denominator.
///
/// Canonical form: the numerator has no negative exponents unless the
/// denominator is `1`, the denominator shares no factor with every scalar
/// component of the numerator, and a denominator `z^k` is folded into
/// negative exponents. Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalSuperfunction {
    num: SuperPolynomial,
    den: ScalarPoly,
}

impl RationalSuperfunction {
    pub fn new(num: SuperPolynomial, den: ScalarPoly) -> Result<Self, SuperfieldError> {
        if den.is_zero() {
            return Err(SuperfieldError::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(num: SuperPolynomial) -> Self {
        Self { num, den: ScalarPoly::one() }
    }

    pub fn zero(generators: usize, odd_vars: u8) -> Self {
        Self::from_poly(SuperPolynomial::zero(generators, odd_vars))
    }

    pub fn one(generators: usize, odd_vars: u8) -> Self {
        Self::from_poly(SuperPolynomial::one(generators, odd_vars))
    }

    pub fn constant(c: Supernumber, odd_vars: u8) -> Self {
        Self::from_poly(SuperPolynomial::constant(c, odd_vars))
    }

    pub fn scalar(generators: usize, odd_vars: u8, c: GaussianRational) -> Self {
        Self::constant(Supernumber::scalar(generators, c), odd_vars)
    }

    pub fn z(generators: usize, odd_vars: u8) -> Self {
        Self::z_pow(generators, odd_vars, 1)
    }

    pub fn z_pow(generators: usize, odd_vars: u8, k: i32) -> Self {
        Self::from_poly(SuperPolynomial::z_pow(generators, odd_vars, k))
    }

    pub fn theta(generators: usize, odd_vars: u8, var: OddVar) -> Self {
        Self::from_poly(SuperPolynomial::theta(generators, odd_vars, var))
    }

    /// Scalar rational function `p / q`.
    pub fn scalar_rational(generators: usize, odd_vars: u8, p: &ScalarPoly, q: &ScalarPoly) -> Result<Self, SuperfieldError> {
        Self::new(SuperPolynomial::from_scalar_poly(generators, odd_vars, p), q.clone())
    }

    pub fn numerator(&self) -> &SuperPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &ScalarPoly {
        &self.den
    }

    pub fn generators(&self) -> usize {
        self.num.generators()
    }

    pub fn odd_vars(&self) -> u8 {
        self.num.odd_vars()
    }

    pub fn with_odd_vars(self, odd_vars: u8) -> Self {
        Self { num: self.num.with_odd_vars(odd_vars), den: self.den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(mut num: SuperPolynomial, mut den: ScalarPoly) -> Self {
        if num.is_zero() {
            return Self { num, den: ScalarPoly::one() };
        }
        if !den.is_monic() {
            let inv = den.leading().inv().expect("nonzero denominator");
            num = num.scale(&inv);
            den = den.monic();
        }
        if den.is_one() {
            return Self { num, den };
        }
        let low = num.min_exp().unwrap_or(0);
        if low < 0 {
            num = num.shift(-low);
            den = den.shift((-low) as usize);
        }
        let mut comps: Vec<ScalarPoly> = num
            .components()
            .into_values()
            .map(|entries| {
                let (s, p) = laurent_from_entries(&entries);
                p.shift(s as usize)
            })
            .collect();
        comps.sort_by_key(|p| p.degree());
        let mut g = den.clone();
        for c in &comps {
            if g.degree() == Some(0) {
                break;
            }
            g = g.gcd(c);
        }
        if g.degree().is_some_and(|d| d > 0) {
            num = num.div_scalar_exact(&g).expect("gcd divides every component");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        if let Some(k) = den.as_power_of_z() {
            num = num.shift(-(k as i32));
            den = ScalarPoly::one();
        }
        Self { num, den }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, SuperfieldError> {
        self.num.check_same(&o.num)?;
        if self.den == o.den {
            return Ok(Self::canonical(&self.num + &o.num, self.den.clone()));
        }
        let num = &self.num.mul_scalar_poly(&o.den) + &o.num.mul_scalar_poly(&self.den);
        Ok(Self::canonical(num, &self.den * &o.den))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, SuperfieldError> {
        let num = self.num.try_mul(&o.num)?;
        Ok(Self::canonical(num, &self.den * &o.den))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    /// Multiply by a Supernumber placed on the left.
    pub fn left_mul(&self, c: &Supernumber) -> Self {
        &Self::constant(c.clone(), self.odd_vars()) * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.generators(), self.odd_vars());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires a numerator whose body part is not
    /// the zero polynomial.
    pub fn recip(&self) -> Result<Self, SuperfieldError> {
        if self.num.is_zero() {
            return Err(SuperfieldError::NotInvertible);
        }
        let s = self.num.min_exp().unwrap_or(0);
        let m = self.num.shift(-s);
        let (free, nil_theta) = m.split_theta();
        let mut body = SuperPolynomial::zero(m.generators(), m.odd_vars());
        for (_, k, c) in free.terms() {
            body.add_term(ThetaMono::EMPTY, k, &Supernumber::scalar(m.generators(), c.body()));
        }
        let body_poly = {
            let (shift, p) = body.body_laurent();
            if p.is_zero() {
                return Err(SuperfieldError::NotInvertible);
            }
            p.shift(shift as usize)
        };
        let soul = &(&free - &body) + &nil_theta;
        // 1/(B + S) = Σ_k (−S)^k B^{K−1−k} / B^K with S^K = 0.
        let minus_s = -&soul;
        let mut powers = vec![SuperPolynomial::one(m.generators(), m.odd_vars())];
        loop {
            let next = powers.last().unwrap() * &minus_s;
            if next.is_zero() {
                break;
            }
            powers.push(next);
        }
        let big_k = powers.len() as u32;
        let mut num = SuperPolynomial::zero(m.generators(), m.odd_vars());
        for (k, p) in powers.iter().enumerate() {
            num = &num + &p.mul_scalar_poly(&body_poly.pow(big_k - 1 - k as u32));
        }
        let num = num.mul_scalar_poly(&self.den).shift(-s);
        Ok(Self::canonical(num, body_poly.pow(big_k)))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self, SuperfieldError> {
        self.try_mul(&o.recip()?)
    }

    /// `d/dz`.
    pub fn diff_z(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.diff_z());
        }
        let num = &self.num.diff_z().mul_scalar_poly(&self.den) - &self.num.mul_scalar_poly(&self.den.derivative());
        Self::canonical(num, &self.den * &self.den)
    }

    /// Left odd partial derivative.
    pub fn diff_theta(&self, var: OddVar) -> Self {
        Self::canonical(self.num.diff_theta(var), self.den.clone())
    }

    /// `D± = ∂/∂θ± + θ∓ ∂/∂z`.
    pub fn apply_d(&self, var: OddVar) -> Result<Self, SuperfieldError> {
        if self.odd_vars() != 2 {
            return Err(SuperfieldError::OddVarCount { expected: 2, found: self.odd_vars() });
        }
        let t = Self::theta(self.generators(), 2, var.other());
        Ok(&self.diff_theta(var) + &(&t * &self.diff_z()))
    }

    /// `D = ∂/∂θ + θ ∂/∂z` for one odd variable.
    pub fn apply_d1(&self) -> Self {
        let t = Self::theta(self.generators(), self.odd_vars().max(1), OddVar::Plus);
        &self.diff_theta(OddVar::Plus) + &(&t * &self.diff_z())
    }

    pub fn theta_component(&self, mono: ThetaMono) -> Self {
        Self::canonical(self.num.theta_component(mono), self.den.clone())
    }

    pub fn theta_monos(&self) -> Vec<ThetaMono> {
        self.num.theta_monos()
    }

    pub fn is_theta_free(&self) -> bool {
        self.num.is_theta_free()
    }

    /// θ-free part and the part carrying odd variables.
    pub fn split_theta(&self) -> (Self, Self) {
        let (a, b) = self.num.split_theta();
        (Self::canonical(a, self.den.clone()), Self::canonical(b, self.den.clone()))
    }

    pub fn parity(&self) -> Option<Parity> {
        self.num.parity()
    }

    /// Body rational function of the θ-free part, as `(numerator, denominator)`
    /// with `z^shift` folded in when the shift is nonnegative.
    pub fn body_rational(&self) -> (i32, ScalarPoly, ScalarPoly) {
        let (shift, p) = self.num.body_laurent();
        (shift, p, self.den.clone())
    }

    /// θ-free part with every coefficient replaced by its body.
    pub fn body_part(&self) -> Self {
        let l = self.generators();
        let mut num = SuperPolynomial::zero(l, self.odd_vars());
        for (m, k, c) in self.num.terms() {
            if m.is_empty() {
                num.add_term(m, k, &Supernumber::scalar(l, c.body()));
            }
        }
        Self::canonical(num, self.den.clone())
    }

    /// True when the body rational function of the θ-free part is nonzero.
    pub fn has_nonzero_body(&self) -> bool {
        !self.num.body_laurent().1.is_zero()
    }

    pub fn max_label(&self) -> usize {
        self.num.max_label()
    }

    /// Every coefficient lies in `Λ_bound`.
    pub fn coefficients_in(&self, bound: usize) -> bool {
        self.max_label() <= bound
    }

    pub fn extend(&self, target: usize) -> Result<Self, GrassmannError> {
        Ok(Self { num: self.num.extend(target)?, den: self.den.clone() })
    }

    pub fn restrict(&self, target: usize) -> Result<Self, GrassmannError> {
        Ok(Self::canonical(self.num.restrict(target)?, self.den.clone()))
    }

    /// Body points where the function has a pole: `None` stands for `z = 0`
    /// from negative exponents, otherwise the denominator is returned.
    pub fn pole_denominator(&self) -> ScalarPoly {
        match self.num.min_exp() {
            Some(k) if k < 0 => self.den.shift((-k) as usize),
            _ => self.den.clone(),
        }
    }

    /// Value at a scalar `z`, odd variables kept formal.
    pub fn eval_scalar_z(&self, z: &GaussianRational) -> Result<SuperPolynomial, SuperfieldError> {
        let d = self.den.eval(z);
        let dinv = d.inv().ok_or(SuperfieldError::PoleAtPoint)?;
        let n = self.num.eval_scalar_z(z).ok_or(SuperfieldError::PoleAtPoint)?;
        Ok(n.scale(&dinv))
    }
}

impl<'a> Add<&'a RationalSuperfunction> for &'a RationalSuperfunction {
    type Output = RationalSuperfunction;
    fn add(self, o: &RationalSuperfunction) -> RationalSuperfunction {
        self.try_add(o).expect("rational superfunction sum")
    }
}

impl<'a> Sub<&'a RationalSuperfunction> for &'a RationalSuperfunction {
    type Output = RationalSuperfunction;
    fn sub(self, o: &RationalSuperfunction) -> RationalSuperfunction {
        self + &-o
    }
}

impl<'a> Mul<&'a RationalSuperfunction> for &'a RationalSuperfunction {
    type Output = RationalSuperfunction;
    fn mul(self, o: &RationalSuperfunction) -> RationalSuperfunction {
        self.try_mul(o).expect("rational superfunction product")
    }
}

impl Neg for &RationalSuperfunction {
    type Output = RationalSuperfunction;
    fn neg(self) -> RationalSuperfunction {
        RationalSuperfunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalSuperfunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalSuperfunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RSF[Λ{}]({})", self.generators(), self)
    }
}

impl RationalSuperfunction {
    /// Helper for tests and builders: `Σ c_k z^k` from scalar integers.
    pub fn from_ints(generators: usize, odd_vars: u8, coeffs: &[i64]) -> Self {
        let p = ScalarPoly::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect());
        Self::from_poly(SuperPolynomial::from_scalar_poly(generators, odd_vars, &p))
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num == SuperPolynomial::one(self.generators(), self.odd_vars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RationalSuperfunction {
        RationalSuperfunction::z(4, 2)
    }
    fn c(v: i64) -> RationalSuperfunction {
        RationalSuperfunction::scalar(4, 2, GaussianRational::from(v))
    }

    #[test]
    fn canonical_form_cancels_common_factors() {
        let zp1 = &z() + &c(1);
        let q = (&(&zp1 * &z())).try_div(&zp1).unwrap();
        assert_eq!(q, z());
        let inv = z().recip().unwrap();
        assert_eq!(inv, RationalSuperfunction::z_pow(4, 2, -1));
        assert!(inv.is_polynomial());
    }

    #[test]
    fn derivative_of_reciprocal() {
        let inv = z().recip().unwrap();
        assert_eq!(inv.diff_z(), -&RationalSuperfunction::z_pow(4, 2, -2));
        let r = (&c(1)).try_div(&(&z() + &c(1))).unwrap();
        let expected = (&-&c(1)).try_div(&(&(&z() + &c(1)) * &(&z() + &c(1)))).unwrap();
        assert_eq!(r.diff_z(), expected);
    }

    #[test]
    fn grassmann_divisor_is_cleared_by_the_geometric_series() {
        let zeta = RationalSuperfunction::constant(&Supernumber::generator(4, 1) * &Supernumber::generator(4, 2), 2);
        let d = &(&z() + &c(1)) + &zeta;
        let r = d.recip().unwrap();
        assert_eq!(&r * &d, RationalSuperfunction::one(4, 2));
        assert!(r.denominator().degree() == Some(2));
    }

    #[test]
    fn pure_soul_divisor_is_not_invertible() {
        let zeta = RationalSuperfunction::constant(Supernumber::generator(4, 1), 2);
        assert_eq!(zeta.recip(), Err(SuperfieldError::NotInvertible));
    }

    #[test]
    fn d_operators_anticommute_to_twice_the_derivative() {
        let f = z().pow(3);
        let dp = |g: &RationalSuperfunction| g.apply_d(OddVar::Plus).unwrap();
        let dm = |g: &RationalSuperfunction| g.apply_d(OddVar::Minus).unwrap();
        let lhs = &dp(&dm(&f)) + &dm(&dp(&f));
        assert_eq!(lhs, RationalSuperfunction::from_ints(4, 2, &[0, 0, 6]));
        let tp = RationalSuperfunction::theta(4, 2, OddVar::Plus);
        let tm = RationalSuperfunction::theta(4, 2, OddVar::Minus);
        let g = &(&tp * &tm) * &z().pow(2);
        assert!(dp(&dp(&g)).is_zero());
        assert_eq!(dp(&tp), RationalSuperfunction::one(4, 2));
    }
}
