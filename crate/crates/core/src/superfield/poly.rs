use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{OddVar, SuperfieldError, ThetaMono};
use crate::gaussian::GaussianRational;
use crate::grassmann::{reorder_sign, MultiIndex, Parity, Supernumber};
use crate::scalar_poly::ScalarPoly;

/// Laurent superpolynomial `Σ θ^A · c_{A,k} · z^k` with the odd monomial
/// on the left, its coefficient in the middle and the power of `z` last.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperPolynomial {
    generators: usize,
    odd_vars: u8,
    terms: BTreeMap<(ThetaMono, i32), Supernumber>,
}

impl SuperPolynomial {
    pub fn zero(generators: usize, odd_vars: u8) -> Self {
        assert!(odd_vars <= 2, "at most two odd variables");
        Self { generators, odd_vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Supernumber, odd_vars: u8) -> Self {
        Self::term(ThetaMono::EMPTY, 0, c, odd_vars)
    }

    pub fn one(generators: usize, odd_vars: u8) -> Self {
        Self::constant(Supernumber::one(generators), odd_vars)
    }

    /// `θ^mono · c · z^exp`.
    pub fn term(mono: ThetaMono, exp: i32, c: Supernumber, odd_vars: u8) -> Self {
        let mut p = Self::zero(c.generators(), odd_vars.max(mono.required_vars()));
        p.add_term(mono, exp, &c);
        p
    }

    pub fn z_pow(generators: usize, odd_vars: u8, exp: i32) -> Self {
        Self::term(ThetaMono::EMPTY, exp, Supernumber::one(generators), odd_vars)
    }

    pub fn theta(generators: usize, odd_vars: u8, var: OddVar) -> Self {
        Self::term(ThetaMono::single(var), 0, Supernumber::one(generators), odd_vars)
    }

    pub fn from_scalar_poly(generators: usize, odd_vars: u8, p: &ScalarPoly) -> Self {
        let mut out = Self::zero(generators, odd_vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(ThetaMono::EMPTY, k as i32, &Supernumber::scalar(generators, c.clone()));
        }
        out
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn odd_vars(&self) -> u8 {
        self.odd_vars
    }

    pub fn with_odd_vars(mut self, odd_vars: u8) -> Self {
        assert!(odd_vars >= self.required_odd_vars());
        self.odd_vars = odd_vars;
        self
    }

    fn required_odd_vars(&self) -> u8 {
        self.terms.keys().map(|(m, _)| m.required_vars()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (ThetaMono, i32, &Supernumber)> {
        self.terms.iter().map(|((m, k), c)| (*m, *k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: ThetaMono, exp: i32) -> Supernumber {
        self.terms.get(&(mono, exp)).cloned().unwrap_or_else(|| Supernumber::zero(self.generators))
    }

    pub(crate) fn add_term(&mut self, mono: ThetaMono, exp: i32, c: &Supernumber) {
        if c.is_zero() {
            return;
        }
        assert_eq!(c.generators(), self.generators, "coefficient generator count mismatch");
        match self.terms.get_mut(&(mono, exp)) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&(mono, exp));
                }
            }
            None => {
                self.terms.insert((mono, exp), c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().map(|(_, k)| *k).min()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().map(|(_, k)| *k).max()
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            generators: self.generators,
            odd_vars: self.odd_vars,
            terms: self.terms.iter().map(|((m, e), c)| ((*m, e + k), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.generators, self.odd_vars);
        }
        Self {
            generators: self.generators,
            odd_vars: self.odd_vars,
            terms: self.terms.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    /// True when no term carries an odd variable.
    pub fn is_theta_free(&self) -> bool {
        self.terms.keys().all(|(m, _)| m.is_empty())
    }

    /// Coefficient function of `θ^mono`, as a θ-free superpolynomial.
    pub fn theta_component(&self, mono: ThetaMono) -> Self {
        Self {
            generators: self.generators,
            odd_vars: self.odd_vars,
            terms: self
                .terms
                .iter()
                .filter(|((m, _), _)| *m == mono)
                .map(|((_, k), c)| ((ThetaMono::EMPTY, *k), c.clone()))
                .collect(),
        }
    }

    /// Odd monomials that occur.
    pub fn theta_monos(&self) -> Vec<ThetaMono> {
        let mut v: Vec<_> = self.terms.keys().map(|(m, _)| *m).collect();
        v.dedup();
        v
    }

    /// Split into the θ-free part and the part carrying odd variables.
    pub fn split_theta(&self) -> (Self, Self) {
        let mut free = Self::zero(self.generators, self.odd_vars);
        let mut rest = Self::zero(self.generators, self.odd_vars);
        for ((m, k), c) in &self.terms {
            if m.is_empty() {
                free.terms.insert((*m, *k), c.clone());
            } else {
                rest.terms.insert((*m, *k), c.clone());
            }
        }
        (free, rest)
    }

    /// The scalar Laurent polynomial of body coefficients of the θ-free
    /// part, returned as `(valuation shift, polynomial)`, i.e. `z^shift · p(z)`.
    pub fn body_laurent(&self) -> (i32, ScalarPoly) {
        let entries: Vec<(i32, GaussianRational)> = self
            .terms
            .iter()
            .filter(|((m, _), _)| m.is_empty())
            .map(|((_, k), c)| (*k, c.body()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        laurent_from_entries(&entries)
    }

    /// Scalar Laurent components indexed by (odd monomial, ζ multi-index).
    pub(crate) fn components(&self) -> BTreeMap<(ThetaMono, MultiIndex), Vec<(i32, GaussianRational)>> {
        let mut out: BTreeMap<(ThetaMono, MultiIndex), Vec<(i32, GaussianRational)>> = BTreeMap::new();
        for ((m, k), c) in &self.terms {
            for (idx, v) in c.terms() {
                out.entry((*m, *idx)).or_default().push((*k, v.clone()));
            }
        }
        out
    }

    pub(crate) fn from_components(
        generators: usize,
        odd_vars: u8,
        comps: impl IntoIterator<Item = ((ThetaMono, MultiIndex), Vec<(i32, GaussianRational)>)>,
    ) -> Self {
        let mut out = Self::zero(generators, odd_vars);
        for ((m, idx), entries) in comps {
            for (k, v) in entries {
                out.add_term(m, k, &Supernumber::monomial(generators, idx, v));
            }
        }
        out
    }

    /// Multiply by a scalar polynomial in `z`.
    pub fn mul_scalar_poly(&self, p: &ScalarPoly) -> Self {
        if p.is_one() {
            return self.clone();
        }
        let mut out = Self::zero(self.generators, self.odd_vars);
        for ((m, k), c) in &self.terms {
            for (j, a) in p.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    out.add_term(*m, k + j as i32, &c.scale(a));
                }
            }
        }
        out
    }

    /// Exact division of every component by a scalar polynomial. The
    /// polynomial must have no negative exponents.
    pub fn div_scalar_exact(&self, p: &ScalarPoly) -> Option<Self> {
        if p.is_one() {
            return Some(self.clone());
        }
        let mut comps = Vec::new();
        for (key, entries) in self.components() {
            let (shift, poly) = laurent_from_entries(&entries);
            if shift < 0 {
                return None;
            }
            let q = poly.shift(shift as usize).div_exact(p)?;
            comps.push((key, q.coeffs().iter().enumerate().map(|(k, c)| (k as i32, c.clone())).collect()));
        }
        Some(Self::from_components(self.generators, self.odd_vars, comps))
    }

    /// `d/dz`.
    pub fn diff_z(&self) -> Self {
        let mut out = Self::zero(self.generators, self.odd_vars);
        for ((m, k), c) in &self.terms {
            if *k != 0 {
                out.add_term(*m, k - 1, &c.scale(&GaussianRational::from(*k as i64)));
            }
        }
        out
    }

    /// Left partial derivative with respect to an odd variable. With
    /// monomials stored as θ⁺θ⁻, `∂/∂θ⁻ (θ⁺θ⁻ A) = −θ⁺ A`.
    pub fn diff_theta(&self, var: OddVar) -> Self {
        let mut out = Self::zero(self.generators, self.odd_vars);
        for ((m, k), c) in &self.terms {
            if let Some((rest, negate)) = m.remove(var) {
                out.add_term(rest, *k, &if negate { -c } else { c.clone() });
            }
        }
        out
    }

    /// Total parity of each term: coefficient parity plus odd-monomial length.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for ((m, _), c) in &self.terms {
            for (idx, _) in c.terms() {
                let p = idx.parity() + m.parity();
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Largest ζ label in any coefficient.
    pub fn max_label(&self) -> usize {
        self.terms.values().map(|c| c.max_label()).max().unwrap_or(0)
    }

    pub fn extend(&self, target: usize) -> Result<Self, crate::grassmann::GrassmannError> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(*k, c.extend(target)?);
        }
        Ok(Self { generators: target, odd_vars: self.odd_vars, terms })
    }

    pub fn restrict(&self, target: usize) -> Result<Self, crate::grassmann::GrassmannError> {
        let mut out = Self::zero(target, self.odd_vars);
        for ((m, k), c) in &self.terms {
            out.add_term(*m, *k, &c.restrict(target)?);
        }
        Ok(out)
    }

    /// Value at a scalar `z` (odd variables kept formal); `None` if a
    /// negative power meets `z = 0`.
    pub fn eval_scalar_z(&self, z: &GaussianRational) -> Option<Self> {
        let mut out = Self::zero(self.generators, self.odd_vars);
        let inv = z.inv();
        for ((m, k), c) in &self.terms {
            let w = if *k >= 0 {
                z.pow(*k as u32)
            } else {
                inv.as_ref()?.pow(k.unsigned_abs())
            };
            out.add_term(*m, 0, &c.scale(&w));
        }
        Some(out)
    }

    pub(crate) fn check_same(&self, o: &Self) -> Result<(), SuperfieldError> {
        if self.generators != o.generators {
            return Err(crate::grassmann::GrassmannError::DimensionMismatch {
                left: self.generators,
                right: o.generators,
            }
            .into());
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, SuperfieldError> {
        self.check_same(o)?;
        let mut out = Self::zero(self.generators, self.odd_vars.max(o.odd_vars));
        // Grade-involuted copies of the left coefficients, used when the
        // right odd monomial has odd length.
        let mut twisted: BTreeMap<(ThetaMono, i32), Supernumber> = BTreeMap::new();
        for ((mb, kb), cb) in &o.terms {
            for ((ma, ka), ca) in &self.terms {
                let Some((mono, negate)) = ma.merge(*mb) else { continue };
                let left = if mb.parity().is_odd() {
                    twisted.entry((*ma, *ka)).or_insert_with(|| ca.grade_involution()).clone()
                } else {
                    ca.clone()
                };
                let prod = &left * cb;
                out.add_term(mono, ka + kb, &if negate { -prod } else { prod });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.generators, self.odd_vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn laurent_from_entries(entries: &[(i32, GaussianRational)]) -> (i32, ScalarPoly) {
    let Some(min) = entries.iter().map(|(k, _)| *k).min() else {
        return (0, ScalarPoly::zero());
    };
    let max = entries.iter().map(|(k, _)| *k).max().unwrap();
    let mut coeffs = vec![GaussianRational::zero(); (max - min + 1) as usize];
    for (k, c) in entries {
        coeffs[(k - min) as usize] += c;
    }
    (min, ScalarPoly::new(coeffs))
}

impl ThetaMono {
    /// Product of odd monomials: `None` if they share a variable,
    /// otherwise the merged monomial and whether reordering negates.
    pub fn merge(self, other: ThetaMono) -> Option<(ThetaMono, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        Some((ThetaMono(self.0 | other.0), reorder_sign(self.0 as u32, other.0 as u32)))
    }

    /// Strip `var` from the front of the monomial: `None` if absent,
    /// otherwise the rest and whether moving past earlier variables negates.
    pub fn remove(self, var: OddVar) -> Option<(ThetaMono, bool)> {
        let bit = var.bit();
        if self.0 & bit == 0 {
            return None;
        }
        let before = (self.0 & (bit - 1)).count_ones();
        Some((ThetaMono(self.0 & !bit), before % 2 == 1))
    }
}

impl<'a> Add<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn add(self, o: &SuperPolynomial) -> SuperPolynomial {
        self.check_same(o).expect("superpolynomial addition");
        let mut out = self.clone();
        out.odd_vars = self.odd_vars.max(o.odd_vars);
        for ((m, k), c) in &o.terms {
            out.add_term(*m, *k, c);
        }
        out
    }
}

impl<'a> Sub<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn sub(self, o: &SuperPolynomial) -> SuperPolynomial {
        self + &-o
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;
    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            generators: self.generators,
            odd_vars: self.odd_vars,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a SuperPolynomial> for &'a SuperPolynomial {
    type Output = SuperPolynomial;
    fn mul(self, o: &SuperPolynomial) -> SuperPolynomial {
        self.try_mul(o).expect("superpolynomial product")
    }
}

impl fmt::Display for SuperPolynomial {
    /// Terms as `coef*tp*tm*z[1]z[2]*z^k`, odd monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((m, k), c) in &self.terms {
            for (idx, v) in c.terms() {
                let mut parts: Vec<String> = Vec::new();
                if self.odd_vars == 1 && !m.is_empty() {
                    parts.push("t".into());
                } else {
                    if m.contains(OddVar::Plus) {
                        parts.push("tp".into());
                    }
                    if m.contains(OddVar::Minus) {
                        parts.push("tm".into());
                    }
                }
                if !idx.is_empty() {
                    parts.push(idx.labels().iter().map(|l| format!("z[{l}]")).collect());
                }
                match *k {
                    0 => {}
                    1 => parts.push("z".into()),
                    e if e < 0 => parts.push(format!("z^({e})")),
                    e => parts.push(format!("z^{e}")),
                }
                crate::grassmann::write_signed_term(f, first, v, &parts.join("*"))?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPolynomial[Λ{}]({})", self.generators, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp() -> SuperPolynomial {
        SuperPolynomial::theta(2, 2, OddVar::Plus)
    }
    fn tm() -> SuperPolynomial {
        SuperPolynomial::theta(2, 2, OddVar::Minus)
    }

    #[test]
    fn odd_variables_anticommute_with_each_other_and_with_odd_coefficients() {
        assert_eq!(&tm() * &tp(), -&(&tp() * &tm()));
        assert!((&tp() * &tp()).is_zero());
        let zeta = SuperPolynomial::constant(Supernumber::generator(2, 1), 2);
        assert_eq!(&zeta * &tp(), -&(&tp() * &zeta));
    }

    #[test]
    fn left_odd_derivatives() {
        let z = SuperPolynomial::z_pow(2, 2, 1);
        assert_eq!(tp().diff_theta(OddVar::Plus), SuperPolynomial::one(2, 2));
        let f = &(&tp() * &tm()) * &z;
        assert_eq!(f.diff_theta(OddVar::Plus), &tm() * &z);
        assert_eq!(f.diff_theta(OddVar::Minus), -&(&tp() * &z));
    }
}
