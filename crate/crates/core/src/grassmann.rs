//! Finite Grassmann algebras Λ_L over the Gaussian rationals.
//!
//! A [`Supernumber`] is a finite sum `Σ a_(j) ζ_j1 ⋯ ζ_jk` over strictly
//! increasing multi-indices. Zero coefficients are never stored, so
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gaussian::GaussianRational;

/// Hard cap on the generator count; multi-indices are stored as bit sets.
pub const MAX_GENERATORS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("generator count mismatch: Λ_{left} vs Λ_{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid target generator count {target} for an element of Λ_{from}")]
    InvalidDimension { from: usize, target: usize },
    #[error("at most {MAX_GENERATORS} generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("generator label {label} outside 1..={generators}")]
    InvalidLabel { label: usize, generators: usize },
    #[error("multi-index labels must be strictly increasing: {0:?}")]
    UnsortedLabels(Vec<usize>),
    #[error("element with zero body is not invertible")]
    NotInvertible,
}

/// ℤ₂ grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_len(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{η(a)η(b)}` as a boolean "negate".
    pub fn sign_flip(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A strictly increasing list of generator labels, stored as a bit set
/// (bit `j-1` set ⇔ label `j` present). The empty index is `(∅)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    pub fn from_labels(labels: &[usize]) -> Result<Self, GrassmannError> {
        let mut bits = 0u32;
        let mut prev = 0usize;
        for &l in labels {
            if l == 0 || l > MAX_GENERATORS {
                return Err(GrassmannError::InvalidLabel { label: l, generators: MAX_GENERATORS });
            }
            if l <= prev {
                return Err(GrassmannError::UnsortedLabels(labels.to_vec()));
            }
            prev = l;
            bits |= 1 << (l - 1);
        }
        Ok(MultiIndex(bits))
    }

    pub fn single(label: usize) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&label), "generator label {label} out of range");
        MultiIndex(1 << (label - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_bits(bits: u32) -> Self {
        MultiIndex(bits)
    }

    pub fn labels(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b as usize + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        Parity::from_len(self.len())
    }

    /// Largest label, 0 for `(∅)`.
    pub fn max_label(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn fits(self, generators: usize) -> bool {
        self.max_label() <= generators
    }

    /// Product of the two monomials: `None` if they share a generator,
    /// otherwise the merged index and whether sorting introduced a sign.
    pub fn merge(self, other: MultiIndex) -> Option<(MultiIndex, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        Some((MultiIndex(self.0 | other.0), reorder_sign(self.0, other.0)))
    }
}

/// Parity of the number of inversions in the concatenation `a ++ b`
/// of two sorted label sets: pairs `(i ∈ a, j ∈ b)` with `i > j`.
pub(crate) fn reorder_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 31 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
    }
    inversions % 2 == 1
}

impl Ord for MultiIndex {
    /// Graded lexicographic order on the sorted label lists.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels())
    }
}

/// An element of Λ_L with exact Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Supernumber {
    generators: usize,
    terms: BTreeMap<MultiIndex, GaussianRational>,
}

impl Supernumber {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS, "too many generators: {generators}");
        Self { generators, terms: BTreeMap::new() }
    }

    pub fn one(generators: usize) -> Self {
        Self::scalar(generators, GaussianRational::one())
    }

    pub fn scalar(generators: usize, c: GaussianRational) -> Self {
        Self::monomial(generators, MultiIndex::EMPTY, c)
    }

    pub fn from_int(generators: usize, v: i64) -> Self {
        Self::scalar(generators, GaussianRational::from(v))
    }

    /// The generator ζ_label.
    pub fn generator(generators: usize, label: usize) -> Self {
        assert!(label >= 1 && label <= generators, "ζ_{label} not in Λ_{generators}");
        Self::monomial(generators, MultiIndex::single(label), GaussianRational::one())
    }

    pub fn monomial(generators: usize, index: MultiIndex, c: GaussianRational) -> Self {
        assert!(index.fits(generators), "index {index:?} not in Λ_{generators}");
        let mut s = Self::zero(generators);
        if !c.is_zero() {
            s.terms.insert(index, c);
        }
        s
    }

    pub fn try_from_terms(
        generators: usize,
        terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>,
    ) -> Result<Self, GrassmannError> {
        if generators > MAX_GENERATORS {
            return Err(GrassmannError::TooManyGenerators(generators));
        }
        let mut s = Self::zero(generators);
        for (idx, c) in terms {
            if !idx.fits(generators) {
                return Err(GrassmannError::InvalidLabel { label: idx.max_label(), generators });
            }
            s.add_term(idx, &c);
        }
        Ok(s)
    }

    pub fn from_terms(generators: usize, terms: impl IntoIterator<Item = (MultiIndex, GaussianRational)>) -> Self {
        Self::try_from_terms(generators, terms).expect("invalid supernumber terms")
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, index: MultiIndex) -> GaussianRational {
        self.terms.get(&index).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub(crate) fn add_term(&mut self, index: MultiIndex, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&index);
                }
            }
            None => {
                self.terms.insert(index, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.body().is_one()
    }

    pub fn body(&self) -> GaussianRational {
        self.coeff(MultiIndex::EMPTY)
    }

    pub fn soul(&self) -> Supernumber {
        let mut s = self.clone();
        s.terms.remove(&MultiIndex::EMPTY);
        s
    }

    /// `(a_B, a_S)` with `a = a_B + a_S`.
    pub fn body_soul(&self) -> (GaussianRational, Supernumber) {
        (self.body(), self.soul())
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }

    pub fn even_part(&self) -> Supernumber {
        self.filter(|k| k.parity() == Parity::Even)
    }

    pub fn odd_part(&self) -> Supernumber {
        self.filter(|k| k.parity() == Parity::Odd)
    }

    fn filter(&self, keep: impl Fn(MultiIndex) -> bool) -> Supernumber {
        Supernumber {
            generators: self.generators,
            terms: self.terms.iter().filter(|(k, _)| keep(**k)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Homogeneous parity, `None` when both parts are present. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|k| k.parity());
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Grade involution: negates the odd part.
    pub fn grade_involution(&self) -> Supernumber {
        Supernumber {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, if k.parity().is_odd() { -v } else { v.clone() }))
                .collect(),
        }
    }

    /// Largest generator label occurring in the support.
    pub fn max_label(&self) -> usize {
        self.terms.keys().map(|k| k.max_label()).max().unwrap_or(0)
    }

    /// True when every term lies in Λ_{bound} ⊂ Λ_L.
    pub fn supported_in(&self, bound: usize) -> bool {
        self.max_label() <= bound
    }

    pub fn scale(&self, c: &GaussianRational) -> Supernumber {
        if c.is_zero() {
            return Supernumber::zero(self.generators);
        }
        Supernumber {
            generators: self.generators,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn try_add(&self, o: &Supernumber) -> Result<Supernumber, GrassmannError> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v);
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Supernumber) -> Result<Supernumber, GrassmannError> {
        self.check_same(o)?;
        let mut out = Supernumber::zero(self.generators);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((idx, neg)) = a.merge(*b) {
                    let p = x * y;
                    if neg {
                        out.add_term(idx, &-p);
                    } else {
                        out.add_term(idx, &p);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same(&self, o: &Supernumber) -> Result<(), GrassmannError> {
        if self.generators != o.generators {
            return Err(GrassmannError::DimensionMismatch { left: self.generators, right: o.generators });
        }
        Ok(())
    }

    pub fn pow(&self, e: u32) -> Supernumber {
        let mut acc = Supernumber::one(self.generators);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `1/a = Σ (−1)ⁿ a_Sⁿ / a_B^{n+1}`; terminates since `a_S^{L+1} = 0`.
    pub fn inv(&self) -> Result<Supernumber, GrassmannError> {
        let (body, soul) = self.body_soul();
        let body_inv = body.inv().ok_or(GrassmannError::NotInvertible)?;
        let ratio = soul.scale(&-&body_inv);
        let mut term = Supernumber::scalar(self.generators, body_inv.clone());
        let mut acc = term.clone();
        loop {
            term = &term * &ratio;
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Square root of an element with a square body in ℚ(i), via the
    /// terminating binomial series of `(1 + s)^{1/2}`.
    pub fn sqrt(&self) -> Option<Supernumber> {
        let (body, soul) = self.body_soul();
        let root_body = body.sqrt()?;
        if root_body.is_zero() {
            return if soul.is_zero() { Some(Supernumber::zero(self.generators)) } else { None };
        }
        let x = soul.scale(&body.inv()?);
        Some(binomial_series(&x, BigRational::new(1.into(), 2.into())).scale(&root_body))
    }

    /// `(1 + s)^{-1/2}` for nilpotent `s`.
    pub fn inv_sqrt_one_plus(s: &Supernumber) -> Supernumber {
        assert!(s.body().is_zero(), "argument must be nilpotent");
        binomial_series(s, BigRational::new((-1).into(), 2.into()))
    }

    /// `exp(s)` for even nilpotent `s`, as the terminating series.
    pub fn exp_nilpotent(s: &Supernumber) -> Option<Supernumber> {
        if !s.body().is_zero() || s.parity() == Some(Parity::Odd) && !s.is_zero() {
            return None;
        }
        let mut acc = Supernumber::one(s.generators);
        let mut term = Supernumber::one(s.generators);
        for k in 1i64.. {
            term = (&term * s).scale(&GaussianRational::from_ratio(1, k));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Some(acc)
    }

    /// Embed into Λ_{target}, `target ≥ L`.
    pub fn extend(&self, target: usize) -> Result<Supernumber, GrassmannError> {
        if target < self.generators || target > MAX_GENERATORS {
            return Err(GrassmannError::InvalidDimension { from: self.generators, target });
        }
        Ok(Supernumber { generators: target, terms: self.terms.clone() })
    }

    /// Project onto Λ_{target}, `target ≤ L`, dropping every term whose
    /// index is not in J_{target}.
    pub fn restrict(&self, target: usize) -> Result<Supernumber, GrassmannError> {
        if target > self.generators {
            return Err(GrassmannError::InvalidDimension { from: self.generators, target });
        }
        Ok(Supernumber {
            generators: target,
            terms: self.terms.iter().filter(|(k, _)| k.fits(target)).map(|(k, v)| (*k, v.clone())).collect(),
        })
    }
}

/// `Σ_k binom(α, k) x^k` for nilpotent `x`.
fn binomial_series(x: &Supernumber, alpha: BigRational) -> Supernumber {
    let mut acc = Supernumber::one(x.generators);
    let mut power = Supernumber::one(x.generators);
    let mut coeff = BigRational::one();
    let mut k = 0i64;
    loop {
        power = &power * x;
        if power.is_zero() {
            break;
        }
        coeff = coeff * (&alpha - BigRational::from_integer(k.into())) / BigRational::from_integer((k + 1).into());
        k += 1;
        acc = &acc + &power.scale(&GaussianRational::real(coeff.clone()));
    }
    acc
}

impl<'a> Add<&'a Supernumber> for &'a Supernumber {
    type Output = Supernumber;
    fn add(self, o: &Supernumber) -> Supernumber {
        self.try_add(o).expect("supernumber addition")
    }
}

impl<'a> Sub<&'a Supernumber> for &'a Supernumber {
    type Output = Supernumber;
    fn sub(self, o: &Supernumber) -> Supernumber {
        self.try_add(&-o).expect("supernumber subtraction")
    }
}

impl<'a> Mul<&'a Supernumber> for &'a Supernumber {
    type Output = Supernumber;
    /// Panics on mismatched generator counts; use [`Supernumber::try_mul`]
    /// to get a `DimensionMismatch` instead.
    fn mul(self, o: &Supernumber) -> Supernumber {
        self.try_mul(o).expect("supernumber product")
    }
}

impl Neg for &Supernumber {
    type Output = Supernumber;
    fn neg(self) -> Supernumber {
        Supernumber { generators: self.generators, terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Neg for Supernumber {
    type Output = Supernumber;
    fn neg(self) -> Supernumber {
        -&self
    }
}

impl Add for Supernumber {
    type Output = Supernumber;
    fn add(self, o: Supernumber) -> Supernumber {
        &self + &o
    }
}

impl Sub for Supernumber {
    type Output = Supernumber;
    fn sub(self, o: Supernumber) -> Supernumber {
        &self - &o
    }
}

impl Mul for Supernumber {
    type Output = Supernumber;
    fn mul(self, o: Supernumber) -> Supernumber {
        &self * &o
    }
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, idx: MultiIndex) -> fmt::Result {
    for l in idx.labels() {
        write!(f, "z[{l}]")?;
    }
    Ok(())
}

/// Writes `c·rest` in the shared text grammar, where `rest` is a
/// nonempty monomial string (or empty for a bare coefficient).
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &GaussianRational,
    rest: &str,
) -> fmt::Result {
    let negative_real = c.is_real() && c.re < BigRational::zero();
    let shown = if negative_real { -c } else { c.clone() };
    match (first, negative_real) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if rest.is_empty() {
        write!(f, "{shown}")
    } else if shown.is_one() {
        write!(f, "{rest}")
    } else {
        write!(f, "{shown}*{rest}")
    }
}

impl fmt::Display for Supernumber {
    /// `3/2 + (0+1i)*z[1]z[2]`, terms in graded lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            let rest = MonomialText(*idx).to_string();
            write_signed_term(f, n == 0, c, &rest)?;
        }
        Ok(())
    }
}

struct MonomialText(MultiIndex);

impl fmt::Display for MonomialText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.0)
    }
}

impl fmt::Debug for Supernumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}[{}]", self.generators, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(l: usize, j: usize) -> Supernumber {
        Supernumber::generator(l, j)
    }

    #[test]
    fn generators_anticommute() {
        let z12 = &zeta(2, 1) * &zeta(2, 2);
        let z21 = &zeta(2, 2) * &zeta(2, 1);
        assert_eq!(z21, -&z12);
        assert_eq!(z12.coeff(MultiIndex::from_labels(&[1, 2]).unwrap()), GaussianRational::one());
    }

    #[test]
    fn generator_squares_vanish() {
        assert!((&zeta(2, 1) * &zeta(2, 1)).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let one = Supernumber::one(2);
        let lhs = &(&one + &zeta(2, 1)) * &(&one + &zeta(2, 2));
        let rhs = &(&(&one + &zeta(2, 1)) + &zeta(2, 2)) + &(&zeta(2, 1) * &zeta(2, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn body_soul_split() {
        let x = &Supernumber::from_int(2, 3) + &(&zeta(2, 1) * &zeta(2, 2));
        let (b, s) = x.body_soul();
        assert_eq!(b, GaussianRational::from(3));
        assert_eq!(s, &zeta(2, 1) * &zeta(2, 2));
        let (b, s) = zeta(2, 1).body_soul();
        assert!(b.is_zero());
        assert_eq!(s, zeta(2, 1));
        let (b, s) = Supernumber::zero(2).body_soul();
        assert!(b.is_zero() && s.is_zero());
    }

    #[test]
    fn inverse_examples() {
        let two = Supernumber::from_int(3, 2);
        assert_eq!(two.inv().unwrap(), Supernumber::scalar(3, GaussianRational::from_ratio(1, 2)));
        let z12 = &zeta(2, 1) * &zeta(2, 2);
        let x = &Supernumber::one(2) + &z12;
        let inv = x.inv().unwrap();
        assert_eq!(inv, &Supernumber::one(2) - &z12);
        assert!((&x * &inv).is_one());
        assert_eq!(zeta(2, 1).inv(), Err(GrassmannError::NotInvertible));
    }

    #[test]
    fn mismatched_generators_is_an_error() {
        assert_eq!(
            zeta(2, 1).try_mul(&zeta(3, 1)),
            Err(GrassmannError::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn extend_restrict_examples() {
        let z12 = &zeta(2, 1) * &zeta(2, 2);
        let e = z12.extend(4).unwrap();
        assert_eq!(e.generators(), 4);
        assert_eq!(e, &zeta(4, 1) * &zeta(4, 2));
        let x = &zeta(4, 1) + &zeta(4, 3);
        assert_eq!(x.restrict(2).unwrap(), zeta(2, 1));
        assert!(x.restrict(5).is_err());
        assert!(x.extend(3).is_err());
    }

    #[test]
    fn sqrt_of_square() {
        let x = &Supernumber::from_int(4, 3) + &(&zeta(4, 1) * &zeta(4, 2));
        let sq = &x * &x;
        assert_eq!(sq.sqrt().unwrap(), x);
    }

    #[test]
    fn multi_index_rejects_unsorted() {
        assert!(MultiIndex::from_labels(&[2, 1]).is_err());
        assert!(MultiIndex::from_labels(&[0]).is_err());
        assert_eq!(MultiIndex::from_labels(&[1, 3]).unwrap().labels(), vec![1, 3]);
    }

    #[test]
    fn display_matches_grammar() {
        let x = &Supernumber::scalar(2, GaussianRational::from_ratio(3, 2))
            + &(&zeta(2, 1) * &zeta(2, 2)).scale(&GaussianRational::i());
        assert_eq!(x.to_string(), "3/2 + (0+1i)*z[1]z[2]");
        assert_eq!((-&zeta(2, 2)).to_string(), "-z[2]");
    }
}
