//! The N=2 Neveu-Schwarz algebra with exact structure constants.
//!
//! Basis: central `d`, even `L_m`, `J_m`, odd `G±_r` with `r ∈ ℤ + ½`.
//! Half-integer indices are stored doubled, so `G⁺_{1/2}` is `GPlus(1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::gaussian::GaussianRational;
use crate::grassmann::{write_signed_term, Parity};
use crate::spheres::SphereError;
use crate::superfield::SuperfieldError;

mod flow;
mod rep;
mod subalg;

pub use flow::{displayed_flows, flow_series, flow_vs_group, ns_flow, Flow};
pub use rep::{ns_rep, ns_rep_bracket_check, rep_element, DerivationField, RepReport};
pub use subalg::{g_n_basis, g_n_closure_check, g_n_even_basis, g_n_odd_basis, sigma_n, ClosureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NsError {
    #[error("element is not parity-homogeneous")]
    NotHomogeneous,
    #[error("parameter parity does not match the element")]
    ParityMismatch,
    #[error(transparent)]
    Superfield(#[from] SuperfieldError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NSBasisSymbol {
    Central,
    L(i64),
    J(i64),
    /// `G⁺_{t/2}`, `t` odd.
    GPlus(i64),
    /// `G⁻_{t/2}`, `t` odd.
    GMinus(i64),
}

impl NSBasisSymbol {
    pub fn g_plus(twice: i64) -> Self {
        assert!(twice.rem_euclid(2) == 1, "G index must be a half-integer");
        NSBasisSymbol::GPlus(twice)
    }

    pub fn g_minus(twice: i64) -> Self {
        assert!(twice.rem_euclid(2) == 1, "G index must be a half-integer");
        NSBasisSymbol::GMinus(twice)
    }

    pub fn parity(self) -> Parity {
        match self {
            NSBasisSymbol::GPlus(_) | NSBasisSymbol::GMinus(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// All basis symbols with `|index| ≤ band`, `d` included.
    pub fn band(band: i64) -> Vec<Self> {
        let mut out = vec![NSBasisSymbol::Central];
        for m in -band..=band {
            out.push(NSBasisSymbol::L(m));
            out.push(NSBasisSymbol::J(m));
        }
        for t in (-2 * band + 1..=2 * band - 1).step_by(2) {
            out.push(NSBasisSymbol::GPlus(t));
            out.push(NSBasisSymbol::GMinus(t));
        }
        out
    }
}

fn half(t: i64) -> String {
    if t % 2 == 0 {
        format!("{}", t / 2)
    } else {
        format!("{t}/2")
    }
}

impl fmt::Display for NSBasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSBasisSymbol::Central => write!(f, "d"),
            NSBasisSymbol::L(m) => write!(f, "L({m})"),
            NSBasisSymbol::J(m) => write!(f, "J({m})"),
            NSBasisSymbol::GPlus(t) => write!(f, "G+({})", half(*t)),
            NSBasisSymbol::GMinus(t) => write!(f, "G-({})", half(*t)),
        }
    }
}

/// A finite linear combination of basis symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NSElement {
    terms: BTreeMap<NSBasisSymbol, GaussianRational>,
}

impl NSElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: NSBasisSymbol) -> Self {
        Self::term(s, GaussianRational::one())
    }

    pub fn term(s: NSBasisSymbol, c: GaussianRational) -> Self {
        let mut e = Self::zero();
        e.add_term(s, &c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NSBasisSymbol, GaussianRational)>) -> Self {
        let mut e = Self::zero();
        for (s, c) in terms {
            e.add_term(s, &c);
        }
        e
    }

    fn add_term(&mut self, s: NSBasisSymbol, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (NSBasisSymbol, &GaussianRational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn coeff(&self, s: NSBasisSymbol) -> GaussianRational {
        self.terms.get(&s).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(s, x)| (*s, x * c)))
    }

    /// `None` for mixed elements; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|s| s.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// The same element with the central term removed.
    pub fn without_central(&self) -> Self {
        let mut e = self.clone();
        e.terms.remove(&NSBasisSymbol::Central);
        e
    }

    pub fn bracket(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let c = x * y;
                for (s, v) in bracket_symbols(*a, *b).terms {
                    out.add_term(s, &(&v * &c));
                }
            }
        }
        out
    }
}

fn q(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

/// `[a, b]` on basis symbols.
pub fn bracket_symbols(a: NSBasisSymbol, b: NSBasisSymbol) -> NSElement {
    use NSBasisSymbol::*;
    match (a, b) {
        (Central, _) | (_, Central) => NSElement::zero(),
        (L(m), L(n)) => {
            let mut e = NSElement::term(L(m + n), q(m - n, 1));
            if m + n == 0 {
                e.add_term(Central, &q(m * m * m - m, 12));
            }
            e
        }
        (J(m), J(n)) => {
            if m + n == 0 {
                NSElement::term(Central, q(m, 3))
            } else {
                NSElement::zero()
            }
        }
        (L(m), J(n)) => NSElement::term(J(m + n), q(-n, 1)),
        (J(_), L(_)) => -&bracket_symbols(b, a),
        // (m/2 − r) G_{m+r}
        (L(m), GPlus(t)) => NSElement::term(GPlus(2 * m + t), q(m - t, 2)),
        (L(m), GMinus(t)) => NSElement::term(GMinus(2 * m + t), q(m - t, 2)),
        (J(m), GPlus(t)) => NSElement::basis(GPlus(2 * m + t)),
        (J(m), GMinus(t)) => NSElement::term(GMinus(2 * m + t), q(-1, 1)),
        (GPlus(_) | GMinus(_), L(_) | J(_)) => -&bracket_symbols(b, a),
        (GPlus(_), GPlus(_)) | (GMinus(_), GMinus(_)) => NSElement::zero(),
        // 2L_{r+s} + (r − s)J_{r+s} + ⅓(r² − ¼)δ_{r+s,0} d
        (GPlus(t), GMinus(u)) => {
            let k = (t + u) / 2;
            let mut e = NSElement::term(L(k), q(2, 1));
            e.add_term(J(k), &q(t - u, 2));
            if k == 0 {
                e.add_term(Central, &q(t * t - 1, 12));
            }
            e
        }
        (GMinus(_), GPlus(_)) => bracket_symbols(b, a),
    }
}

/// `[u, v]`, bilinear.
pub fn ns_bracket(u: &NSElement, v: &NSElement) -> NSElement {
    u.bracket(v)
}

/// A triple violating super-Jacobi, with the nonzero cyclic sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: [NSBasisSymbol; 3],
    pub sum: NSElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub band: i64,
    pub triples: usize,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `(−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]]`.
pub fn jacobi_sum(a: NSBasisSymbol, b: NSBasisSymbol, c: NSBasisSymbol) -> NSElement {
    let term = |x: NSBasisSymbol, y: NSBasisSymbol, z: NSBasisSymbol| {
        let inner = bracket_symbols(y, z);
        let t = NSElement::basis(x).bracket(&inner);
        if x.parity().sign_flip(z.parity()) {
            -&t
        } else {
            t
        }
    };
    &(&term(a, b, c) + &term(b, c, a)) + &term(c, a, b)
}

/// Super-Jacobi on every basis triple with indices in `[−band, band]`.
pub fn ns_jacobi_check(band: i64, exec: Exec) -> JacobiReport {
    let symbols = NSBasisSymbol::band(band);
    let firsts: Vec<NSBasisSymbol> = symbols.clone();
    let per_first = exec.map(&firsts, |&a| {
        let mut bad = Vec::new();
        for &b in &symbols {
            for &c in &symbols {
                let sum = jacobi_sum(a, b, c);
                if !sum.is_zero() {
                    bad.push(JacobiViolation { triple: [a, b, c], sum });
                }
            }
        }
        bad
    });
    JacobiReport {
        band,
        triples: symbols.len().pow(3),
        violations: per_first.into_iter().flatten().collect(),
    }
}

impl<'a> Add<&'a NSElement> for &'a NSElement {
    type Output = NSElement;
    fn add(self, o: &NSElement) -> NSElement {
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(*s, c);
        }
        out
    }
}

impl<'a> Sub<&'a NSElement> for &'a NSElement {
    type Output = NSElement;
    fn sub(self, o: &NSElement) -> NSElement {
        self + &-o
    }
}

impl Neg for &NSElement {
    type Output = NSElement;
    fn neg(self) -> NSElement {
        NSElement { terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect() }
    }
}

impl fmt::Display for NSElement {
    /// `2*L(0) + J(0)`; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            write_signed_term(f, i == 0, c, &s.to_string())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::NSBasisSymbol::*;
    use super::*;

    fn e(terms: &[(NSBasisSymbol, i64, i64)]) -> NSElement {
        NSElement::from_terms(terms.iter().map(|&(s, a, b)| (s, q(a, b))))
    }

    #[test]
    fn displayed_brackets() {
        let b = |x, y| bracket_symbols(x, y);
        assert_eq!(b(GPlus(1), GMinus(-1)), e(&[(L(0), 2, 1), (J(0), 1, 1)]));
        assert_eq!(b(L(2), L(-2)), e(&[(L(0), 4, 1), (Central, 1, 2)]));
        assert_eq!(b(GPlus(1), GPlus(3)), NSElement::zero());
        assert_eq!(b(J(1), J(-1)), e(&[(Central, 1, 3)]));
        assert_eq!(b(L(-1), GMinus(3)), e(&[(GMinus(1), -2, 1)]));
    }

    #[test]
    fn jacobi_small_cases() {
        assert!(jacobi_sum(L(1), L(-1), L(0)).is_zero());
        assert!(jacobi_sum(GPlus(1), GMinus(-1), J(0)).is_zero());
        let r = ns_jacobi_check(2, Exec::Sequential);
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn display() {
        assert_eq!(e(&[(L(0), 2, 1), (J(0), 1, 1)]).to_string(), "2*L(0) + J(0)");
        assert_eq!(NSElement::basis(GPlus(-1)).to_string(), "G+(-1/2)");
        assert_eq!(e(&[(Central, -1, 2)]).to_string(), "-1/2*d");
    }
}
