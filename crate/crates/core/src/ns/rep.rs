use std::fmt;

use super::{NSBasisSymbol, NSElement};
use crate::gaussian::GaussianRational;
use crate::grassmann::{Parity, Supernumber};
use crate::superfield::{OddVar, SuperPolynomial, ThetaMono};

/// `a ∂/∂x + b⁺ ∂/∂φ⁺ + b⁻ ∂/∂φ⁻` on Laurent superpolynomials in
/// `(x, φ⁺, φ⁻)`, stored as `z, θ⁺, θ⁻`. Odd derivatives act from the left.
#[derive(Clone, PartialEq, Eq)]
pub struct DerivationField {
    pub parity: Parity,
    pub dx: SuperPolynomial,
    pub d_plus: SuperPolynomial,
    pub d_minus: SuperPolynomial,
}

impl DerivationField {
    pub fn zero(parity: Parity, generators: usize) -> Self {
        let z = SuperPolynomial::zero(generators, 2);
        Self { parity, dx: z.clone(), d_plus: z.clone(), d_minus: z }
    }

    pub fn generators(&self) -> usize {
        self.dx.generators()
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.d_plus.is_zero() && self.d_minus.is_zero()
    }

    pub fn extend(&self, generators: usize) -> Self {
        let e = |p: &SuperPolynomial| p.extend(generators).expect("generator count can only grow");
        Self { parity: self.parity, dx: e(&self.dx), d_plus: e(&self.d_plus), d_minus: e(&self.d_minus) }
    }

    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let a = &self.dx * &f.diff_z();
        let b = &self.d_plus * &f.diff_theta(OddVar::Plus);
        let c = &self.d_minus * &f.diff_theta(OddVar::Minus);
        &(&a + &b) + &c
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self {
            parity: self.parity,
            dx: self.dx.scale(c),
            d_plus: self.d_plus.scale(c),
            d_minus: self.d_minus.scale(c),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.parity, o.parity, "adding derivations of different parity");
        Self {
            parity: self.parity,
            dx: &self.dx + &o.dx,
            d_plus: &self.d_plus + &o.d_plus,
            d_minus: &self.d_minus + &o.d_minus,
        }
    }

    /// `[X, Y] = XY − (−1)^{|X||Y|} YX`, evaluated on `x, φ⁺, φ⁻`.
    pub fn bracket(&self, o: &Self) -> Self {
        let flip = self.parity.sign_flip(o.parity);
        let on = |u: &SuperPolynomial, v: &SuperPolynomial| {
            let xy = self.apply(v);
            let yx = o.apply(u);
            if flip {
                &xy + &yx
            } else {
                &xy - &yx
            }
        };
        Self {
            parity: self.parity + o.parity,
            dx: on(&self.dx, &o.dx),
            d_plus: on(&self.d_plus, &o.d_plus),
            d_minus: on(&self.d_minus, &o.d_minus),
        }
    }
}

impl fmt::Display for DerivationField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})d/dx + ({})d/dp+ + ({})d/dp-", self.dx, self.d_plus, self.d_minus)
    }
}

impl fmt::Debug for DerivationField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn mono(generators: usize, m: ThetaMono, k: i64, c: GaussianRational) -> SuperPolynomial {
    SuperPolynomial::term(m, k as i32, Supernumber::scalar(generators, c), 2)
}

/// The vector field of a basis symbol over `Λ_generators`; `d ↦ 0`.
pub fn rep_symbol(s: NSBasisSymbol, generators: usize) -> DerivationField {
    let l = generators;
    let q = GaussianRational::from_ratio;
    let mut x = DerivationField::zero(s.parity(), l);
    match s {
        NSBasisSymbol::Central => {}
        // −(x^{n+1}∂x + ((n+1)/2)xⁿ(φ⁺∂φ⁺ + φ⁻∂φ⁻))
        NSBasisSymbol::L(n) => {
            x.dx = mono(l, ThetaMono::EMPTY, n + 1, q(-1, 1));
            x.d_plus = mono(l, ThetaMono::PLUS, n, q(-(n + 1), 2));
            x.d_minus = mono(l, ThetaMono::MINUS, n, q(-(n + 1), 2));
        }
        // −xⁿ(φ⁺∂φ⁺ − φ⁻∂φ⁻)
        NSBasisSymbol::J(n) => {
            x.d_plus = mono(l, ThetaMono::PLUS, n, q(-1, 1));
            x.d_minus = mono(l, ThetaMono::MINUS, n, q(1, 1));
        }
        // G±_{n−½} = −(xⁿ(∂φ± − φ∓∂x) ± n x^{n−1}φ⁺φ⁻∂φ±)
        NSBasisSymbol::GPlus(t) | NSBasisSymbol::GMinus(t) => {
            let n = (t + 1) / 2;
            let plus = matches!(s, NSBasisSymbol::GPlus(_));
            let (other, sign) = if plus { (ThetaMono::MINUS, -1) } else { (ThetaMono::PLUS, 1) };
            x.dx = mono(l, other, n, q(1, 1));
            let d = &mono(l, ThetaMono::EMPTY, n, q(-1, 1)) + &mono(l, ThetaMono::BOTH, n - 1, q(sign * n, 1));
            if plus {
                x.d_plus = d;
            } else {
                x.d_minus = d;
            }
        }
    }
    x
}

/// `ns_rep` over `ℂ` (no Grassmann generators).
pub fn ns_rep(s: NSBasisSymbol) -> DerivationField {
    rep_symbol(s, 0)
}

/// Linear extension to homogeneous elements; `None` for mixed parity.
pub fn rep_element(e: &NSElement, generators: usize) -> Option<DerivationField> {
    Some(rep_with_parity(e, e.parity()?, generators))
}

fn rep_with_parity(e: &NSElement, parity: Parity, generators: usize) -> DerivationField {
    let mut acc = DerivationField::zero(parity, generators);
    for (s, c) in e.terms() {
        if s != NSBasisSymbol::Central {
            acc = acc.add(&rep_symbol(s, generators).scale(c));
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepReport {
    pub pair: (NSBasisSymbol, NSBasisSymbol),
    pub commutator: DerivationField,
    pub image: DerivationField,
}

impl RepReport {
    pub fn matches(&self) -> bool {
        self.commutator == self.image
    }
}

/// `[rep s1, rep s2]` against `rep([s1, s2])` with `d = 0`.
pub fn ns_rep_bracket_check(s1: NSBasisSymbol, s2: NSBasisSymbol) -> RepReport {
    let commutator = ns_rep(s1).bracket(&ns_rep(s2));
    let bracket = super::bracket_symbols(s1, s2).without_central();
    let image = rep_with_parity(&bracket, s1.parity() + s2.parity(), 0);
    RepReport { pair: (s1, s2), commutator, image }
}

#[cfg(test)]
mod tests {
    use super::NSBasisSymbol::*;
    use super::*;
    use crate::text::parse_superpolynomial;

    fn p(s: &str) -> SuperPolynomial {
        parse_superpolynomial(s, 0, 2).unwrap()
    }

    #[test]
    fn displayed_fields() {
        let j0 = ns_rep(J(0));
        assert_eq!((j0.dx.clone(), j0.d_plus.clone(), j0.d_minus.clone()), (p("0"), p("-tp"), p("tm")));
        let g = ns_rep(GPlus(-1));
        assert_eq!((g.dx.clone(), g.d_plus.clone(), g.d_minus.clone()), (p("tm"), p("-1"), p("0")));
        assert!(ns_rep(Central).is_zero());
    }

    #[test]
    fn representation_on_examples() {
        for (a, b) in [(L(1), L(-1)), (GPlus(1), GMinus(-1)), (L(2), L(-2)), (GMinus(3), GPlus(-3)), (J(2), GPlus(1))] {
            let r = ns_rep_bracket_check(a, b);
            assert!(r.matches(), "{a} {b}: {} vs {}", r.commutator, r.image);
        }
    }
}
