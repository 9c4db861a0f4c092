use std::collections::BTreeSet;

use super::{NSBasisSymbol, NSElement};
use crate::gaussian::GaussianRational;
use crate::linalg::Span;

fn q(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

/// `L₋₁, L₀ − (n/2)J₀, L₁ − nJ₁, J₀`.
pub fn g_n_even_basis(n: i64) -> Vec<NSElement> {
    use NSBasisSymbol::*;
    vec![
        NSElement::basis(L(-1)),
        NSElement::from_terms([(L(0), q(1, 1)), (J(0), q(-n, 2))]),
        NSElement::from_terms([(L(1), q(1, 1)), (J(1), q(-n, 1))]),
        NSElement::basis(J(0)),
    ]
}

/// Odd basis symbols of `𝔤ₙ`, ordered by index.
pub fn g_n_odd_basis(n: i64) -> Vec<NSBasisSymbol> {
    use NSBasisSymbol::*;
    match n {
        0 => vec![GPlus(-1), GPlus(1), GMinus(-1), GMinus(1)],
        1 => vec![GPlus(-1), GMinus(-1), GMinus(1), GMinus(3)],
        -1 => vec![GPlus(-1), GPlus(1), GPlus(3), GMinus(-1)],
        n if n >= 2 => (0..=n + 1).map(|k| GMinus(2 * k - 1)).collect(),
        n => (0..=1 - n).map(|k| GPlus(2 * k - 1)).collect(),
    }
}

pub fn g_n_basis(n: i64) -> Vec<NSElement> {
    let mut b = g_n_even_basis(n);
    b.extend(g_n_odd_basis(n).into_iter().map(NSElement::basis));
    b
}

/// The displayed `σₙ` action of the `i`-th even basis element on the odd
/// basis element `G∓_{k−½}`, `|n| ≥ 2` (`G⁻` for `n ≥ 2`, `G⁺` for `n ≤ −2`).
pub fn sigma_n(n: i64, i: usize, k: i64) -> NSElement {
    assert!(n.abs() >= 2, "σₙ is defined for |n| ≥ 2");
    let m = n.abs();
    let g = |t: i64| {
        if n > 0 {
            NSBasisSymbol::GMinus(t)
        } else {
            NSBasisSymbol::GPlus(t)
        }
    };
    match i {
        0 => NSElement::term(g(2 * k - 3), q(-k, 1)),
        1 => NSElement::term(g(2 * k - 1), q(-2 * k + m + 1, 2)),
        2 => NSElement::term(g(2 * k + 1), q(-k + m + 1, 1)),
        3 => NSElement::term(g(2 * k - 1), q(-n.signum(), 1)),
        _ => panic!("even basis has four elements"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub n: i64,
    pub even_dim: usize,
    pub odd_dim: usize,
    pub independent: bool,
    /// `(i, j, coordinates of [b_i, b_j])` for `i ≤ j`.
    pub table: Vec<(usize, usize, Vec<GaussianRational>)>,
    /// Basis pairs whose bracket leaves the span.
    pub not_closed: Vec<(usize, usize, NSElement)>,
    /// `(i, k, displayed, computed)` for `σₙ` disagreements.
    pub sigma_mismatches: Vec<(usize, i64, NSElement, NSElement)>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.independent && self.not_closed.is_empty() && self.sigma_mismatches.is_empty()
    }
}

fn coordinates(symbols: &[NSBasisSymbol], e: &NSElement) -> Vec<GaussianRational> {
    symbols.iter().map(|s| e.coeff(*s)).collect()
}

pub fn g_n_closure_check(n: i64) -> ClosureReport {
    let basis = g_n_basis(n);
    let mut products = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            products.push((i, j, basis[i].bracket(&basis[j])));
        }
    }
    let symbols: Vec<NSBasisSymbol> = basis
        .iter()
        .chain(products.iter().map(|(_, _, e)| e))
        .flat_map(|e| e.terms().map(|(s, _)| s))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let span = Span::new(&basis.iter().map(|b| coordinates(&symbols, b)).collect::<Vec<_>>());
    let mut table = Vec::new();
    let mut not_closed = Vec::new();
    for (i, j, e) in products {
        match span.solve(&coordinates(&symbols, &e)) {
            Some(c) => table.push((i, j, c)),
            None => not_closed.push((i, j, e)),
        }
    }
    let mut sigma_mismatches = Vec::new();
    if n.abs() >= 2 {
        let even = g_n_even_basis(n);
        for (i, u) in even.iter().enumerate() {
            for k in 0..=n.abs() + 1 {
                let g = g_n_odd_basis(n)[k as usize];
                let computed = u.bracket(&NSElement::basis(g));
                let displayed = sigma_n(n, i, k);
                if computed != displayed {
                    sigma_mismatches.push((i, k, displayed, computed));
                }
            }
        }
    }
    ClosureReport {
        n,
        even_dim: 4,
        odd_dim: g_n_odd_basis(n).len(),
        independent: span.is_independent(),
        table,
        not_closed,
        sigma_mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::NSBasisSymbol::*;
    use super::*;

    #[test]
    fn bases() {
        assert_eq!(g_n_odd_basis(0), vec![GPlus(-1), GPlus(1), GMinus(-1), GMinus(1)]);
        assert_eq!(g_n_odd_basis(5).len(), 7);
        assert_eq!(g_n_odd_basis(5).last(), Some(&GMinus(11)));
        assert!(g_n_odd_basis(-1).contains(&GPlus(3)));
        for n in -6..=6i64 {
            let expected = if n.abs() <= 2 { 4 } else { n.unsigned_abs() as usize + 2 };
            assert_eq!(g_n_odd_basis(n).len(), expected, "n={n}");
        }
    }

    #[test]
    fn closure() {
        let r = g_n_closure_check(0);
        assert!(r.passed());
        assert_eq!(r.table.len(), 36);
        for n in -6..=6 {
            let r = g_n_closure_check(n);
            assert!(r.passed(), "n={n}: {:?} {:?}", r.not_closed, r.sigma_mismatches);
        }
    }

    #[test]
    fn sigma_examples() {
        let l1 = &g_n_even_basis(3)[2];
        assert!(l1.bracket(&NSElement::basis(GMinus(7))).is_zero());
        let j0 = NSElement::basis(J(0));
        for k in 0..=4 {
            assert_eq!(j0.bracket(&NSElement::basis(GMinus(2 * k - 1))), NSElement::term(GMinus(2 * k - 1), q(-1, 1)));
        }
    }
}
