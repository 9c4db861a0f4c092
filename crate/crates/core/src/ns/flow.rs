use num_traits::Zero;

use super::rep::rep_element;
use super::{g_n_even_basis, g_n_odd_basis, NSBasisSymbol, NSElement, NsError};
use crate::gaussian::GaussianRational;
use crate::grassmann::{Parity, Supernumber};
use crate::spheres::{group_action, odd_translation, GroupElement};
use crate::superconformal::SuperMap;
use crate::superfield::{OddVar, RationalSuperfunction, SuperPolynomial, ThetaMono};

/// `exp(−p·X)·(x, φ⁺, φ⁻)`; `exact` is false when a series with a
/// body-nonzero parameter was truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub coords: [SuperPolynomial; 3],
    pub exact: bool,
}

impl Flow {
    pub fn to_super_map(&self) -> SuperMap {
        let r = |p: &SuperPolynomial| RationalSuperfunction::from_poly(p.clone());
        SuperMap { z: r(&self.coords[0]), theta_plus: r(&self.coords[1]), theta_minus: r(&self.coords[2]) }
    }
}

fn coordinates(generators: usize) -> [SuperPolynomial; 3] {
    [
        SuperPolynomial::z_pow(generators, 2, 1),
        SuperPolynomial::theta(generators, 2, OddVar::Plus),
        SuperPolynomial::theta(generators, 2, OddVar::Minus),
    ]
}

/// Coefficients of `pᵏ` in `exp(−p·X)·(x, φ⁺, φ⁻)` for even `X` and a
/// formal even parameter `p`, `k = 0..=order`.
pub fn flow_series(x: &NSElement, order: usize, generators: usize) -> Result<Vec<[SuperPolynomial; 3]>, NsError> {
    let field = rep_element(x, generators).ok_or(NsError::NotHomogeneous)?;
    if field.parity != Parity::Even {
        return Err(NsError::ParityMismatch);
    }
    let mut out = vec![coordinates(generators)];
    for k in 1..=order {
        let c = GaussianRational::from_ratio(-1, k as i64);
        let prev = &out[k - 1];
        out.push([0, 1, 2].map(|i| field.apply(&prev[i]).scale(&c)));
    }
    Ok(out)
}

/// `exp(−param·X)·(x, φ⁺, φ⁻)`. Odd `X` needs an odd parameter and the
/// result is `u − ξX(u)`; even `X` sums the series until it terminates or
/// reaches `order`.
pub fn ns_flow(x: &NSElement, param: &Supernumber, order: usize) -> Result<Flow, NsError> {
    let l = param.generators();
    let field = rep_element(x, l).ok_or(NsError::NotHomogeneous)?;
    if !param.is_zero() && param.parity() != Some(field.parity) {
        return Err(NsError::ParityMismatch);
    }
    let coords = coordinates(l);
    let left = |c: &Supernumber, p: &SuperPolynomial| &SuperPolynomial::constant(c.clone(), 2) * p;
    if field.parity == Parity::Odd {
        let out = coords.clone().map(|u| &u - &left(param, &field.apply(&u)));
        return Ok(Flow { coords: out, exact: true });
    }
    let mut acc = coords.clone();
    let mut term = coords;
    let mut power = Supernumber::one(l);
    let mut exact = false;
    for k in 1.. {
        let c = GaussianRational::from_ratio(-1, k as i64);
        term = term.map(|t| field.apply(&t).scale(&c));
        power = &power * param;
        if power.is_zero() || term.iter().all(SuperPolynomial::is_zero) {
            exact = true;
            break;
        }
        if k > order {
            break;
        }
        for i in 0..3 {
            acc[i] = &acc[i] + &left(&power, &term[i]);
        }
    }
    Ok(Flow { coords: acc, exact })
}

fn binomial(a: i64, k: usize) -> GaussianRational {
    let mut c = GaussianRational::from(1);
    for i in 0..k as i64 {
        c = &c * &GaussianRational::from_ratio(a - i, i + 1);
    }
    c
}

fn factorial_inv(k: usize, rate: &GaussianRational) -> GaussianRational {
    let mut c = GaussianRational::from(1);
    for i in 1..=k as i64 {
        c = &c * &(rate * &GaussianRational::from_ratio(1, i));
    }
    c
}

fn scalar_poly(l: usize, m: ThetaMono, k: i32, c: GaussianRational) -> SuperPolynomial {
    SuperPolynomial::term(m, k, Supernumber::scalar(l, c), 2)
}

/// Closed-form coefficient of `yᵏ` for the displayed even flows.
fn closed_coefficient(which: usize, n: i64, k: usize, l: usize) -> [SuperPolynomial; 3] {
    let q = GaussianRational::from_ratio;
    let one = || GaussianRational::from(1);
    let e = ThetaMono::EMPTY;
    let (p, m) = (ThetaMono::PLUS, ThetaMono::MINUS);
    let exp_series = |rx: GaussianRational, rp: GaussianRational, rm: GaussianRational| {
        [
            scalar_poly(l, e, 1, factorial_inv(k, &rx)),
            scalar_poly(l, p, 0, factorial_inv(k, &rp)),
            scalar_poly(l, m, 0, factorial_inv(k, &rm)),
        ]
    };
    match which {
        // (x + y, φ⁺, φ⁻)
        0 => match k {
            0 => coordinates(l),
            1 => [scalar_poly(l, e, 0, one()), SuperPolynomial::zero(l, 2), SuperPolynomial::zero(l, 2)],
            _ => [0, 1, 2].map(|_| SuperPolynomial::zero(l, 2)),
        },
        // (eʸx, e^{y/2}φ⁺, e^{y/2}φ⁻)
        1 => exp_series(one(), q(1, 2), q(1, 2)),
        // (x, eʸφ⁺, e^{−y}φ⁻)
        2 => exp_series(GaussianRational::zero(), one(), q(-1, 1)),
        // (x/(1−yx), φ⁺(1−yx)^{n−1}, φ⁻(1−yx)^{−n−1})
        3 => {
            let sign = if k % 2 == 0 { one() } else { q(-1, 1) };
            [
                scalar_poly(l, e, k as i32 + 1, one()),
                scalar_poly(l, p, k as i32, &binomial(n - 1, k) * &sign),
                scalar_poly(l, m, k as i32, &binomial(-n - 1, k) * &sign),
            ]
        }
        // (eʸx, e^{y(1−n)/2}φ⁺, e^{y(1+n)/2}φ⁻)
        _ => exp_series(one(), q(1 - n, 2), q(1 + n, 2)),
    }
}

fn even_flow_generators(n: i64) -> [(String, NSElement); 5] {
    use NSBasisSymbol::*;
    let even = g_n_even_basis(n);
    [
        ("L(-1)".to_string(), NSElement::basis(L(-1))),
        ("L(0)".to_string(), NSElement::basis(L(0))),
        ("J(0)".to_string(), NSElement::basis(J(0))),
        (format!("L(1) - {n}J(1)"), even[2].clone()),
        (format!("L(0) - {n}/2 J(0)"), even[1].clone()),
    ]
}

fn g_flow_closed(l: usize, plus: bool, k: i64, xi: &Supernumber) -> [SuperPolynomial; 3] {
    let x = |m: ThetaMono, e: i64, c: Supernumber| SuperPolynomial::term(m, e as i32, c, 2);
    let one = Supernumber::one(l);
    let (own, other) = if plus { (ThetaMono::PLUS, ThetaMono::MINUS) } else { (ThetaMono::MINUS, ThetaMono::PLUS) };
    let kk = Supernumber::from_int(l, if plus { k } else { -k });
    let mut own_coord = &x(own, 0, one.clone()) + &x(ThetaMono::EMPTY, k, xi.clone());
    if k > 0 {
        own_coord = &own_coord + &x(ThetaMono::BOTH, k - 1, &kk * xi);
    }
    let z = &x(ThetaMono::EMPTY, 1, one.clone()) + &x(other, k, xi.clone());
    let untouched = x(other, 0, one);
    if plus {
        [z, own_coord, untouched]
    } else {
        [z, untouched, own_coord]
    }
}

/// Every displayed flow: the even ones as formal series to `order`, the
/// `x/(1−yx)` family also summed for the nilpotent `y`, and the odd ones
/// exactly for `ξ` and `k ≤ max_k`.
pub fn displayed_flows(
    n: i64,
    order: usize,
    y: &Supernumber,
    xi: &Supernumber,
    max_k: i64,
) -> Result<Vec<(String, bool)>, NsError> {
    let l = y.generators();
    let mut out = Vec::new();
    for (which, (name, x)) in even_flow_generators(n).into_iter().enumerate() {
        let series = flow_series(&x, order, l)?;
        let ok = series.iter().enumerate().all(|(k, c)| *c == closed_coefficient(which, n, k, l));
        out.push((format!("exp(-y {name}) to order {order}"), ok));
    }
    {
        let even = &g_n_even_basis(n)[2];
        let flow = ns_flow(even, y, order)?;
        let r = |p: SuperPolynomial| RationalSuperfunction::from_poly(p);
        let z = RationalSuperfunction::z(l, 2);
        let one_minus = &RationalSuperfunction::one(l, 2) - &(&RationalSuperfunction::constant(y.clone(), 2) * &z);
        let inv = one_minus.recip()?;
        let pw = |k: i64| if k >= 0 { one_minus.pow(k as u32) } else { inv.pow((-k) as u32) };
        let expected = [
            &z * &inv,
            &RationalSuperfunction::theta(l, 2, OddVar::Plus) * &pw(n - 1),
            &RationalSuperfunction::theta(l, 2, OddVar::Minus) * &pw(-n - 1),
        ];
        let got = flow.coords.clone().map(r);
        out.push((format!("exp(-y(L(1) - {n}J(1))) = (x/(1-yx), ...) for nilpotent y"), flow.exact && got == expected));
    }
    for plus in [true, false] {
        for k in 0..=max_k {
            let sym = if plus { NSBasisSymbol::GPlus(2 * k - 1) } else { NSBasisSymbol::GMinus(2 * k - 1) };
            let flow = ns_flow(&NSElement::basis(sym), xi, order)?;
            out.push((format!("exp(-xi {sym})"), flow.coords == g_flow_closed(l, plus, k, xi)));
        }
    }
    Ok(out)
}

fn same(flow: &Flow, group: &SuperMap) -> bool {
    flow.exact && flow.to_super_map() == *group
}

/// Flows of `𝔤ₙ` elements with nilpotent parameters against the
/// corresponding group elements and odd translations.
pub fn flow_vs_group(n: i64, y: &Supernumber, xi: &Supernumber, order: usize) -> Result<Vec<(String, bool)>, NsError> {
    let l = y.generators();
    let ni = n as i32;
    let one = Supernumber::one(l);
    let zero = Supernumber::zero(l);
    let even = g_n_even_basis(n);
    let a = Supernumber::exp_nilpotent(&y.scale(&GaussianRational::from_ratio(1, 2))).ok_or(NsError::ParityMismatch)?;
    let ey = Supernumber::exp_nilpotent(y).ok_or(NsError::ParityMismatch)?;
    let ainv = a.inv().expect("exp has body one");
    let act = |g: GroupElement| -> Result<SuperMap, NsError> {
        Ok(group_action(ni, &g)?.southern.expand().map_err(crate::spheres::SphereError::from)?)
    };
    let mut out = Vec::new();
    let cases: [(String, &NSElement, GroupElement); 4] = [
        (
            "L(-1) vs (1, y, 0, 1; 1)".into(),
            &even[0],
            GroupElement { a: one.clone(), b: y.clone(), c: zero.clone(), d: one.clone(), eps: one.clone() },
        ),
        (
            format!("L(0) - {n}/2 J(0) vs (a, 0, 0, 1/a; 1), a = exp(y/2)"),
            &even[1],
            GroupElement { a: a.clone(), b: zero.clone(), c: zero.clone(), d: ainv, eps: one.clone() },
        ),
        (
            format!("L(1) - {n}J(1) vs (1, 0, -y, 1; 1)"),
            &even[2],
            GroupElement { a: one.clone(), b: zero.clone(), c: -y, d: one.clone(), eps: one.clone() },
        ),
        (
            "J(0) vs (1, 0, 0, 1; exp(y))".into(),
            &even[3],
            GroupElement { a: one.clone(), b: zero.clone(), c: zero.clone(), d: one.clone(), eps: ey },
        ),
    ];
    for (name, x, g) in cases {
        out.push((name, same(&ns_flow(x, y, order)?, &act(g)?)));
    }
    if n.abs() >= 2 {
        let odd = g_n_odd_basis(n);
        let len = odd.len();
        for (k, sym) in odd.into_iter().enumerate() {
            let mut v = vec![zero.clone(); len];
            v[len - 1 - k] = xi.clone();
            let t = odd_translation(ni, &v)?.southern.expand().map_err(crate::spheres::SphereError::from)?;
            let flow = ns_flow(&NSElement::basis(sym), xi, order)?;
            out.push((format!("{sym} vs odd translation at degree {k}"), same(&flow, &t)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 5;

    #[test]
    fn translation_and_odd_flow() {
        let y = &Supernumber::generator(L, 1) * &Supernumber::generator(L, 2);
        let f = ns_flow(&NSElement::basis(NSBasisSymbol::L(-1)), &y, 8).unwrap();
        assert!(f.exact);
        let q = |s: &str| crate::text::parse_superpolynomial(s, L, 2).unwrap();
        assert_eq!(f.coords, [q("z + z[1]z[2]"), q("tp"), q("tm")]);
        let xi = Supernumber::generator(L, 3);
        let f = ns_flow(&NSElement::basis(NSBasisSymbol::GPlus(-1)), &xi, 8).unwrap();
        assert_eq!(f.coords, [q("z + tm*z[3]"), q("z[3] + tp"), q("tm")]);
        assert_eq!(
            ns_flow(&NSElement::basis(NSBasisSymbol::GPlus(-1)), &y, 8),
            Err(NsError::ParityMismatch)
        );
    }

    #[test]
    fn all_displayed_flows() {
        let y = &Supernumber::generator(L, 1) * &Supernumber::generator(L, 2);
        let xi = Supernumber::generator(L, 3);
        for n in -3..=3 {
            for (name, ok) in displayed_flows(n, 8, &y, &xi, 3).unwrap() {
                assert!(ok, "n={n}: {name}");
            }
            for (name, ok) in flow_vs_group(n, &y, &xi, 8).unwrap() {
                assert!(ok, "n={n}: {name}");
            }
        }
    }
}
