//! Random instances for property checks. Coefficients are small Gaussian
//! integers; odd and even parameters live in `Λ_{L−2}`.

use rand::Rng;

use crate::gaussian::GaussianRational;
use crate::grassmann::{MultiIndex, Parity, Supernumber};
use crate::spheres::{normalize_determinant, AutomorphismParams, GroupElement, Regime};
use crate::superconformal::{N1SuperanalyticMap, SuperconformalMap};
use crate::superfield::{OddVar, RationalSuperfunction, SuperPolynomial, ThetaMono};

fn small_scalar<R: Rng>(rng: &mut R) -> GaussianRational {
    loop {
        let re = rng.random_range(-3i64..=3);
        let im = if rng.random_bool(0.2) { rng.random_range(-2i64..=2) } else { 0 };
        let c = GaussianRational::from_ints(re, im);
        if !num_traits::Zero::is_zero(&c) {
            return c;
        }
    }
}

/// Sparse random element of `Λ_bound ⊂ Λ_L` of the given parity with zero body.
pub fn soul<R: Rng>(rng: &mut R, generators: usize, bound: usize, parity: Parity) -> Supernumber {
    let mut x = Supernumber::zero(generators);
    if bound == 0 {
        return x;
    }
    let terms = rng.random_range(0..=2);
    for _ in 0..terms {
        let mut labels: Vec<usize> = Vec::new();
        let len = match parity {
            Parity::Odd => *[1, 1, 3].get(rng.random_range(0..3)).unwrap(),
            Parity::Even => 2,
        };
        if len > bound {
            continue;
        }
        while labels.len() < len {
            let j = rng.random_range(1..=bound);
            if !labels.contains(&j) {
                labels.push(j);
            }
        }
        labels.sort_unstable();
        let idx = MultiIndex::from_labels(&labels).expect("sorted labels");
        x = &x + &Supernumber::monomial(generators, idx, small_scalar(rng));
    }
    x
}

pub fn odd<R: Rng>(rng: &mut R, generators: usize, bound: usize) -> Supernumber {
    soul(rng, generators, bound, Parity::Odd)
}

/// Even element with nonzero body.
pub fn even_unit<R: Rng>(rng: &mut R, generators: usize, bound: usize) -> Supernumber {
    &Supernumber::scalar(generators, small_scalar(rng)) + &soul(rng, generators, bound, Parity::Even)
}

/// `(a, b, c, d)` with `ad − bc = 1`, body in `SL(2, ℤ[i])`, soul perturbed.
pub fn sl2<R: Rng>(rng: &mut R, generators: usize, bound: usize) -> [Supernumber; 4] {
    let g = |v: i64| GaussianRational::from(v);
    let mut m = [g(1), g(0), g(0), g(1)];
    for _ in 0..rng.random_range(1..=3) {
        let k = g(rng.random_range(-2i64..=2));
        let e = match rng.random_range(0..4) {
            0 => [g(1), k, g(0), g(1)],
            1 => [g(1), g(0), k, g(1)],
            2 => [g(0), g(-1), g(1), g(0)],
            _ => [GaussianRational::i(), g(0), g(0), -GaussianRational::i()],
        };
        m = [
            &(&m[0] * &e[0]) + &(&m[1] * &e[2]),
            &(&m[0] * &e[1]) + &(&m[1] * &e[3]),
            &(&m[2] * &e[0]) + &(&m[3] * &e[2]),
            &(&m[2] * &e[1]) + &(&m[3] * &e[3]),
        ];
    }
    let abcd = m.map(|x| &Supernumber::scalar(generators, x) + &soul(rng, generators, bound, Parity::Even));
    normalize_determinant(abcd).expect("determinant body is one")
}

pub fn group_element<R: Rng>(rng: &mut R, generators: usize) -> GroupElement {
    let bound = generators - 2;
    let [a, b, c, d] = sl2(rng, generators, bound);
    GroupElement { a, b, c, d, eps: even_unit(rng, generators, bound) }
}

/// Valid automorphism parameters for `S²Ĉ(n)`.
pub fn params<R: Rng>(rng: &mut R, n: i32, generators: usize) -> AutomorphismParams {
    let bound = generators - 2;
    let mut p = AutomorphismParams::mobius(n, sl2(rng, generators, bound));
    let mut o = || odd(rng, generators, bound);
    match &mut p.regime {
        Regime::Zero { psi_plus, psi_minus, .. } => {
            *psi_plus = [o(), o()];
            *psi_minus = [o(), o()];
        }
        Regime::PlusOne { psi_plus0, psi_minus, .. } => {
            *psi_plus0 = o();
            *psi_minus = [o(), o(), o()];
        }
        Regime::MinusOne { psi_minus0, psi_plus, .. } => {
            *psi_minus0 = o();
            *psi_plus = [o(), o(), o()];
        }
        Regime::Positive { psi_minus, .. } => psi_minus.iter_mut().for_each(|x| *x = o()),
        Regime::Negative { psi_plus, .. } => psi_plus.iter_mut().for_each(|x| *x = o()),
    }
    let unit = even_unit(rng, generators, bound);
    match &mut p.regime {
        Regime::Zero { psi_plus, psi_minus, eps_plus, eps_minus } => {
            let rhs = &(&Supernumber::one(generators) - &(&psi_plus[1] * &psi_minus[0])) - &(&psi_minus[1] * &psi_plus[0]);
            *eps_minus = &rhs * &unit.inv().expect("unit");
            *eps_plus = unit;
        }
        Regime::PlusOne { eps, .. } | Regime::MinusOne { eps, .. } | Regime::Positive { eps, .. } | Regime::Negative { eps, .. } => {
            *eps = unit
        }
    }
    p
}

/// Odd coefficient vector for an odd translation of `S²Ĉ(n)`.
pub fn odd_vector<R: Rng>(rng: &mut R, n: i32, generators: usize) -> Vec<Supernumber> {
    (0..n.unsigned_abs() + 2).map(|_| odd(rng, generators, generators - 2)).collect()
}

/// Low-degree polynomial in `z` with coefficients of one parity; even
/// polynomials get a nonzero constant body when `unit` is set.
pub fn polynomial<R: Rng>(rng: &mut R, generators: usize, parity: Parity, max_deg: i32, unit: bool) -> RationalSuperfunction {
    let bound = generators - 2;
    let mut p = SuperPolynomial::zero(generators, 2);
    for k in 0..=max_deg {
        let mut c = soul(rng, generators, bound, parity);
        if parity == Parity::Even && (rng.random_bool(0.5) || (unit && k == 0)) {
            c = &c + &Supernumber::scalar(generators, small_scalar(rng));
        }
        p = &p + &SuperPolynomial::term(ThetaMono::EMPTY, k, c, 2);
    }
    RationalSuperfunction::from_poly(p)
}

/// Random N=1 superanalytic map with polynomial components, `g`
/// body-invertible and `f₁` with non-constant body.
pub fn n1_map<R: Rng>(rng: &mut R, generators: usize) -> N1SuperanalyticMap {
    let mut f1 = polynomial(rng, generators, Parity::Even, 2, false);
    if !f1.diff_z().has_nonzero_body() {
        let slope = RationalSuperfunction::scalar(generators, 2, small_scalar(rng));
        f1 = &f1 + &(&slope * &RationalSuperfunction::z(generators, 2));
    }
    let xi = polynomial(rng, generators, Parity::Odd, 1, false);
    let psi = polynomial(rng, generators, Parity::Odd, 1, false);
    let g = polynomial(rng, generators, Parity::Even, 0, true);
    N1SuperanalyticMap::new(f1, xi, psi, g)
}

/// Random superconformal map, built from a random N=1 map.
pub fn superconformal_map<R: Rng>(rng: &mut R, generators: usize) -> SuperconformalMap {
    n1_map(rng, generators).to_n2().expect("g has a unit body")
}

/// Random superconformal map whose body is affine, hence invertible; the
/// higher powers of `z` carry soul coefficients only.
pub fn invertible_map<R: Rng>(rng: &mut R, generators: usize) -> SuperconformalMap {
    let l = generators;
    let bound = l - 2;
    let mut f1 = RationalSuperfunction::from_poly(
        &SuperPolynomial::term(ThetaMono::EMPTY, 1, Supernumber::scalar(l, small_scalar(rng)), 2)
            + &SuperPolynomial::term(ThetaMono::EMPTY, 0, Supernumber::scalar(l, small_scalar(rng)), 2),
    );
    for k in 0..=2 {
        let c = soul(rng, l, bound, Parity::Even);
        f1 = &f1 + &RationalSuperfunction::from_poly(SuperPolynomial::term(ThetaMono::EMPTY, k, c, 2));
    }
    let xi = polynomial(rng, l, Parity::Odd, 1, false);
    let psi = polynomial(rng, l, Parity::Odd, 1, false);
    let g = polynomial(rng, l, Parity::Even, 0, true);
    N1SuperanalyticMap::new(f1, xi, psi, g).to_n2().expect("g has a unit body")
}

/// Random function of two odd variables, parity-homogeneous, possibly
/// with a scalar denominator.
pub fn function<R: Rng>(rng: &mut R, generators: usize, parity: Parity) -> RationalSuperfunction {
    let l = generators;
    let mut acc = RationalSuperfunction::zero(l, 2);
    for mono in ThetaMono::all(2) {
        let coeff_parity = if mono.parity() == parity { Parity::Even } else { Parity::Odd };
        let comp = polynomial(rng, l, coeff_parity, 2, false);
        let mut t = RationalSuperfunction::one(l, 2);
        for var in [OddVar::Plus, OddVar::Minus] {
            if mono.contains(var) {
                t = &t * &RationalSuperfunction::theta(l, 2, var);
            }
        }
        acc = &acc + &(&t * &comp);
    }
    if rng.random_bool(0.4) {
        let root = GaussianRational::from(rng.random_range(1i64..=3));
        let den = crate::scalar_poly::ScalarPoly::linear_root(&root);
        acc = RationalSuperfunction::new(acc.numerator().clone(), den).expect("nonzero");
    }
    acc
}

fn random_index<R: Rng>(rng: &mut R, generators: usize, parity: Option<Parity>) -> MultiIndex {
    loop {
        let bits: u32 = (0..generators).filter(|_| rng.random_bool(0.35)).fold(0, |acc, b| acc | 1 << b);
        let idx = MultiIndex::from_bits(bits);
        if parity.is_none_or(|p| idx.parity() == p) {
            return idx;
        }
    }
}

/// Up to `max_terms` random monomials of `Λ_L`; with `unit` the body is nonzero.
pub fn supernumber<R: Rng>(rng: &mut R, generators: usize, max_terms: usize, unit: bool) -> Supernumber {
    let mut x = Supernumber::zero(generators);
    for _ in 0..rng.random_range(1..=max_terms) {
        let idx = random_index(rng, generators, None);
        x = &x + &Supernumber::monomial(generators, idx, small_scalar(rng));
    }
    if unit && num_traits::Zero::is_zero(&x.body()) {
        x = &x + &Supernumber::scalar(generators, small_scalar(rng));
    }
    x
}

/// Nonzero random element of one parity.
pub fn homogeneous<R: Rng>(rng: &mut R, generators: usize, parity: Parity, max_terms: usize) -> Supernumber {
    let mut x = Supernumber::zero(generators);
    while x.is_zero() {
        for _ in 0..rng.random_range(1..=max_terms) {
            let idx = random_index(rng, generators, Some(parity));
            x = &x + &Supernumber::monomial(generators, idx, small_scalar(rng));
        }
    }
    x
}

/// Random parity-homogeneous 4×4 block matrix with small entries.
pub fn block_matrix<R: Rng>(rng: &mut R, parity: Parity) -> crate::matrix::BlockMatrix {
    let mut m = crate::matrix::BlockMatrix::zero();
    for i in 0..4 {
        for j in 0..4 {
            let even_slot = (i < 2) == (j < 2);
            if even_slot == (parity == Parity::Even) && rng.random_bool(0.6) {
                m.entries[i][j] = small_scalar(rng);
            }
        }
    }
    m
}
