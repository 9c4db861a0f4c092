//! 4×4 block matrices in gl(2|2), the osp(2|2) and p(2|2) correspondences
//! for `𝔤₀` and `𝔤±₁`, and the semidirect description of `𝔤ₙ`, `|n| ≥ 2`.
//! The displayed matrices are data; the homomorphism property is checked.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gaussian::GaussianRational;
use crate::grassmann::Parity;
use crate::linalg::Span;
use crate::ns::{g_n_even_basis, g_n_odd_basis, sigma_n, NSBasisSymbol, NSElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MsaError {
    #[error("matrix is not parity-homogeneous")]
    Parity,
    #[error("component vector of length {found} for a basis of size {expected}")]
    Membership { expected: usize, found: usize },
}

/// Rows and columns `0, 1` are even, `2, 3` odd.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    pub entries: [[GaussianRational; 4]; 4],
}

fn odd_index(i: usize) -> bool {
    i >= 2
}

impl BlockMatrix {
    pub fn zero() -> Self {
        Self { entries: std::array::from_fn(|_| std::array::from_fn(|_| GaussianRational::zero())) }
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self { entries: rows.map(|r| r.map(GaussianRational::from)) }
    }

    /// Matrix unit `e_ij`, 1-based.
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.entries[i - 1][j - 1] = GaussianRational::one();
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { entries: self.entries.clone().map(|r| r.map(|x| &x * c)) }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] += &o.entries[i][j];
            }
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&GaussianRational::from(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let p = &self.entries[i][k] * &o.entries[k][j];
                    m.entries[i][j] += &p;
                }
            }
        }
        m
    }

    /// Even: supported on the diagonal blocks. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for i in 0..4 {
            for j in 0..4 {
                if !self.entries[i][j].is_zero() {
                    if odd_index(i) == odd_index(j) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    /// `tr A − tr D`.
    pub fn supertrace(&self) -> GaussianRational {
        let e = &self.entries;
        &(&e[0][0] + &e[1][1]) - &(&e[2][2] + &e[3][3])
    }

    pub fn flatten(&self) -> Vec<GaussianRational> {
        self.entries.iter().flatten().cloned().collect()
    }

    /// Membership in the displayed osp(2|2) pattern.
    pub fn in_osp22(&self) -> bool {
        let e = &self.entries;
        e[1][1] == -&e[0][0]
            && e[3][3] == -&e[2][2]
            && e[2][3].is_zero()
            && e[3][2].is_zero()
            && e[0][2] == e[3][1]
            && e[0][3] == e[2][1]
            && e[1][2] == -&e[3][0]
            && e[1][3] == -&e[2][0]
    }

    /// Membership in the displayed p(2|2) pattern.
    pub fn in_p22(&self) -> bool {
        let e = &self.entries;
        let a = &e[0][0];
        e[1][1] == -a
            && e[2][2] == -a
            && e[3][3] == *a
            && e[2][3] == -&e[1][0]
            && e[3][2] == -&e[0][1]
            && e[0][3] == e[1][2]
            && e[2][0].is_zero()
            && e[3][1].is_zero()
            && e[3][0] == -&e[2][1]
    }
}

/// `[X, Y] = XY − (−1)^{η(X)η(Y)}YX`.
pub fn msa_superbracket(x: &BlockMatrix, y: &BlockMatrix) -> Result<BlockMatrix, MsaError> {
    let px = x.parity().ok_or(MsaError::Parity)?;
    let py = y.parity().ok_or(MsaError::Parity)?;
    let xy = x.mul(y);
    let yx = y.mul(x);
    Ok(if px.sign_flip(py) { xy.add(&yx) } else { xy.sub(&yx) })
}

impl fmt::Display for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for BlockMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Source basis elements and their matrix images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    pub name: String,
    pub entries: Vec<(NSElement, BlockMatrix)>,
}

fn sl2_upper(m: [[i64; 2]; 2], half: bool) -> BlockMatrix {
    let mut b = BlockMatrix::zero();
    let c = if half { GaussianRational::from_ratio(1, 2) } else { GaussianRational::one() };
    for i in 0..2 {
        for j in 0..2 {
            b.entries[i][j] = &GaussianRational::from(m[i][j]) * &c;
        }
    }
    b
}

/// The sl₂ correspondence: `e₁₂ ↔ L₋₁`, `½diag(1,−1) ↔ L₀ − (n/2)J₀`,
/// `−e₂₁ ↔ L₁ − nJ₁`.
fn sl2_images() -> [BlockMatrix; 3] {
    [sl2_upper([[0, 1], [0, 0]], false), sl2_upper([[1, 0], [0, -1]], true), sl2_upper([[0, 0], [-1, 0]], false)]
}

/// `(a b; c −a) ↦ diag-block (a b; c −a) ⊕ (−a −c; −b a)`.
fn p_embed(m: &BlockMatrix) -> BlockMatrix {
    let e = &m.entries;
    let mut b = m.clone();
    b.entries[2][2] = -&e[0][0];
    b.entries[2][3] = -&e[1][0];
    b.entries[3][2] = -&e[0][1];
    b.entries[3][3] = e[0][0].clone();
    b
}

fn units(terms: &[(i64, usize, usize)]) -> BlockMatrix {
    terms.iter().fold(BlockMatrix::zero(), |acc, &(c, i, j)| acc.add(&BlockMatrix::unit(i, j).scale(&GaussianRational::from(c))))
}

/// `𝔤₀ ≅ osp(2|2)`.
pub fn msa_osp_table() -> HomTable {
    use NSBasisSymbol::*;
    let even = g_n_even_basis(0);
    let [e, h, f] = sl2_images();
    HomTable {
        name: "osp(2|2)".into(),
        entries: vec![
            (even[0].clone(), e),
            (even[1].clone(), h),
            (even[2].clone(), f),
            (NSElement::basis(J(0)), units(&[(1, 3, 3), (-1, 4, 4)])),
            (NSElement::basis(GPlus(-1)), units(&[(1, 1, 4), (1, 3, 2)])),
            (NSElement::basis(GPlus(1)), units(&[(-1, 2, 4), (1, 3, 1)])),
            (NSElement::basis(GMinus(-1)), units(&[(1, 1, 3), (1, 4, 2)])),
            (NSElement::basis(GMinus(1)), units(&[(-1, 2, 3), (1, 4, 1)])),
        ],
    }
}

/// `𝔤±₁ ≅ gl(1) ×_σ p(2|2)` for `sign = ±1`; `J₀` is the last entry.
pub fn msa_p_table(sign: i64) -> HomTable {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let even = g_n_even_basis(sign);
    let g_same = |t| if sign > 0 { NSBasisSymbol::GPlus(t) } else { NSBasisSymbol::GMinus(t) };
    let g_other = |t| if sign > 0 { NSBasisSymbol::GMinus(t) } else { NSBasisSymbol::GPlus(t) };
    let [e, h, f] = sl2_images();
    HomTable {
        name: format!("gl(1) x p(2|2), n = {sign}"),
        entries: vec![
            (even[0].clone(), p_embed(&e)),
            (even[1].clone(), p_embed(&h)),
            (even[2].clone(), p_embed(&f)),
            (NSElement::basis(g_same(-1)), units(&[(1, 3, 2), (-1, 4, 1)])),
            (NSElement::basis(g_other(-1)), units(&[(2, 1, 3)])),
            (NSElement::basis(g_other(1)), units(&[(-1, 1, 4), (-1, 2, 3)])),
            (NSElement::basis(g_other(3)), units(&[(2, 2, 4)])),
            (NSElement::basis(NSBasisSymbol::J(0)), units(&[(sign, 3, 3), (sign, 4, 4)])),
        ],
    }
}

/// `𝔤ₙ ≅ (sl₂ ⊕ gl₁) ×_{σₙ} (odd abelian)`, `|n| ≥ 2`. The acting algebra
/// is realized by the sl₂ matrices plus `J₀ ↦ e₃₃`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectData {
    pub n: i64,
    pub acting: Vec<(NSElement, BlockMatrix)>,
    pub ideal: Vec<NSElement>,
    /// `sigma[i][j]`: coordinates of `σ_{u_i}(v_j)` in the ideal basis.
    pub sigma: Vec<Vec<Vec<GaussianRational>>>,
}

pub fn msa_gn_table(n: i64) -> SemidirectData {
    assert!(n.abs() >= 2, "the semidirect description needs |n| >= 2");
    let even = g_n_even_basis(n);
    let [e, h, f] = sl2_images();
    let acting = vec![
        (even[0].clone(), e),
        (even[1].clone(), h),
        (even[2].clone(), f),
        (even[3].clone(), BlockMatrix::unit(3, 3)),
    ];
    let odd = g_n_odd_basis(n);
    let ideal: Vec<NSElement> = odd.iter().map(|s| NSElement::basis(*s)).collect();
    let sigma = (0..4)
        .map(|i| {
            (0..odd.len())
                .map(|k| {
                    let image = sigma_n(n, i, k as i64);
                    odd.iter().map(|s| image.coeff(*s)).collect()
                })
                .collect()
        })
        .collect();
    SemidirectData { n, acting, ideal, sigma }
}

/// `u + v` with `u` in the acting algebra and `v` in the ideal, by
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdElement {
    pub acting: Vec<GaussianRational>,
    pub ideal: Vec<GaussianRational>,
}

impl SemidirectData {
    fn acting_span(&self) -> Span {
        Span::new(&self.acting.iter().map(|(_, m)| m.flatten()).collect::<Vec<_>>())
    }

    fn sigma_apply(&self, i: usize, v: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.ideal.len()];
        for (j, c) in v.iter().enumerate() {
            for (k, s) in self.sigma[i][j].iter().enumerate() {
                out[k] += &(c * s);
            }
        }
        out
    }

    /// `Σ` coordinates back to an NS element.
    pub fn to_ns(&self, x: &SdElement) -> NSElement {
        let mut e = NSElement::zero();
        for (c, (s, _)) in x.acting.iter().zip(&self.acting) {
            e = &e + &s.scale(c);
        }
        for (c, s) in x.ideal.iter().zip(&self.ideal) {
            e = &e + &s.scale(c);
        }
        e
    }

    pub fn unit_acting(&self, i: usize) -> SdElement {
        let mut acting = vec![GaussianRational::zero(); self.acting.len()];
        acting[i] = GaussianRational::one();
        SdElement { acting, ideal: vec![GaussianRational::zero(); self.ideal.len()] }
    }

    pub fn unit_ideal(&self, j: usize) -> SdElement {
        let mut ideal = vec![GaussianRational::zero(); self.ideal.len()];
        ideal[j] = GaussianRational::one();
        SdElement { acting: vec![GaussianRational::zero(); self.acting.len()], ideal }
    }
}

fn ideal_parity(e: &NSElement) -> Parity {
    e.parity().unwrap_or(Parity::Even)
}

/// `[u+v, u'+v'] = [u,u'] + σ_u(v') − (−1)^{η(v)η(u')}σ_{u'}(v) + [v,v']`
/// with `[v, v'] = 0`.
pub fn msa_semidirect_bracket(sd: &SemidirectData, x: &SdElement, y: &SdElement) -> Result<SdElement, MsaError> {
    for e in [x, y] {
        if e.acting.len() != sd.acting.len() {
            return Err(MsaError::Membership { expected: sd.acting.len(), found: e.acting.len() });
        }
        if e.ideal.len() != sd.ideal.len() {
            return Err(MsaError::Membership { expected: sd.ideal.len(), found: e.ideal.len() });
        }
    }
    let combine = |c: &[GaussianRational]| {
        c.iter().zip(&sd.acting).fold(BlockMatrix::zero(), |acc, (c, (_, m))| acc.add(&m.scale(c)))
    };
    let uu = msa_superbracket(&combine(&x.acting), &combine(&y.acting))?;
    let acting = sd.acting_span().solve(&uu.flatten()).ok_or(MsaError::Parity)?;
    let mut ideal = vec![GaussianRational::zero(); sd.ideal.len()];
    for (i, (_, m)) in sd.acting.iter().enumerate() {
        let pu = m.parity().ok_or(MsaError::Parity)?;
        for (k, c) in sd.sigma_apply(i, &y.ideal).iter().enumerate() {
            ideal[k] += &(c * &x.acting[i]);
        }
        for j in 0..sd.ideal.len() {
            let mut unit = vec![GaussianRational::zero(); sd.ideal.len()];
            unit[j] = x.ideal[j].clone();
            let s = sd.sigma_apply(i, &unit);
            let neg = !ideal_parity(&sd.ideal[j]).sign_flip(pu);
            for (k, c) in s.iter().enumerate() {
                let t = c * &y.acting[i];
                if neg {
                    ideal[k] -= &t;
                } else {
                    ideal[k] += &t;
                }
            }
        }
    }
    Ok(SdElement { acting, ideal })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub pair: [String; 2],
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub name: String,
    pub pairs: usize,
    pub parity_ok: bool,
    pub injective: bool,
    /// Pairs whose NS bracket leaves the source span.
    pub ns_inconsistent: Vec<[String; 2]>,
    pub discrepancies: Vec<Discrepancy>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.parity_ok && self.injective && self.ns_inconsistent.is_empty() && self.discrepancies.is_empty()
    }
}

fn ns_coordinates(symbols: &[NSBasisSymbol], e: &NSElement) -> Vec<GaussianRational> {
    symbols.iter().map(|s| e.coeff(*s)).collect()
}

fn symbols_of<'a>(es: impl IntoIterator<Item = &'a NSElement>) -> Vec<NSBasisSymbol> {
    let set: std::collections::BTreeSet<NSBasisSymbol> = es.into_iter().flat_map(|e| e.terms().map(|(s, _)| s)).collect();
    set.into_iter().collect()
}

/// Every pair `(i ≤ j)`: the image of `[s_i, s_j]` against `[M_i, M_j]`.
pub fn msa_verify_hom(t: &HomTable) -> HomReport {
    let sources: Vec<&NSElement> = t.entries.iter().map(|(s, _)| s).collect();
    let mut brackets = Vec::new();
    for i in 0..sources.len() {
        for j in i..sources.len() {
            brackets.push((i, j, sources[i].bracket(sources[j])));
        }
    }
    let symbols = symbols_of(sources.iter().copied().chain(brackets.iter().map(|(_, _, b)| b)));
    let span = Span::new(&sources.iter().map(|s| ns_coordinates(&symbols, s)).collect::<Vec<_>>());
    let images = Span::new(&t.entries.iter().map(|(_, m)| m.flatten()).collect::<Vec<_>>());
    let parity_ok = t.entries.iter().all(|(s, m)| s.parity().is_some() && s.parity() == m.parity());
    let mut report = HomReport {
        name: t.name.clone(),
        pairs: brackets.len(),
        parity_ok,
        injective: images.is_independent(),
        ns_inconsistent: Vec::new(),
        discrepancies: Vec::new(),
    };
    for (i, j, b) in brackets {
        let pair = [sources[i].to_string(), sources[j].to_string()];
        let Some(c) = span.solve(&ns_coordinates(&symbols, &b)) else {
            report.ns_inconsistent.push(pair);
            continue;
        };
        let expected = c.iter().zip(&t.entries).fold(BlockMatrix::zero(), |acc, (c, (_, m))| acc.add(&m.scale(c)));
        match msa_superbracket(&t.entries[i].1, &t.entries[j].1) {
            Ok(got) if got == expected => {}
            Ok(got) => report.discrepancies.push(Discrepancy { pair, expected: expected.to_string(), got: got.to_string() }),
            Err(e) => report.discrepancies.push(Discrepancy { pair, expected: expected.to_string(), got: e.to_string() }),
        }
    }
    report
}

/// The semidirect bracket on all basis pairs against the NS bracket, plus
/// `σ_{[u,u']} = [σ_u, σ_{u'}]` on the acting basis.
pub fn msa_verify_semidirect(sd: &SemidirectData) -> HomReport {
    let na = sd.acting.len();
    let ni = sd.ideal.len();
    let units: Vec<SdElement> = (0..na).map(|i| sd.unit_acting(i)).chain((0..ni).map(|j| sd.unit_ideal(j))).collect();
    let parity_ok = sd.acting.iter().all(|(s, m)| s.parity() == m.parity() && m.parity() == Some(Parity::Even))
        && sd.ideal.iter().all(|v| v.parity() == Some(Parity::Odd));
    let all: Vec<NSElement> = units.iter().map(|u| sd.to_ns(u)).collect();
    let injective = Span::new(&{
        let symbols = symbols_of(all.iter());
        all.iter().map(|e| ns_coordinates(&symbols, e)).collect::<Vec<_>>()
    })
    .is_independent();
    let mut report = HomReport {
        name: format!("g_{} semidirect", sd.n),
        pairs: 0,
        parity_ok,
        injective,
        ns_inconsistent: Vec::new(),
        discrepancies: Vec::new(),
    };
    for i in 0..units.len() {
        for j in i..units.len() {
            report.pairs += 1;
            let pair = [all[i].to_string(), all[j].to_string()];
            let expected = all[i].bracket(&all[j]);
            match msa_semidirect_bracket(sd, &units[i], &units[j]) {
                Ok(got) => {
                    let got = sd.to_ns(&got);
                    if got != expected {
                        report.discrepancies.push(Discrepancy { pair, expected: expected.to_string(), got: got.to_string() });
                    }
                }
                Err(_) => report.ns_inconsistent.push(pair),
            }
        }
    }
    for i in 0..na {
        for j in 0..na {
            let uu = msa_superbracket(&sd.acting[i].1, &sd.acting[j].1).expect("even matrices");
            let Some(c) = sd.acting_span().solve(&uu.flatten()) else { continue };
            for k in 0..ni {
                let mut v = vec![GaussianRational::zero(); ni];
                v[k] = GaussianRational::one();
                let mut lhs = vec![GaussianRational::zero(); ni];
                for (a, ca) in c.iter().enumerate() {
                    for (x, y) in lhs.iter_mut().zip(sd.sigma_apply(a, &v)) {
                        *x += &(ca * &y);
                    }
                }
                let ij = sd.sigma_apply(i, &sd.sigma_apply(j, &v));
                let ji = sd.sigma_apply(j, &sd.sigma_apply(i, &v));
                let rhs: Vec<GaussianRational> = ij.iter().zip(&ji).map(|(a, b)| a - b).collect();
                if lhs != rhs {
                    report.discrepancies.push(Discrepancy {
                        pair: [format!("sigma {}", sd.acting[i].0), format!("sigma {} on {}", sd.acting[j].0, sd.ideal[k])],
                        expected: format!("{rhs:?}"),
                        got: format!("{lhs:?}"),
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations() {
        let [e, h, f] = sl2_images();
        assert_eq!(msa_superbracket(&e, &f).unwrap(), h.scale(&GaussianRational::from(2)).scale(&GaussianRational::from(-1)));
        assert_eq!(msa_superbracket(&h, &e).unwrap(), e);
    }

    #[test]
    fn osp_odd_anticommutator() {
        let t = msa_osp_table();
        let b = msa_superbracket(&t.entries[4].1, &t.entries[5].1).unwrap();
        assert!(b.is_zero());
        assert!(t.entries.iter().all(|(_, m)| m.in_osp22()));
        assert_eq!(t.entries[3].1, units(&[(1, 3, 3), (-1, 4, 4)]));
    }

    #[test]
    fn tables_are_homomorphisms() {
        for t in [msa_osp_table(), msa_p_table(1), msa_p_table(-1)] {
            let r = msa_verify_hom(&t);
            assert!(r.passed(), "{}: {:?}", t.name, r);
        }
        for n in [-3, -2, 2, 3] {
            let r = msa_verify_semidirect(&msa_gn_table(n));
            assert!(r.passed(), "n={n}: {r:?}");
        }
    }

    #[test]
    fn p_pattern() {
        let t = msa_p_table(1);
        assert!(t.entries[..7].iter().all(|(_, m)| m.in_p22()));
        assert_eq!(t.entries[4].1, units(&[(2, 1, 3)]));
    }

    #[test]
    fn semidirect_examples() {
        let sd = msa_gn_table(3);
        let j0 = sd.unit_acting(3);
        let g = sd.unit_ideal(2);
        let r = msa_semidirect_bracket(&sd, &j0, &g).unwrap();
        assert_eq!(sd.to_ns(&r), NSElement::basis(NSBasisSymbol::GMinus(3)).scale(&GaussianRational::from(-1)));
        let r = msa_semidirect_bracket(&sd, &sd.unit_ideal(0), &sd.unit_ideal(4)).unwrap();
        assert!(sd.to_ns(&r).is_zero());
        let bad = SdElement { acting: vec![], ideal: vec![] };
        assert!(matches!(msa_semidirect_bracket(&sd, &bad, &g), Err(MsaError::Membership { .. })));
    }
}
