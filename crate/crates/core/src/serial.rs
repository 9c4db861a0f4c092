//! JSON forms. Rationals travel as strings (`"3/2"`) so nothing is lost.

use serde::{Deserialize, Serialize};

use crate::gaussian::{parse_rational, GaussianRational};
use crate::grassmann::{MultiIndex, Supernumber};
use crate::scalar_poly::ScalarPoly;
use crate::superfield::{OddVar, RationalSuperfunction, SuperPolynomial, ThetaMono};
use crate::text::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub index: Vec<usize>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    /// Odd variables in order, each `"+"` or `"-"`.
    pub theta: Vec<String>,
    pub exp: i32,
    pub coeff: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionJson {
    pub generators: usize,
    pub odd_vars: u8,
    pub numerator: Vec<PolyTermJson>,
    /// Coefficients from `z^0` upwards.
    pub denominator: Vec<ScalarJson>,
}

fn rat_str(q: &num_rational::BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn shape(msg: impl Into<String>) -> ParseError {
    ParseError::Shape(msg.into())
}

impl From<&GaussianRational> for ScalarJson {
    fn from(c: &GaussianRational) -> Self {
        Self { re: rat_str(&c.re), im: rat_str(&c.im) }
    }
}

impl TryFrom<&ScalarJson> for GaussianRational {
    type Error = ParseError;
    fn try_from(j: &ScalarJson) -> Result<Self, ParseError> {
        Ok(GaussianRational::new(parse_rational(&j.re).map_err(shape)?, parse_rational(&j.im).map_err(shape)?))
    }
}

pub fn supernumber_to_json(x: &Supernumber) -> Vec<TermJson> {
    x.terms()
        .map(|(idx, c)| TermJson { index: idx.labels(), re: rat_str(&c.re), im: rat_str(&c.im) })
        .collect()
}

pub fn supernumber_from_json(terms: &[TermJson], generators: usize) -> Result<Supernumber, ParseError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let idx = MultiIndex::from_labels(&t.index)?;
        let c = GaussianRational::new(parse_rational(&t.re).map_err(shape)?, parse_rational(&t.im).map_err(shape)?);
        parsed.push((idx, c));
    }
    Ok(Supernumber::try_from_terms(generators, parsed)?)
}

pub fn polynomial_to_json(p: &SuperPolynomial) -> Vec<PolyTermJson> {
    p.terms()
        .map(|(m, k, c)| {
            let mut theta = Vec::new();
            if m.contains(OddVar::Plus) {
                theta.push("+".to_string());
            }
            if m.contains(OddVar::Minus) {
                theta.push("-".to_string());
            }
            PolyTermJson { theta, exp: k, coeff: supernumber_to_json(c) }
        })
        .collect()
}

pub fn polynomial_from_json(terms: &[PolyTermJson], generators: usize, odd_vars: u8) -> Result<SuperPolynomial, ParseError> {
    let mut out = SuperPolynomial::zero(generators, odd_vars);
    for t in terms {
        let mut mono = SuperPolynomial::one(generators, odd_vars);
        for v in &t.theta {
            let var = match v.as_str() {
                "+" => OddVar::Plus,
                "-" if odd_vars == 2 => OddVar::Minus,
                other => return Err(shape(format!("bad odd variable `{other}`"))),
            };
            mono = &mono * &SuperPolynomial::theta(generators, odd_vars, var);
        }
        let c = supernumber_from_json(&t.coeff, generators)?;
        let term = &mono * &SuperPolynomial::term(ThetaMono::EMPTY, t.exp, c, odd_vars);
        out = &out + &term;
    }
    Ok(out)
}

pub fn function_to_json(f: &RationalSuperfunction) -> FunctionJson {
    FunctionJson {
        generators: f.generators(),
        odd_vars: f.odd_vars(),
        numerator: polynomial_to_json(f.numerator()),
        denominator: f.denominator().coeffs().iter().map(ScalarJson::from).collect(),
    }
}

pub fn function_from_json(j: &FunctionJson) -> Result<RationalSuperfunction, ParseError> {
    let num = polynomial_from_json(&j.numerator, j.generators, j.odd_vars)?;
    let den = j.denominator.iter().map(GaussianRational::try_from).collect::<Result<Vec<_>, _>>()?;
    Ok(RationalSuperfunction::new(num, ScalarPoly::new(den))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_function;

    #[test]
    fn function_json_roundtrip() {
        let f = parse_function("(tp*tm*z[1]z[2] + (0+1i)*z)/(z^2 - 3/2)", 4, 2).unwrap();
        let j = function_to_json(&f);
        let s = serde_json::to_string(&j).unwrap();
        let back: FunctionJson = serde_json::from_str(&s).unwrap();
        assert_eq!(function_from_json(&back).unwrap(), f);
    }

    #[test]
    fn supernumber_json_shape() {
        let x = crate::text::parse_supernumber("3/2 + z[1]z[2]", 4).unwrap();
        let v = serde_json::to_value(supernumber_to_json(&x)).unwrap();
        assert_eq!(v, serde_json::json!([{"index": [], "re": "3/2", "im": "0"}, {"index": [1, 2], "re": "1", "im": "0"}]));
    }
}
