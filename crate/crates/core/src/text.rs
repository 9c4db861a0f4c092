//! Parser for the text form printed by the `Display` impls.
//!
//! ```text
//! function = sum | "(" sum ")" "/" "(" sum ")" ;
//! sum      = ["+" | "-"] term { ("+" | "-") term } ;
//! term     = coef { ["*"] factor } | factor { ["*"] factor } ;
//! coef     = rational ["i"] | "i" | "(" rational ("+" | "-") rational "i" ")" ;
//! factor   = "z[" label "]" | "z" ["^" exponent] | "tp" | "tm" | "t" ;
//! exponent = integer | "(" integer ")" ;
//! ```
//!
//! Juxtaposed `z[1]z[2]` is the same as `z[1]*z[2]`. Factors multiply in the
//! order written, so `z[2]z[1]` parses as `-z[1]z[2]`.

use thiserror::Error;

use crate::gaussian::GaussianRational;
use crate::grassmann::{GrassmannError, Supernumber};
use crate::scalar_poly::ScalarPoly;
use crate::superfield::{OddVar, RationalSuperfunction, SuperPolynomial, SuperfieldError, ThetaMono};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected input at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Superfield(#[from] SuperfieldError),
    #[error("{0}")]
    Shape(String),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    generators: usize,
    odd_vars: u8,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, generators: usize, odd_vars: u8) -> Self {
        Self { s: s.as_bytes(), pos: 0, generators, odd_vars }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<u8> {
        self.s.get(self.pos + off).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| ParseError::Syntax { pos: self.pos, msg: "integer overflow".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned_rational(&mut self) -> Result<String, ParseError> {
        let n = self.digits()?.to_string();
        if self.peek() == Some(b'/') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let d = self.digits()?;
            return Ok(format!("{n}/{d}"));
        }
        Ok(n)
    }

    /// Parenthesised Gaussian literal such as `(1/2-3/4i)`, if present.
    fn paren_gaussian(&mut self) -> Option<GaussianRational> {
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'(') {
            return None;
        }
        let close = self.s[self.pos..].iter().position(|&c| c == b')')? + self.pos;
        let inner = std::str::from_utf8(&self.s[self.pos + 1..close]).ok()?;
        if !inner.trim_end().ends_with('i') || inner.contains('z') || inner.contains('t') {
            return None;
        }
        let v: GaussianRational = format!("({inner})").parse().ok()?;
        self.pos = close + 1;
        Some(v)
    }

    fn coefficient(&mut self) -> Result<Option<GaussianRational>, ParseError> {
        if let Some(g) = self.paren_gaussian() {
            return Ok(Some(g));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = crate::gaussian::parse_rational(&self.unsigned_rational()?).map_err(|m| ParseError::Syntax { pos: self.pos, msg: m })?;
                if self.s.get(self.pos) == Some(&b'i') && !self.peek_at(1).is_some_and(|c| c.is_ascii_alphabetic()) {
                    self.pos += 1;
                    return Ok(Some(GaussianRational::new(num_rational::BigRational::default(), r)));
                }
                Ok(Some(GaussianRational::real(r)))
            }
            Some(b'i') if !self.peek_at(1).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                self.pos += 1;
                Ok(Some(GaussianRational::i()))
            }
            _ => Ok(None),
        }
    }

    fn factor(&mut self) -> Result<Option<SuperPolynomial>, ParseError> {
        let l = self.generators;
        let v = self.odd_vars;
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                if self.s.get(self.pos) == Some(&b'[') {
                    self.pos += 1;
                    let j = self.integer()?;
                    self.expect(b']')?;
                    if j < 1 || j as usize > l {
                        return Err(GrassmannError::InvalidLabel { label: j.max(0) as usize, generators: l }.into());
                    }
                    return Ok(Some(SuperPolynomial::constant(Supernumber::generator(l, j as usize), v)));
                }
                let mut e = 1i64;
                if self.eat(b'^') {
                    e = if self.eat(b'(') {
                        let e = self.integer()?;
                        self.expect(b')')?;
                        e
                    } else {
                        self.integer()?
                    };
                }
                Ok(Some(SuperPolynomial::z_pow(l, v, e as i32)))
            }
            Some(b't') => {
                self.pos += 1;
                let var = match self.s.get(self.pos) {
                    Some(b'p') => {
                        self.pos += 1;
                        OddVar::Plus
                    }
                    Some(b'm') => {
                        self.pos += 1;
                        OddVar::Minus
                    }
                    _ => {
                        if v != 1 {
                            return self.err("`t` needs exactly one odd variable");
                        }
                        OddVar::Plus
                    }
                };
                if v < ThetaMono::single(var).required_vars() || (v == 1 && var == OddVar::Minus) {
                    return self.err("odd variable not available");
                }
                Ok(Some(SuperPolynomial::theta(l, v, var)))
            }
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<SuperPolynomial, ParseError> {
        let l = self.generators;
        let v = self.odd_vars;
        let coef = self.coefficient()?;
        let mut acc = match &coef {
            Some(c) => SuperPolynomial::constant(Supernumber::scalar(l, c.clone()), v),
            None => SuperPolynomial::one(l, v),
        };
        let mut any = coef.is_some();
        loop {
            let save = self.pos;
            let star = self.eat(b'*');
            match self.factor()? {
                Some(f) => {
                    acc = &acc * &f;
                    any = true;
                }
                None => {
                    if star {
                        return self.err("expected factor after `*`");
                    }
                    self.pos = save;
                    break;
                }
            }
        }
        if !any {
            return self.err("expected a term");
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<SuperPolynomial, ParseError> {
        let mut acc = SuperPolynomial::zero(self.generators, self.odd_vars);
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// `(sum)/(sum)` or a bare sum.
    fn function(&mut self) -> Result<RationalSuperfunction, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'(') && self.paren_gaussian().is_none() {
            self.pos += 1;
            let num = self.sum()?;
            self.expect(b')')?;
            if self.eat(b'/') {
                self.expect(b'(')?;
                let den = self.sum()?;
                self.expect(b')')?;
                let den = scalar_poly_of(&den).ok_or_else(|| ParseError::Shape("denominator must be a scalar polynomial in z".into()))?;
                return Ok(RationalSuperfunction::new(num, den)?);
            }
            if self.at_end() {
                return Ok(RationalSuperfunction::from_poly(num));
            }
        }
        self.pos = start;
        Ok(RationalSuperfunction::from_poly(self.sum()?))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

fn scalar_poly_of(p: &SuperPolynomial) -> Option<ScalarPoly> {
    if p.min_exp().unwrap_or(0) < 0 {
        return None;
    }
    let mut coeffs = vec![GaussianRational::default(); p.max_exp().unwrap_or(0) as usize + 1];
    for (m, k, c) in p.terms() {
        if !m.is_empty() || !c.is_scalar() {
            return None;
        }
        coeffs[k as usize] = c.body();
    }
    Some(ScalarPoly::new(coeffs))
}

pub fn parse_supernumber(s: &str, generators: usize) -> Result<Supernumber, ParseError> {
    let mut p = Parser::new(s, generators, 0);
    let poly = p.sum()?;
    p.finish()?;
    if poly.terms().any(|(m, k, _)| !m.is_empty() || k != 0) {
        return Err(ParseError::Shape("supernumber may not contain z or odd variables".into()));
    }
    Ok(poly.coeff(ThetaMono::EMPTY, 0))
}

pub fn parse_superpolynomial(s: &str, generators: usize, odd_vars: u8) -> Result<SuperPolynomial, ParseError> {
    let mut p = Parser::new(s, generators, odd_vars);
    let poly = p.sum()?;
    p.finish()?;
    Ok(poly)
}

pub fn parse_function(s: &str, generators: usize, odd_vars: u8) -> Result<RationalSuperfunction, ParseError> {
    let mut p = Parser::new(s, generators, odd_vars);
    let f = p.function()?;
    p.finish()?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supernumber_roundtrip() {
        let x = parse_supernumber("3/2 + (0+1i)*z[1]z[2]", 4).unwrap();
        assert_eq!(x.to_string(), "3/2 + (0+1i)*z[1]z[2]");
        assert_eq!(parse_supernumber("z[2]z[1]", 4).unwrap(), -&parse_supernumber("z[1]z[2]", 4).unwrap());
        assert!(parse_supernumber("z[5]", 4).is_err());
        assert!(parse_supernumber("z", 4).is_err());
    }

    #[test]
    fn function_roundtrip() {
        for s in ["z^2 + 2*tp*tm*z", "(z)/(z^2 + 1)", "(0+1i)*tp*z^(-2)", "-tm*z[1] + 1/2", "(tp*z[1])/(z + 1)"] {
            let f = parse_function(s, 4, 2).unwrap();
            let again = parse_function(&f.to_string(), 4, 2).unwrap();
            assert_eq!(f, again, "{s} -> {f}");
        }
        let f = parse_function("1 + t*z[1]", 4, 1).unwrap();
        assert_eq!(f.to_string(), "1 + t*z[1]");
        assert_eq!(parse_function("(1)/(z)", 4, 2).unwrap(), RationalSuperfunction::z_pow(4, 2, -1));
    }
}
