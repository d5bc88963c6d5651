//! Polynomial input: a small expression language and the JSON coefficient
//! format. Both are read exactly into rationals.
//!
//! Expressions are sums and products of numbers, `x`, parenthesized
//! subexpressions and integer powers, e.g. `3/8 x - 1/2 x^2 + 1/3 x^3` or
//! `2*(x - 0.125)^3`. Division is only allowed by constants.

use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{parse_rational, Rational, Scalar};

/// A parsed polynomial and the interval it came with, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialInput {
    pub poly: Polynomial<Rational>,
    pub interval: Option<(Rational, Rational)>,
}

/// Accepts either a JSON object (see [`polynomial_from_json`]) or an
/// expression. The names `identity` and `x` denote `x`.
pub fn parse_polynomial(text: &str) -> Result<PolynomialInput> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(format!("polynomial JSON: {e}")))?;
        return polynomial_from_json(&v);
    }
    let poly = if t == "identity" { Polynomial::identity() } else { parse_expression(t)? };
    Ok(PolynomialInput { poly, interval: None })
}

/// `{"base": b, "coeffs": [...], "rational": [...], "interval": [a, b]}`.
///
/// `coeffs` are the coefficients of `(x - base)^l`. When `rational` is given
/// (a list of `"p/q"` strings, possibly nested one level) it takes
/// precedence. Decimal numbers are read as the decimal they print as.
pub fn polynomial_from_json(v: &Value) -> Result<PolynomialInput> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("polynomial JSON must be an object".into()))?;
    let base = match obj.get("base") {
        Some(b) => number(b, "base")?,
        None => Rational::from_i64(0),
    };
    let coeffs = match (obj.get("rational"), obj.get("coeffs")) {
        (Some(r), _) => {
            let mut out = Vec::new();
            flatten_strings(r, &mut out)?;
            out
        }
        (None, Some(Value::Array(c))) => c.iter().map(|x| number(x, "coeffs")).collect::<Result<_>>()?,
        (None, Some(_)) => return Err(Error::Parse("\"coeffs\" must be an array".into())),
        (None, None) => return Err(Error::Parse("polynomial JSON needs \"coeffs\" or \"rational\"".into())),
    };
    if coeffs.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let interval = match obj.get("interval") {
        None | Some(Value::Null) => None,
        Some(Value::Array(ab)) if ab.len() == 2 => Some((number(&ab[0], "interval")?, number(&ab[1], "interval")?)),
        Some(_) => return Err(Error::Parse("\"interval\" must be [a, b]".into())),
    };
    Ok(PolynomialInput { poly: Polynomial::new(base, coeffs), interval })
}

fn number(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => Err(Error::Parse(format!("\"{field}\" entries must be numbers or strings"))),
    }
}

fn flatten_strings(v: &Value, out: &mut Vec<Rational>) -> Result<()> {
    match v {
        Value::Array(items) => items.iter().try_for_each(|i| flatten_strings(i, out)),
        other => {
            out.push(number(other, "rational")?);
            Ok(())
        }
    }
}

/// JSON form of a polynomial, with exact coefficients under `rational`.
/// `base` is a number when a float holds it exactly, else a `"p/q"` string.
pub fn polynomial_to_json(p: &Polynomial<Rational>) -> Value {
    let base = p.base().to_f64();
    let base = if Rational::from_f64(base) == *p.base() { json!(base) } else { json!(p.base().render()) };
    json!({
        "base": base,
        "coeffs": p.coeffs().iter().map(Scalar::to_f64).collect::<Vec<_>>(),
        "rational": p.coeffs().iter().map(Scalar::render).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            'x' | 'X' => Token::X,
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' | '\u{b7}' | '\u{d7}' => {
                if chars.get(i + 1) == Some(&'*') {
                    i += 1;
                    Token::Caret
                } else {
                    Token::Star
                }
            }
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(parse_rational(&text)?));
                continue;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        };
        out.push(tok);
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                self.product()?.scale(&Rational::from_i64(-1))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if d.degree() > 0 || d.is_zero() {
                        return Err(Error::Parse("division is only allowed by nonzero constants".into()));
                    }
                    acc = acc.scale(&(Rational::from_i64(1) / d.coeffs()[0].clone()));
                }
                // implicit multiplication: `3x`, `2(x - 1)^2`, `(x - 1)(x + 1)`
                Some(Token::X | Token::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<Rational>> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.next() {
            Some(Token::Num(e)) if e.is_integer() && !e.is_negative() => {
                e.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
        };
        let e: u32 = e;
        Ok((0..e).fold(Polynomial::constant(Rational::from_i64(1)), |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>> {
        match self.next() {
            Some(Token::Num(c)) => Ok(Polynomial::constant(c)),
            Some(Token::X) => Ok(Polynomial::identity()),
            Some(Token::Open) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(Token::Minus) => Ok(self.atom()?.scale(&Rational::from_i64(-1))),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses an expression in `x` into a polynomial about 0.
pub fn parse_expression(s: &str) -> Result<Polynomial<Rational>> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let out = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out.rebase(&Rational::from_i64(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn expressions() {
        let p = parse_expression("3/8 x - 1/2 x^2 + 1/3*x^3").unwrap();
        assert_eq!(p.coeffs(), &[r(0, 1), r(3, 8), r(-1, 2), r(1, 3)]);
        let p = parse_expression("(x-0.125)^3").unwrap();
        assert_eq!(p.coeffs(), &[r(-1, 512), r(3, 64), r(-3, 8), r(1, 1)]);
        let p = parse_expression("2(x + 1)(x - 1) - -x").unwrap();
        assert_eq!(p.coeffs(), &[r(-2, 1), r(1, 1), r(2, 1)]);
        let p = parse_expression("x**2/4 + 1e-1").unwrap();
        assert_eq!(p.coeffs(), &[r(1, 10), r(0, 1), r(1, 4)]);
    }

    #[test]
    fn expression_errors() {
        for bad in ["", "x^", "x^-1", "(x", "1/x", "x y", "x^1.5", "3 3"] {
            assert!(parse_expression(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_forms() {
        let v: Value = serde_json::from_str(r#"{"base": 0.5, "coeffs": [0.1, 1], "interval": [0, 1]}"#).unwrap();
        let p = polynomial_from_json(&v).unwrap();
        assert_eq!(p.poly.base(), &r(1, 2));
        assert_eq!(p.poly.coeffs(), &[r(1, 10), r(1, 1)]);
        assert_eq!(p.interval, Some((r(0, 1), r(1, 1))));

        let nested =
            parse_polynomial(r#"{"base": 0, "coeffs": [0, 0.375], "rational": [["0", "3/8", "-1/2", "1/3"]]}"#)
                .unwrap();
        assert_eq!(nested.poly.degree(), 3);
        assert_eq!(nested.poly.coeffs()[3], r(1, 3));

        let round = polynomial_from_json(&polynomial_to_json(&nested.poly)).unwrap();
        assert_eq!(round.poly, nested.poly);

        assert!(parse_polynomial("{\"base\": 0}").is_err());
        assert!(parse_polynomial("{\"coeffs\": []}").is_err());
        assert_eq!(parse_polynomial("identity").unwrap().poly, Polynomial::identity());
    }
}
