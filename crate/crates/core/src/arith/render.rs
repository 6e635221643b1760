//! Text rendering and parsing of Laurent polynomials and rational functions.
//!
//! Rendered form: a polynomial numerator over a monomial (or polynomial)
//! denominator, e.g. `(1 + x2)/x1`, `(1 + x1 + x2)/(x1*x2)`,
//! `y1*y2/(1 + y1)`. Within a polynomial, terms are listed by increasing
//! total degree, and lexicographically from `x1` downwards within a degree.
//! The parser accepts the same grammar with `+ - * / ^` and parentheses.

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::ratfunc::RationalFunc;
use super::ArithError;
use crate::LaurentPoly;

fn monomial_string(e: &[i32], prefix: &str) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{}^{k}", i + 1) })
        .collect::<Vec<_>>()
        .join("*")
}

fn factor_count(e: &[i32]) -> usize {
    e.iter().filter(|&&k| k != 0).count()
}

/// Renders a polynomial (no negative exponents) without surrounding parentheses.
fn poly_string(p: &LaurentPoly, prefix: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|(e, _)| (e.iter().sum::<i32>(), Reverse(e.to_vec())));
    let mut out = String::new();
    for (idx, (e, c)) in terms.into_iter().enumerate() {
        let mono = monomial_string(e, prefix);
        let negative = c.is_negative();
        let abs = c.abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn denominator_shift(p: &LaurentPoly) -> Vec<i32> {
    p.min_exponents().iter().map(|&k| (-k).max(0)).collect()
}

fn fraction(num: &LaurentPoly, den: &LaurentPoly, prefix: &str) -> String {
    let mut n = poly_string(num, prefix);
    if num.len() > 1 {
        n = format!("({n})");
    }
    let d = poly_string(den, prefix);
    let bare = den.len() == 1
        && den.terms().all(|(e, c)| (c.is_one() && factor_count(e) == 1) || (factor_count(e) == 0 && c.is_positive()));
    if bare {
        format!("{n}/{d}")
    } else {
        format!("{n}/({d})")
    }
}

/// Renders a Laurent polynomial with variables `{prefix}1, {prefix}2, ...`.
pub fn render_laurent(p: &LaurentPoly, prefix: &str) -> String {
    let d = denominator_shift(p);
    if d.iter().all(|&k| k == 0) {
        return poly_string(p, prefix);
    }
    let den = LaurentPoly::monomial(p.nvars(), d.clone(), BigInt::one());
    fraction(&p.shift(&d), &den, prefix)
}

/// Renders a rational function with variables `{prefix}1, {prefix}2, ...`.
pub fn render_ratfunc(r: &RationalFunc, prefix: &str) -> String {
    if r.denom().is_one() {
        return render_laurent(r.numer(), prefix);
    }
    let d = denominator_shift(r.numer());
    fraction(&r.numer().shift(&d), &r.denom().shift(&d), prefix)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_laurent(self, "x"))
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ratfunc(self, "x"))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(usize),
    Op(char),
}

fn tokenize(s: &str, nvars: usize, prefix: &str) -> Result<Vec<(usize, Token)>, ArithError> {
    let chars: Vec<char> = s.chars().collect();
    let pre: Vec<char> = prefix.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push((start, Token::Int(lit.parse().expect("digits"))));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else if chars[i..].starts_with(&pre) {
            let start = i;
            i += pre.len();
            let ds = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let idx: usize = chars[ds..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| ArithError::Parse(format!("expected variable index at {start}")))?;
            if idx == 0 || idx > nvars {
                return Err(ArithError::Parse(format!("variable {prefix}{idx} at {start} out of range 1..={nvars}")));
            }
            out.push((start, Token::Var(idx - 1)));
        } else {
            return Err(ArithError::Parse(format!("unexpected character {c:?} at {i}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(usize::MAX)
    }

    fn err(&self, what: &str) -> ArithError {
        match self.tokens.get(self.pos) {
            Some((o, _)) => ArithError::Parse(format!("{what} at {o}")),
            None => ArithError::Parse(format!("{what} at end of input")),
        }
    }

    fn expr(&mut self) -> Result<RationalFunc, ArithError> {
        let negate = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.checked_add(&rhs)? } else { acc.checked_sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunc, ArithError> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = if op == '*' { acc.checked_mul(&rhs)? } else { acc.checked_div(&rhs)? };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<RationalFunc, ArithError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.tokens.get(self.pos) {
            Some((_, Token::Int(k))) => {
                let k: i32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                base.pow(if negative { -k } else { k })
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RationalFunc, ArithError> {
        match self.tokens.get(self.pos).cloned() {
            Some((_, Token::Int(k))) => {
                self.pos += 1;
                Ok(RationalFunc::constant(self.nvars, k))
            }
            Some((_, Token::Var(i))) => {
                self.pos += 1;
                Ok(RationalFunc::var(self.nvars, i))
            }
            Some((_, Token::Op('('))) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}

/// Parses a rational function in variables `{prefix}1..{prefix}{nvars}`.
pub fn parse_ratfunc(s: &str, nvars: usize, prefix: &str) -> Result<RationalFunc, ArithError> {
    let tokens = tokenize(s, nvars, prefix)?;
    let mut p = Parser { tokens, pos: 0, nvars };
    let r = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(ArithError::Parse(format!("trailing input at {}", p.offset())));
    }
    Ok(r)
}

/// Parses a Laurent polynomial; fails if the expression has a non-monomial denominator.
pub fn parse_laurent(s: &str, nvars: usize, prefix: &str) -> Result<LaurentPoly, ArithError> {
    let r = parse_ratfunc(s, nvars, prefix)?;
    r.as_laurent().cloned().ok_or_else(|| ArithError::Parse(format!("{s:?} is not a Laurent polynomial")))
}

impl RationalFunc {
    pub fn render(&self, prefix: &str) -> String {
        render_ratfunc(self, prefix)
    }
}

impl LaurentPoly {
    pub fn render(&self, prefix: &str) -> String {
        render_laurent(self, prefix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_pentagon_variables() {
        let x3 = parse_laurent("(1+x2)/x1", 2, "x").unwrap();
        assert_eq!(x3.to_string(), "(1 + x2)/x1");
        let x4 = parse_laurent("(x1 + 1 + x2) / (x1*x2)", 2, "x").unwrap();
        assert_eq!(x4.to_string(), "(1 + x1 + x2)/(x1*x2)");
        assert_eq!(parse_laurent("x2", 2, "x").unwrap().to_string(), "x2");
        assert_eq!(parse_laurent("2/x1", 1, "x").unwrap().to_string(), "2/x1");
        assert_eq!(parse_laurent("x1^-2*x2 - 3", 2, "x").unwrap().to_string(), "(x2 - 3*x1^2)/x1^2");
    }

    #[test]
    fn renders_y_variables() {
        let r = parse_ratfunc("y1*y2/(1+y1)", 2, "y").unwrap();
        assert_eq!(r.render("y"), "y1*y2/(1 + y1)");
        let r = parse_ratfunc("y2/(1+y1+y1*y2)", 2, "y").unwrap();
        assert_eq!(r.render("y"), "y2/(1 + y1 + y1*y2)");
        let r = parse_ratfunc("1/y1", 2, "y").unwrap();
        assert_eq!(r.render("y"), "1/y1");
        let r = parse_ratfunc("1/(y1*(1+y2))", 2, "y").unwrap();
        assert_eq!(r.render("y"), "1/(y1 + y1*y2)");
        assert_eq!(parse_ratfunc(&r.render("y"), 2, "y").unwrap(), r);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_laurent("x3", 2, "x").is_err());
        assert!(parse_laurent("x1 +", 2, "x").is_err());
        assert!(parse_laurent("x1 x2", 2, "x").is_err());
        assert!(parse_laurent("1/(1+x1)", 2, "x").is_err());
        assert!(parse_laurent("z1", 2, "x").is_err());
        assert!(parse_ratfunc("1/0", 2, "x").is_err());
    }

    #[test]
    fn zero_and_constants() {
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(parse_laurent("-7", 2, "x").unwrap().to_string(), "-7");
        assert!(parse_laurent("x1 - x1", 2, "x").unwrap().is_zero());
    }
}
