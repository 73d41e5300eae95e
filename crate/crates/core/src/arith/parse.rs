//! A small expression parser for polynomials and rational functions in one
//! variable: integers, `p/q`, `+ - * / ^`, parentheses and implicit
//! multiplication such as `2n` or `3(n + 1)`.

use num_bigint::BigInt;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str, var: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let var: Vec<char> = var.chars().collect();
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
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(s.clone()))?));
        } else if chars[i..].starts_with(&var) {
            out.push(Tok::Var);
            i += var.len();
        } else if "+-*/^".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '(' {
            out.push(Tok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = &acc / &d;
                }
                Some(Tok::Var) | Some(Tok::LParen) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.next() {
                Some(Tok::Num(k)) => u32::try_from(k).map_err(|_| Error::Parse("exponent too large".into()))?,
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Tok::Num(k)) => Ok(RatFunc::constant(Rational::from_integer(k))),
            Some(Tok::Var) => Ok(RatFunc::from_poly(Poly::var())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parse a rational function of `var`.
pub fn parse_ratfunc(src: &str, var: &str) -> Result<RatFunc> {
    let toks = lex(src, var)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(e)
}

/// Parse a polynomial of `var`; rejects genuine rational functions.
pub fn parse_poly(src: &str, var: &str) -> Result<Poly> {
    parse_ratfunc(src, var)?
        .as_poly()
        .ok_or_else(|| Error::Parse(format!("`{src}` is not a polynomial")))
}

/// Parse a polynomial that must have integer coefficients.
pub fn parse_int_poly(src: &str, var: &str) -> Result<Poly> {
    let p = parse_poly(src, var)?;
    if !p.is_integral() {
        return Err(Error::Parse(format!("`{src}` has non-integer coefficients")));
    }
    Ok(p)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};

    #[test]
    fn parses_products_and_powers() {
        let p = parse_poly("3(2n + 1)", "n").unwrap();
        assert_eq!(p, Poly::from_ints(&[3, 6]));
        let q = parse_poly("(n+1)^4*(55*(n+2)^2 + 33*(n+2) + 6)", "n").unwrap();
        assert_eq!(q.degree(), Some(6));
        assert_eq!(q.eval_int(0), int(55 * 4 + 66 + 6));
        assert_eq!(parse_poly("-n^2 + 2*n - 1", "n").unwrap(), Poly::from_ints(&[-1, 2, -1]));
        assert_eq!(parse_poly("1/2*n", "n").unwrap(), Poly::new(vec![int(0), rat(1, 2)]));
    }

    #[test]
    fn rational_functions() {
        let f = parse_ratfunc("(n+1)/(n+2)", "n").unwrap();
        assert_eq!(f.eval(&int(0)), Some(rat(1, 2)));
        assert!(parse_poly("1/(n+1)", "n").is_err());
        assert!(parse_ratfunc("n +", "n").is_err());
        assert!(parse_ratfunc("n)", "n").is_err());
        assert!(parse_ratfunc("1/0", "n").is_err());
        assert!(parse_int_poly("n/2", "n").is_err());
    }

    #[test]
    fn render_roundtrip() {
        for src in ["6*n^2 - n + 1", "-n^3 - 1/2", "0", "n"] {
            let p = parse_poly(src, "n").unwrap();
            assert_eq!(p.render("n"), src);
        }
        let f = parse_ratfunc("(1)/(2*x + 1)", "x").unwrap();
        assert_eq!(f.render("x"), "(1)/(2*x + 1)");
    }
}
