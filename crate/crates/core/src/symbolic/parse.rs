use thiserror::Error;

use super::frac::RadFrac;
use super::poly::Var;
use crate::field::Rational;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("unexpected character '{0}' at {1}")]
    BadChar(char, usize),
    #[error("unknown identifier '{0}'")]
    UnknownIdent(String),
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected token at {0}")]
    Unexpected(usize),
    #[error("exponent must be a non-negative integer at {0}")]
    BadExponent(usize),
    #[error("division by zero")]
    DivByZero,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n: num_bigint::BigInt = s.parse().map_err(|_| ParseError::Unexpected(start))?;
            out.push((Tok::Num(Rational::from_integer(n)), start));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), i));
            i += 1;
        } else {
            return Err(ParseError::BadChar(ch, i));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(usize::MAX)
    }

    fn expr(&mut self) -> Result<RadFrac, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add_ref(&rhs) } else { acc.sub_ref(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RadFrac, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '*' && c != '/' {
                break;
            }
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = acc.mul_ref(&rhs);
            } else {
                if rhs.is_zero() {
                    return Err(ParseError::DivByZero);
                }
                acc = acc.div_ref(&rhs);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RadFrac, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg_ref());
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RadFrac, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let at = self.at();
            match self.toks.get(self.pos).map(|t| t.0.clone()) {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.pos += 1;
                    let e: u32 = n.numer().try_into().map_err(|_| ParseError::BadExponent(at))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::BadExponent(at)),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RadFrac, ParseError> {
        let at = self.at();
        let tok = self.toks.get(self.pos).map(|t| t.0.clone()).ok_or(ParseError::Eof)?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(RadFrac::constant(n)),
            Tok::Ident(s) => match s.as_str() {
                "w1" => Ok(RadFrac::w1()),
                "w2" => Ok(RadFrac::w2()),
                _ => Var::from_name(&s).map(RadFrac::var).ok_or(ParseError::UnknownIdent(s)),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    None => Err(ParseError::Eof),
                    _ => Err(ParseError::Unexpected(self.at())),
                }
            }
            _ => Err(ParseError::Unexpected(at)),
        }
    }
}

/// Parses a formula with `+ - * / ^`, parentheses, integer literals, the variable names of `Var`, and `w1`, `w2`.
pub fn parse(src: &str) -> Result<RadFrac, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::Unexpected(p.at()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;
    use crate::symbolic::RadPoly;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*x^2 - (a - b)/2").unwrap();
        let x = RadFrac::var(Var::X);
        let expect = RadFrac::constant(int(1))
            .add_ref(&x.mul_ref(&x).scale(&int(2)))
            .sub_ref(&RadFrac::var(Var::A).sub_ref(&RadFrac::var(Var::B)).scale(&Rational::new(1.into(), 2.into())));
        assert!(e.sub_ref(&expect).is_zero());
    }

    #[test]
    fn radicals() {
        let e = parse("w1^2 - 2*a*b").unwrap();
        assert!(e.is_zero());
        let e = parse("w2*w2 + c^2").unwrap();
        assert_eq!(e.numerator(), &RadPoly::var(Var::A).mul_ref(&RadPoly::var(Var::B)).scale(&int(2)));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("x +").unwrap_err(), ParseError::Eof);
        assert!(matches!(parse("q*x"), Err(ParseError::UnknownIdent(_))));
        assert!(matches!(parse("x^y"), Err(ParseError::BadExponent(_))));
        assert!(matches!(parse("x $ y"), Err(ParseError::BadChar('$', 2))));
        assert_eq!(parse("x/0").unwrap_err(), ParseError::DivByZero);
    }
}
