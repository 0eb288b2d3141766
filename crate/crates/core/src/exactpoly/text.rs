//! Text form of polynomials.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! Multiplication must be written out: `2*x`, never `2x` or `x y`. The
//! printer emits terms in descending graded-lex order using the same
//! grammar, so `parse(print(p)) == p`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::poly::{Polynomial, Rational};
use super::ring::Ring;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 128;
/// Largest total degree a parsed polynomial may reach.
pub const MAX_DEGREE: u32 = 128;
/// Bound on `terms(a) * terms(b)` for a single product while parsing.
const MAX_PRODUCT_WORK: usize = 1 << 18;
const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    col_offset: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        while let Some(&(pos, ch)) = self.chars.peek() {
            let col = self.src[..pos].chars().count();
            match ch {
                c if c.is_whitespace() => {
                    self.chars.next();
                }
                '0'..='9' => {
                    let mut end = pos;
                    while let Some(&(p, c)) = self.chars.peek() {
                        if c.is_ascii_digit() {
                            end = p + c.len_utf8();
                            self.chars.next();
                        } else {
                            break;
                        }
                    }
                    let n: BigInt = self.src[pos..end].parse().expect("digits");
                    out.push((Tok::Int(n), col));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut end = pos;
                    while let Some(&(p, c)) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            end = p + c.len_utf8();
                            self.chars.next();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Ident(self.src[pos..end].to_string()), col));
                }
                _ => {
                    let tok = match ch {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '/' => Tok::Slash,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        other => {
                            return Err(ParseError {
                                line: self.line,
                                column: self.col_offset + col + 1,
                                message: format!("unexpected character {other:?}"),
                            })
                        }
                    };
                    self.chars.next();
                    out.push((tok, col));
                }
            }
        }
        out.push((Tok::End, self.src.chars().count()));
        Ok(out)
    }
}

struct Parser<'r> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'r Ring,
    line: usize,
    col_offset: usize,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.col_offset + self.toks[self.pos].1 + 1,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.unary()?;
            acc = self.product(&acc, &rhs)?;
        }
        match self.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                Err(self.error("implicit multiplication is not allowed; write '*'"))
            }
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Tok::Minus | Tok::Plus => {
                let neg = self.bump() == Tok::Minus;
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(self.error("expression nested too deeply"));
                }
                let inner = self.unary()?;
                self.depth -= 1;
                Ok(if neg { -inner } else { inner })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a non-negative integer exponent"));
            }
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(self.error(format!("exponent larger than {MAX_EXPONENT}"))),
        };
        if u64::from(base.degree()) * u64::from(e) > u64::from(MAX_DEGREE) {
            return Err(self.error(format!("degree exceeds {MAX_DEGREE}")));
        }
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = self.product(&acc, &base)?;
        }
        Ok(acc)
    }

    fn product(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial, ParseError> {
        if a.degree() + b.degree() > MAX_DEGREE {
            return Err(self.error(format!("degree exceeds {MAX_DEGREE}")));
        }
        if a.num_terms().saturating_mul(b.num_terms()) > MAX_PRODUCT_WORK {
            return Err(self.error("expression too large to expand"));
        }
        Ok(a * b)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = match self.peek().clone() {
                        Tok::Int(d) => d,
                        _ => return Err(self.error("expected an integer denominator")),
                    };
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    self.bump();
                    Ok(Polynomial::constant(self.ring, Rational::new(n, d)))
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
                }
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var_at(self.ring, i))
                }
                None => Err(self.error(format!(
                    "unknown variable {name:?}; expected one of {}",
                    self.ring.vars().join(" ")
                ))),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            Tok::Slash => Err(self.error("'/' is only allowed inside a rational literal")),
            t => Err(self.error(format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Caret => "'^'",
        Tok::Slash => "'/'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

/// Parses `src` as a polynomial over `ring`.
pub fn parse(src: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    parse_at(src, ring, 1, 0)
}

/// Like [`parse`], reporting positions as if `src` started at the given line
/// and zero-based column.
pub fn parse_at(
    src: &str,
    ring: &Ring,
    line: usize,
    col_offset: usize,
) -> Result<Polynomial, ParseError> {
    let toks = Lexer { chars: src.char_indices().peekable(), src, line, col_offset }.tokens()?;
    let mut p = Parser { toks, pos: 0, ring, line, col_offset, depth: 0 };
    if *p.peek() == Tok::End {
        return Err(p.error("empty polynomial"));
    }
    let out = p.expr()?;
    match p.peek() {
        Tok::End => Ok(out),
        Tok::RParen => Err(p.error("unbalanced ')'")),
        t => Err(p.error(format!("unexpected {}", describe(t)))),
    }
}

fn write_rational(out: &mut String, c: &Rational) {
    if c.denom().is_one() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

/// Canonical text: terms in descending graded-lex order.
pub fn print(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.ring().vars();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mut wrote = false;
        if m.is_one() || !a.is_one() {
            write_rational(&mut out, &a);
            wrote = true;
        }
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                out.push('*');
            }
            out.push_str(&vars[i]);
            if e > 1 {
                write!(out, "^{e}").unwrap();
            }
            wrote = true;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::new(["x", "y"])
    }

    #[test]
    fn round_trip_examples() {
        for s in ["x^2 - 1", "-3/2*x*y^2 + x - 7", "0", "x", "-1", "2/3"] {
            let p = parse(s, &ring()).unwrap();
            assert_eq!(print(&p), s);
            assert_eq!(parse(&print(&p), &ring()).unwrap(), p);
        }
    }

    #[test]
    fn operator_precedence() {
        let r = ring();
        assert_eq!(parse("-x^2", &r).unwrap(), -parse("x^2", &r).unwrap());
        assert_eq!(parse("2*(x+y)^2", &r).unwrap(), parse("2*x^2+4*x*y+2*y^2", &r).unwrap());
        assert_eq!(parse("x - -y", &r).unwrap(), parse("x+y", &r).unwrap());
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let e = parse("2x", &ring()).unwrap_err();
        assert_eq!(e.column, 2);
        assert!(parse("x y", &ring()).is_err());
        assert!(parse("(x)(y)", &ring()).is_err());
    }

    #[test]
    fn bad_inputs() {
        let r = ring();
        assert!(parse("", &r).is_err());
        assert!(parse("x +", &r).is_err());
        assert!(parse("z", &r).is_err());
        assert!(parse("1/0", &r).is_err());
        assert!(parse("x/2", &r).is_err());
        assert!(parse("x^-1", &r).is_err());
        assert!(parse("(x+1", &r).is_err());
        assert!(parse("x)", &r).is_err());
        assert!(parse("x^1000", &r).is_err());
        assert!(parse("(x^200)^2", &r).is_err());
        assert!(parse(&"(".repeat(5000), &r).is_err());
        assert!(parse(&"-".repeat(5000), &r).is_err());
    }

    #[test]
    fn error_positions_are_one_based() {
        let e = parse_at("x + ?", &ring(), 4, 10).unwrap_err();
        assert_eq!((e.line, e.column), (4, 15));
    }
}
