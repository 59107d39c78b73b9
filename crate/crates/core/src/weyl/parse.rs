//! Text syntax for polynomials and operators.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ('^' nat)?
//! atom     := rational | var | dvar | 's' | '(' expr ')'
//! rational := nat ('/' nat)?
//! dvar     := 'd' var | 'd' index
//! ```
//!
//! Products are evaluated left to right in the Weyl algebra, so `dx*x` means
//! `x·∂_x + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{MultiPoly, Rational, UniPoly};

use super::diffop::op_multiply;
use super::DiffOp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Result of [`parse`]: a plain polynomial unless a `∂` token occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Poly(MultiPoly),
    Op(DiffOp),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Nat(n) => write!(f, "number '{n}'"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let begin = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[begin..i].iter().collect();
            column += i - begin;
            Tok::Nat(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let begin = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - begin;
            Tok::Ident(chars[begin..i].iter().collect())
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        found: format!("character '{other}'"),
                        expected: vec!["a term".into()],
                    })
                }
            };
            i += 1;
            column += 1;
            t
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: &'a [String],
    first_partial: Option<(usize, usize)>,
}

const ATOM_START: [&str; 4] = ["number", "variable", "'d<variable>'", "'('"];

impl<'a> Parser<'a> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &[&str]) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            found: s.tok.to_string(),
            expected: expected.iter().map(|e| e.to_string()).collect(),
        }
    }

    fn expr(&mut self) -> Result<DiffOp, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
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
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffOp, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = op_multiply(&acc, &rhs).expect("same arity");
                }
                Tok::Nat(_) | Tok::Ident(_) | Tok::LParen => {
                    let rhs = self.factor()?;
                    acc = op_multiply(&acc, &rhs).expect("same arity");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<DiffOp, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek() {
            Tok::Nat(n) => n.to_u32(),
            _ => None,
        };
        let Some(e) = e else {
            return Err(self.error_here(&["natural number exponent"]));
        };
        self.bump();
        let mut acc = DiffOp::one(self.nvars());
        for _ in 0..e {
            acc = op_multiply(&acc, &base).expect("same arity");
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<DiffOp, ParseError> {
        let n = self.nvars();
        match self.peek().clone() {
            Tok::Nat(num) => {
                self.bump();
                let mut value = Rational::from_integer(num);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Nat(den) if !den.is_zero() => {
                            self.bump();
                            value /= Rational::from_integer(den);
                        }
                        _ => return Err(self.error_here(&["nonzero natural denominator"])),
                    }
                }
                Ok(DiffOp::scalar(n, UniPoly::constant(value)))
            }
            Tok::Ident(name) => {
                let op = self.resolve(&name)?;
                self.bump();
                Ok(op)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error_here(&["')'", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error_here(&ATOM_START)),
        }
    }

    fn resolve(&mut self, name: &str) -> Result<DiffOp, ParseError> {
        let n = self.nvars();
        if let Some(i) = self.names.iter().position(|v| v == name) {
            return Ok(DiffOp::x(n, i));
        }
        if name == "s" {
            return Ok(DiffOp::scalar(n, UniPoly::s()));
        }
        if let Some(rest) = name.strip_prefix('d') {
            let idx = self.names.iter().position(|v| v == rest).or_else(|| {
                rest.parse::<usize>()
                    .ok()
                    .filter(|&k| (1..=n).contains(&k))
                    .map(|k| k - 1)
            });
            if let Some(i) = idx {
                let here = &self.toks[self.pos];
                self.first_partial.get_or_insert((here.line, here.column));
                return Ok(DiffOp::d(n, i));
            }
        }
        Err(self.error_here(&["declared variable", "'d<variable>'", "'s'"]))
    }
}

fn parse_inner(
    text: &str,
    names: &[String],
) -> Result<(DiffOp, Option<(usize, usize)>), ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        names,
        first_partial: None,
    };
    let op = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok((op, p.first_partial))
}

/// Parses `text` over the given variable names.
pub fn parse(text: &str, names: &[String]) -> Result<Parsed, ParseError> {
    let (op, partial) = parse_inner(text, names)?;
    match partial {
        Some(_) => Ok(Parsed::Op(op)),
        None => Ok(Parsed::Poly(op.to_poly().expect("no partials were parsed"))),
    }
}

/// Parses an operator; plain polynomials are accepted as multiplication operators.
pub fn parse_op(text: &str, names: &[String]) -> Result<DiffOp, ParseError> {
    Ok(match parse(text, names)? {
        Parsed::Op(op) => op,
        Parsed::Poly(p) => DiffOp::from_poly(&p),
    })
}

/// Parses a polynomial; `∂` tokens are rejected.
pub fn parse_poly(text: &str, names: &[String]) -> Result<MultiPoly, ParseError> {
    match parse_inner(text, names)? {
        (op, None) => Ok(op.to_poly().expect("no partials were parsed")),
        (_, Some((line, column))) => Err(ParseError {
            line,
            column,
            found: "partial derivative".into(),
            expected: vec!["polynomial term".into()],
        }),
    }
}

/// Identifiers occurring in `text`, other than `s`, sorted and deduplicated.
pub fn identifiers(text: &str) -> Result<Vec<String>, ParseError> {
    let mut names: Vec<String> = lex(text)?
        .into_iter()
        .filter_map(|s| match s.tok {
            Tok::Ident(name) if name != "s" => Some(name),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    Ok(names)
}
