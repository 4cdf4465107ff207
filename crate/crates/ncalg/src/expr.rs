//! Expression syntax for command-line input: a small grammar of sums,
//! products, powers, rational literals, generators, and the built-in
//! `S4` macro, lowered onto `FreePoly` over any scalar field.
//!
//! Grammar:
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := nat ['/' nat] | ident | '(' poly ')'
//! ident  := 'x' | 'y' | 'z' (aliases for z0, z1, z2) | 'z' nat | 'S4'
//! ```
//! The optional leading minus makes every canonical text form of a
//! polynomial valid input, so parse after print is the identity.

use crate::field::Field;
use crate::freepoly::{standard_polynomial, FreePoly};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal; signs come from `Neg` or `Sub`.
    Num { num: i64, den: u64 },
    Gen(usize),
    S4,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub const MAX_EXPONENT: u32 = 65535;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    UnknownGenerator { found: String, alphabet: Option<usize> },
    ExponentOverflow { value: u64 },
    ZeroDenominator,
    LiteralOverflow { value: String },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {}", expected.join(" or "), found)
            }
            ParseErrorKind::UnknownGenerator { found, alphabet: Some(s) } => {
                write!(f, "generator '{found}' outside the {s}-letter alphabet")
            }
            ParseErrorKind::UnknownGenerator { found, alphabet: None } => {
                write!(f, "unknown generator '{found}'")
            }
            ParseErrorKind::ExponentOverflow { value } => {
                write!(f, "exponent {value} exceeds the cap {MAX_EXPONENT}")
            }
            ParseErrorKind::ZeroDenominator => write!(f, "denominator must be nonzero"),
            ParseErrorKind::LiteralOverflow { value } => {
                write!(f, "integer literal {value} out of range")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Int(u64),
    Ident(String),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match ch {
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '+' => {
                bump(&mut chars);
                toks.push((Tok::Plus, tl, tc));
            }
            '-' => {
                bump(&mut chars);
                toks.push((Tok::Minus, tl, tc));
            }
            '*' => {
                bump(&mut chars);
                toks.push((Tok::Star, tl, tc));
            }
            '^' => {
                bump(&mut chars);
                toks.push((Tok::Caret, tl, tc));
            }
            '/' => {
                bump(&mut chars);
                toks.push((Tok::Slash, tl, tc));
            }
            '(' => {
                bump(&mut chars);
                toks.push((Tok::LParen, tl, tc));
            }
            ')' => {
                bump(&mut chars);
                toks.push((Tok::RParen, tl, tc));
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let n: u64 = digits.parse().map_err(|_| ParseError {
                    line: tl,
                    col: tc,
                    kind: ParseErrorKind::LiteralOverflow { value: digits.clone() },
                })?;
                toks.push((Tok::Int(n), tl, tc));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(name), tl, tc));
            }
            other => {
                return Err(ParseError {
                    line: tl,
                    col: tc,
                    kind: ParseErrorKind::Syntax {
                        expected: vec!["a token".into()],
                        found: format!("'{other}'"),
                    },
                });
            }
        }
    }
    toks.push((Tok::End, line, col));
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize, usize) {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax_err(&self, expected: &[&str]) -> ParseError {
        let (tok, line, col) = self.peek();
        ParseError {
            line: *line,
            col: *col,
            kind: ParseErrorKind::Syntax {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: tok.describe(),
            },
        }
    }
}

/// Parse without an alphabet bound; generator indices are whatever the
/// text names. `parse_expr` adds the bound check.
pub fn parse_raw(text: &str) -> Result<Expr, ParseError> {
    parse_with_bound(text, None)
}

/// Parse and require every generator to fit the declared alphabet.
pub fn parse_expr(text: &str, s: usize) -> Result<Expr, ParseError> {
    parse_with_bound(text, Some(s))
}

fn parse_with_bound(text: &str, bound: Option<usize>) -> Result<Expr, ParseError> {
    let mut lx = lex(text)?;
    let e = parse_poly(&mut lx, bound)?;
    match lx.peek().0 {
        Tok::End => Ok(e),
        _ => Err(lx.syntax_err(&["'+'", "'-'", "end of input"])),
    }
}

/// Smallest alphabet size that supports every generator in `e`.
pub fn required_alphabet(e: &Expr) -> usize {
    match e {
        Expr::Num { .. } => 0,
        Expr::Gen(i) => i + 1,
        Expr::S4 => 4,
        Expr::Neg(a) | Expr::Pow(a, _) => required_alphabet(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            required_alphabet(a).max(required_alphabet(b))
        }
    }
}

fn parse_poly(lx: &mut Lexer, bound: Option<usize>) -> Result<Expr, ParseError> {
    let mut acc = if matches!(lx.peek().0, Tok::Minus) {
        lx.advance();
        Expr::Neg(Box::new(parse_term(lx, bound)?))
    } else {
        parse_term(lx, bound)?
    };
    loop {
        match lx.peek().0 {
            Tok::Plus => {
                lx.advance();
                let rhs = parse_term(lx, bound)?;
                acc = Expr::Add(Box::new(acc), Box::new(rhs));
            }
            Tok::Minus => {
                lx.advance();
                let rhs = parse_term(lx, bound)?;
                acc = Expr::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer, bound: Option<usize>) -> Result<Expr, ParseError> {
    let mut acc = parse_factor(lx, bound)?;
    while matches!(lx.peek().0, Tok::Star) {
        lx.advance();
        let rhs = parse_factor(lx, bound)?;
        acc = Expr::Mul(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, bound: Option<usize>) -> Result<Expr, ParseError> {
    let atom = parse_atom(lx, bound)?;
    if matches!(lx.peek().0, Tok::Caret) {
        lx.advance();
        let (tok, line, col) = lx.peek().clone();
        match tok {
            Tok::Int(n) => {
                if n > MAX_EXPONENT as u64 {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::ExponentOverflow { value: n },
                    });
                }
                lx.advance();
                Ok(Expr::Pow(Box::new(atom), n as u32))
            }
            _ => Err(lx.syntax_err(&["natural number"])),
        }
    } else {
        Ok(atom)
    }
}

fn parse_atom(lx: &mut Lexer, bound: Option<usize>) -> Result<Expr, ParseError> {
    let (tok, line, col) = lx.peek().clone();
    match tok {
        Tok::Int(n) => {
            lx.advance();
            let num = i64::try_from(n).map_err(|_| ParseError {
                line,
                col,
                kind: ParseErrorKind::LiteralOverflow { value: n.to_string() },
            })?;
            if matches!(lx.peek().0, Tok::Slash) {
                lx.advance();
                let (dt, dl, dc) = lx.peek().clone();
                match dt {
                    Tok::Int(0) => Err(ParseError {
                        line: dl,
                        col: dc,
                        kind: ParseErrorKind::ZeroDenominator,
                    }),
                    Tok::Int(d) => {
                        lx.advance();
                        Ok(Expr::Num { num, den: d })
                    }
                    _ => Err(lx.syntax_err(&["natural number"])),
                }
            } else {
                Ok(Expr::Num { num, den: 1 })
            }
        }
        Tok::Ident(name) => {
            lx.advance();
            let out_of_range = |found: String| ParseError {
                line,
                col,
                kind: ParseErrorKind::UnknownGenerator {
                    found,
                    alphabet: bound,
                },
            };
            let gen_checked = |idx: usize, name: String| match bound {
                Some(s) if idx >= s => Err(out_of_range(name)),
                _ => Ok(Expr::Gen(idx)),
            };
            match name.as_str() {
                "x" => gen_checked(0, name),
                "y" => gen_checked(1, name),
                "z" => gen_checked(2, name),
                "S4" => match bound {
                    Some(s) if s < 4 => Err(out_of_range(name)),
                    _ => Ok(Expr::S4),
                },
                _ => {
                    if let Some(rest) = name.strip_prefix('z') {
                        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                            let idx: usize = rest.parse().map_err(|_| ParseError {
                                line,
                                col,
                                kind: ParseErrorKind::LiteralOverflow { value: rest.to_string() },
                            })?;
                            return gen_checked(idx, name);
                        }
                    }
                    Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::UnknownGenerator {
                            found: name,
                            alphabet: None,
                        },
                    })
                }
            }
        }
        Tok::LParen => {
            lx.advance();
            let inner = parse_poly(lx, bound)?;
            if matches!(lx.peek().0, Tok::RParen) {
                lx.advance();
                Ok(inner)
            } else {
                Err(lx.syntax_err(&["')'"]))
            }
        }
        _ => Err(lx.syntax_err(&["number", "generator", "'('"])),
    }
}

/// Expand an expression into a polynomial over `field` with alphabet `s`.
/// Literal denominators that vanish in the field are domain errors.
pub fn lower<K: Field>(e: &Expr, field: K, s: usize) -> crate::error::Result<FreePoly<K>> {
    assert!(required_alphabet(e) <= s, "expression uses generators outside the alphabet");
    assert!(s >= 1, "alphabet must be nonempty");
    match e {
        Expr::Num { num, den } => {
            let c = field.from_ratio(*num, *den)?;
            Ok(FreePoly::constant(field, s, c))
        }
        Expr::Gen(i) => Ok(FreePoly::gen(field, s, *i as u8)),
        Expr::S4 => {
            // re-spread over the requested alphabet, which may be wider
            let s4 = standard_polynomial(field.clone(), 4);
            Ok(FreePoly::from_terms(
                field,
                s,
                s4.terms().map(|(w, c)| (w.clone(), c.clone())),
            ))
        }
        Expr::Neg(a) => Ok(-&lower(a, field.clone(), s)?),
        Expr::Add(a, b) => Ok(&lower(a, field.clone(), s)? + &lower(b, field.clone(), s)?),
        Expr::Sub(a, b) => Ok(&lower(a, field.clone(), s)? - &lower(b, field.clone(), s)?),
        Expr::Mul(a, b) => Ok(&lower(a, field.clone(), s)? * &lower(b, field.clone(), s)?),
        Expr::Pow(a, k) => Ok(lower(a, field.clone(), s)?.pow(*k)),
    }
}

/// One-call convenience: parse with an explicit alphabet, or infer the
/// smallest one that fits when `s` is `None`.
pub fn parse_poly_text<K: Field>(
    text: &str,
    field: K,
    s: Option<usize>,
) -> std::result::Result<FreePoly<K>, String> {
    match s {
        Some(s) => {
            let e = parse_expr(text, s).map_err(|e| e.to_string())?;
            lower(&e, field, s).map_err(|e| e.to_string())
        }
        None => {
            let e = parse_raw(text).map_err(|e| e.to_string())?;
            let s = required_alphabet(&e).max(1);
            lower(&e, field, s).map_err(|e| e.to_string())
        }
    }
}
