//! Expression grammar for scalar and matrix inputs.
//!
//! Precedence: ^ binds tightest, then unary minus, then * and / (left
//! associative), then + and - (left associative). Exponents must be
//! nonnegative integer literals. Matrices are bracketed row lists.
//! Whitespace is insignificant; error positions are byte offsets.

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{BigRat, Rationals};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at byte {offset}: expected {expected}")]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Int(BigInt),
    Var,
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedInput {
    Scalar(ExprAst),
    Matrix(Vec<Vec<ExprAst>>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
    pos: usize,
}

fn lex(text: &str) -> Result<Lexer, SyntaxError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            b'z' | b'x' => {
                toks.push((i, Tok::Var));
                i += 1;
            }
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'[' => {
                toks.push((i, Tok::LBracket));
                i += 1;
            }
            b']' => {
                toks.push((i, Tok::RBracket));
                i += 1;
            }
            b',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            _ => {
                return Err(SyntaxError {
                    offset: i,
                    expected: "digit, variable, operator or bracket".to_string(),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        end: bytes.len(),
        pos: 0,
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(SyntaxError {
                offset: self.offset(),
                expected: what.to_string(),
            })
        }
    }

    fn err(&self, what: &str) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: what.to_string(),
        }
    }
}

/// Parse a scalar expression or a bracketed matrix.
pub fn parse_input(text: &str) -> Result<ParsedInput, SyntaxError> {
    let mut lx = lex(text)?;
    if lx.toks.is_empty() {
        return Err(SyntaxError {
            offset: 0,
            expected: "nonempty expression".to_string(),
        });
    }
    let out = if lx.peek() == Some(&Tok::LBracket) {
        ParsedInput::Matrix(parse_matrix(&mut lx)?)
    } else {
        ParsedInput::Scalar(parse_expr(&mut lx)?)
    };
    if lx.pos != lx.toks.len() {
        return Err(lx.err("end of input"));
    }
    Ok(out)
}

/// Parse a scalar expression only.
pub fn parse_expression(text: &str) -> Result<ExprAst, SyntaxError> {
    match parse_input(text)? {
        ParsedInput::Scalar(e) => Ok(e),
        ParsedInput::Matrix(_) => Err(SyntaxError {
            offset: 0,
            expected: "scalar expression, found matrix".to_string(),
        }),
    }
}

fn parse_matrix(lx: &mut Lexer) -> Result<Vec<Vec<ExprAst>>, SyntaxError> {
    lx.expect(Tok::LBracket, "[")?;
    let mut rows = Vec::new();
    loop {
        lx.expect(Tok::LBracket, "[ starting a row")?;
        let mut row = Vec::new();
        loop {
            row.push(parse_expr(lx)?);
            match lx.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => {
                    lx.pos = lx.pos.saturating_sub(1);
                    return Err(lx.err(", or ] in a row"));
                }
            }
        }
        rows.push(row);
        match lx.next() {
            Some(Tok::Comma) => continue,
            Some(Tok::RBracket) => break,
            _ => {
                lx.pos = lx.pos.saturating_sub(1);
                return Err(lx.err(", or ] after a row"));
            }
        }
    }
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(SyntaxError {
            offset: 0,
            expected: "rows of equal length".to_string(),
        });
    }
    Ok(rows)
}

fn parse_expr(lx: &mut Lexer) -> Result<ExprAst, SyntaxError> {
    let mut acc = parse_term(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.pos += 1;
                let rhs = parse_term(lx)?;
                acc = ExprAst::Add(Box::new(acc), Box::new(rhs));
            }
            Some(Tok::Minus) => {
                lx.pos += 1;
                let rhs = parse_term(lx)?;
                acc = ExprAst::Sub(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<ExprAst, SyntaxError> {
    let mut acc = parse_factor(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.pos += 1;
                let rhs = parse_factor(lx)?;
                acc = ExprAst::Mul(Box::new(acc), Box::new(rhs));
            }
            Some(Tok::Slash) => {
                lx.pos += 1;
                let rhs = parse_factor(lx)?;
                acc = ExprAst::Div(Box::new(acc), Box::new(rhs));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_factor(lx: &mut Lexer) -> Result<ExprAst, SyntaxError> {
    if lx.peek() == Some(&Tok::Minus) {
        lx.pos += 1;
        let inner = parse_factor(lx)?;
        return Ok(ExprAst::Neg(Box::new(inner)));
    }
    parse_power(lx)
}

fn parse_power(lx: &mut Lexer) -> Result<ExprAst, SyntaxError> {
    let base = parse_primary(lx)?;
    if lx.peek() == Some(&Tok::Caret) {
        lx.pos += 1;
        let exp = parse_exponent(lx)?;
        return Ok(ExprAst::Pow(Box::new(base), exp));
    }
    Ok(base)
}

fn parse_exponent(lx: &mut Lexer) -> Result<u32, SyntaxError> {
    let parenthesized = lx.peek() == Some(&Tok::LParen);
    if parenthesized {
        lx.pos += 1;
    }
    let n = match lx.peek() {
        Some(Tok::Int(n)) => {
            let v = n.clone();
            lx.pos += 1;
            u32::try_from(&v).map_err(|_| lx.err("exponent fitting in u32"))?
        }
        _ => return Err(lx.err("nonnegative integer exponent")),
    };
    if parenthesized {
        if lx.peek() != Some(&Tok::RParen) {
            return Err(lx.err("nonnegative integer exponent"));
        }
        lx.pos += 1;
    }
    Ok(n)
}

fn parse_primary(lx: &mut Lexer) -> Result<ExprAst, SyntaxError> {
    match lx.peek().cloned() {
        Some(Tok::Int(n)) => {
            lx.pos += 1;
            Ok(ExprAst::Int(n))
        }
        Some(Tok::Var) => {
            lx.pos += 1;
            Ok(ExprAst::Var)
        }
        Some(Tok::LParen) => {
            lx.pos += 1;
            let inner = parse_expr(lx)?;
            lx.expect(Tok::RParen, ")")?;
            Ok(inner)
        }
        _ => Err(lx.err("integer, variable or (")),
    }
}

/// Evaluate an AST to a rational function; division by the zero function is
/// rejected here rather than at parse time.
pub fn eval(ast: &ExprAst) -> Result<RatFunc<Rationals>, String> {
    let q = Rationals;
    Ok(match ast {
        ExprAst::Int(n) => RatFunc::constant(&q, BigRat::from_integer(n.clone())),
        ExprAst::Var => RatFunc::var(&q),
        ExprAst::Neg(a) => eval(a)?.neg(&q),
        ExprAst::Add(a, b) => eval(a)?.add(&q, &eval(b)?),
        ExprAst::Sub(a, b) => eval(a)?.sub(&q, &eval(b)?),
        ExprAst::Mul(a, b) => eval(a)?.mul(&q, &eval(b)?),
        ExprAst::Div(a, b) => {
            let den = eval(b)?;
            eval(a)?
                .div(&q, &den)
                .ok_or_else(|| "division by the zero polynomial".to_string())?
        }
        ExprAst::Pow(a, e) => eval(a)?.pow(&q, *e as usize),
    })
}

pub fn eval_matrix(rows: &[Vec<ExprAst>]) -> Result<Mat<RatFunc<Rationals>>, String> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.len());
        for e in r {
            row.push(eval(e)?);
        }
        out.push(row);
    }
    Ok(Mat::from_rows(out))
}

/// Evaluate to a polynomial; errors when a denominator survives.
pub fn eval_polynomial(ast: &ExprAst) -> Result<Poly<Rationals>, String> {
    let f = eval(ast)?;
    if !f.is_polynomial() {
        return Err("expected a polynomial, found a proper rational function".to_string());
    }
    Ok(f.num().clone())
}

/// Canonical rendering with minimal parentheses; parse(render(parse(t)))
/// equals parse(t).
pub fn render(ast: &ExprAst) -> String {
    fn prec(a: &ExprAst) -> u8 {
        match a {
            ExprAst::Add(..) | ExprAst::Sub(..) => 1,
            ExprAst::Mul(..) | ExprAst::Div(..) => 2,
            ExprAst::Neg(..) => 3,
            ExprAst::Pow(..) => 4,
            ExprAst::Int(..) | ExprAst::Var => 5,
        }
    }
    fn go(a: &ExprAst, parent: u8, out: &mut String) {
        let p = prec(a);
        let need = p < parent;
        if need {
            out.push('(');
        }
        match a {
            ExprAst::Int(n) => out.push_str(&n.to_string()),
            ExprAst::Var => out.push('z'),
            ExprAst::Neg(x) => {
                out.push('-');
                go(x, 3, out);
            }
            ExprAst::Add(l, r) => {
                go(l, 1, out);
                out.push_str(" + ");
                go(r, 2, out);
            }
            ExprAst::Sub(l, r) => {
                go(l, 1, out);
                out.push_str(" - ");
                go(r, 2, out);
            }
            ExprAst::Mul(l, r) => {
                go(l, 2, out);
                out.push('*');
                go(r, 3, out);
            }
            ExprAst::Div(l, r) => {
                go(l, 2, out);
                out.push('/');
                go(r, 3, out);
            }
            ExprAst::Pow(b, e) => {
                go(b, 5, out);
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if need {
            out.push(')');
        }
    }
    let mut out = String::new();
    go(ast, 0, &mut out);
    out
}
