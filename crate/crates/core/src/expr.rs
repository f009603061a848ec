//! Text grammar for elements: parser and printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := INT | 'i' | 'k' | gen | '(' expr ')'
//! gen    := 'L[' i ',' i ']' | 'x[' i ']' | 'eb' | 'ebinv'
//!         | 'P[' i ']' | 'M[' i ',' i ']' | 'D' | 'F' | 'Finv'
//! ```
//! A divisor must evaluate to an invertible monomial scalar such as `k` or `3*i`.

use crate::error::{Error, Result};
use crate::ncalg::algebra::{Algebra, Element, Key};
use crate::ncalg::gb::NV;
use crate::ncalg::relations::{Dual, Group};
use crate::ring::{Scalar, Q};
use num::{BigInt, One, Signed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sym {
    L(usize, usize),
    X(usize),
    Eb,
    Ebinv,
    P(usize),
    M(usize, usize),
    D,
    F,
    Finv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    I,
    K,
    Gen(Sym),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division, with the source position of the operator.
    Div(Box<Expr>, Box<Expr>, (usize, usize)),
}

/// Resolves generator symbols in a concrete algebra.
pub trait Context {
    fn alg(&self) -> &Algebra;
    fn symbol(&self, s: &Sym) -> Result<Element>;
}

fn unknown(s: &Sym) -> Error {
    Error::UnknownSymbol(format!("{s:?}"))
}

impl Context for Group {
    fn alg(&self) -> &Algebra {
        &self.alg
    }

    fn symbol(&self, s: &Sym) -> Result<Element> {
        match *s {
            Sym::L(a, b) if a < 4 && b < 4 => Ok(self.lam(a, b)),
            Sym::X(a) if a < 4 => Ok(self.x(a)),
            Sym::Eb if self.weyl => Ok(self.eb(1)),
            Sym::Ebinv if self.weyl => Ok(self.eb(-1)),
            _ => Err(unknown(s)),
        }
    }
}

impl Context for Dual {
    fn alg(&self) -> &Algebra {
        &self.alg
    }

    fn symbol(&self, s: &Sym) -> Result<Element> {
        match *s {
            Sym::P(k) if (1..4).contains(&k) => Ok(self.p(k)),
            Sym::M(a, b) if a < 4 && b < 4 => Ok(self.m_up(a, b)),
            Sym::D if self.weyl => Ok(self.d()),
            Sym::F => Ok(self.f(1)),
            Sym::Finv => Ok(self.f(-1)),
            _ => Err(unknown(s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Punct(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            toks.push((Tok::Int(s.parse().expect("digits")), start.0, start.1));
            col += j - i;
            i = j;
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            toks.push((Tok::Ident(s), start.0, start.1));
            col += j - i;
            i = j;
        } else if "+-*/()[],".contains(c) {
            toks.push((Tok::Punct(c), line, col));
            i += 1;
            col += 1;
        } else {
            return Err(Error::SyntaxError {
                line,
                column: col,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    /// Position of the current token, or of the last token at end of input.
    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.1, t.2),
            None => (1, 1),
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::SyntaxError {
            line,
            column,
            message: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{c}'"))
        }
    }

    fn index(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                n.to_string()
                    .parse()
                    .or_else(|_| self.err("index out of range"))
            }
            _ => self.err("expected index"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Punct('/')) {
                let at = self.here();
                self.pos += 1;
                e = Expr::Div(Box::new(e), Box::new(self.unary()?), at);
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Punct('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Punct(c) => self.err(&format!("unexpected '{c}'")),
            Tok::Ident(s) => {
                self.pos += 1;
                let sym = match s.as_str() {
                    "i" => return Ok(Expr::I),
                    "k" => return Ok(Expr::K),
                    "eb" => Sym::Eb,
                    "ebinv" => Sym::Ebinv,
                    "D" => Sym::D,
                    "F" => Sym::F,
                    "Finv" => Sym::Finv,
                    "x" | "P" => {
                        self.expect('[')?;
                        let a = self.index()?;
                        self.expect(']')?;
                        if s == "x" {
                            Sym::X(a)
                        } else {
                            Sym::P(a)
                        }
                    }
                    "L" | "M" => {
                        self.expect('[')?;
                        let a = self.index()?;
                        self.expect(',')?;
                        let b = self.index()?;
                        self.expect(']')?;
                        if s == "L" {
                            Sym::L(a, b)
                        } else {
                            Sym::M(a, b)
                        }
                    }
                    _ => return Err(Error::UnknownSymbol(s)),
                };
                Ok(Expr::Gen(sym))
            }
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr> {
    let lx = lex(text)?;
    let mut p = Parser {
        toks: lx.toks,
        pos: 0,
    };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Evaluates an expression to a normal-form element.
pub fn evaluate(e: &Expr, ctx: &dyn Context) -> Result<Element> {
    let alg = ctx.alg();
    Ok(match e {
        Expr::Int(n) => Element::scalar(Scalar::from_q(Q::from_integer(n.clone()))),
        Expr::I => Element::scalar(Scalar::i()),
        Expr::K => Element::scalar(Scalar::kinv(-1)),
        Expr::Gen(s) => ctx.symbol(s)?,
        Expr::Neg(a) => -evaluate(a, ctx)?,
        Expr::Add(a, b) => evaluate(a, ctx)? + evaluate(b, ctx)?,
        Expr::Sub(a, b) => evaluate(a, ctx)? - evaluate(b, ctx)?,
        Expr::Mul(a, b) => alg.mul(&evaluate(a, ctx)?, &evaluate(b, ctx)?)?,
        Expr::Div(a, b, (line, column)) => {
            let d = evaluate(b, ctx)?;
            let inv = if d.len() == 1 && d.terms().all(|(k, _)| *k == Key::one()) {
                d.constant().inverse()
            } else {
                None
            };
            let Some(inv) = inv else {
                return Err(Error::SyntaxError {
                    line: *line,
                    column: *column,
                    message: "divisor must be an invertible monomial scalar".to_string(),
                });
            };
            evaluate(a, ctx)?.scale(&inv)
        }
    })
}

pub fn parse_element(text: &str, ctx: &dyn Context) -> Result<Element> {
    evaluate(&parse_expression(text)?, ctx)
}

fn fmt_q(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Name of a commutative variable; rotated-frame entries print as combinations of `L`.
fn var_text(alg: &Algebra, v: usize) -> String {
    if let Some(s) = alg.sector() {
        if s.framed {
            let parts: Vec<(String, Q)> = s
                .internal_entry(v / 4, v % 4)
                .into_iter()
                .map(|(w, c)| (format!("L[{},{}]", w / 4, w % 4), c))
                .collect();
            return linear_text(&parts);
        }
    }
    alg.var_names[v].clone()
}

fn linear_text(parts: &[(String, Q)]) -> String {
    if parts.len() == 1 && parts[0].1.is_one() {
        return parts[0].0.clone();
    }
    let mut s = String::from("(");
    for (n, (name, c)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        if n > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        let a = c.abs();
        if a.is_one() {
            s.push_str(name);
        } else {
            s.push_str(&format!("{}*{}", fmt_q(&a), name));
        }
    }
    s.push(')');
    s
}

/// The factors of a normal word, in multiplication order.
pub fn key_text(alg: &Algebra, k: &Key) -> Vec<String> {
    let mut f = Vec::new();
    for v in 0..NV.min(alg.nvars()) {
        for _ in 0..k.mono[v] {
            f.push(var_text(alg, v));
        }
    }
    let un = if k.unit > 0 {
        alg.unit_name.clone()
    } else {
        format!("{}inv", alg.unit_name)
    };
    for _ in 0..k.unit.unsigned_abs() {
        f.push(un.clone());
    }
    for &l in k.word.iter() {
        f.push(alg.letter_names[l as usize].clone());
    }
    f
}

/// Canonical text of an element; `parse ∘ render` is the identity on normal forms.
pub fn render(alg: &Algebra, e: &Element) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (k, c)) in e.terms().enumerate() {
        let mut coef = if c.len() == 1 {
            c.to_string()
        } else {
            format!("({c})")
        };
        let neg = coef.starts_with('-');
        if neg {
            coef.remove(0);
        }
        if n > 0 {
            out.push_str(if neg { " - " } else { " + " });
        } else if neg {
            out.push('-');
        }
        let factors = key_text(alg, k);
        if factors.is_empty() {
            out.push_str(&coef);
        } else {
            if coef != "1" {
                out.push_str(&coef);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Renders a scalar coefficient table entry (used for quotient coordinates).
pub fn render_scalar(s: &Scalar) -> String {
    s.to_string()
}
