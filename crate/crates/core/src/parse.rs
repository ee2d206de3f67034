//! The model text format and the expression grammar.
//!
//! A model file declares one algebra block:
//!
//! ```text
//! algebra quantum_plane {
//!   parameter q;
//!   group Z^2;
//!   cocycle q ^ [[0, 1], [-1, 0]];
//!   generator x degree (1, 0) invertible;
//!   generator y degree (0, 1) invertible;
//!   phi { x -> x; y -> y; x^-1 -> x^-1; y^-1 -> y^-1; }
//!   phiA [[1, 0], [0, 1]];
//!   metric [[x^-2, q*x^-1*y^-1], [x^-1*y^-1, y^-2]];
//!   symplectic dy^dx;
//! }
//! ```
//!
//! Element expressions use `+ - * / ^` with integer exponents; coefficients
//! are scalar expressions in the declared parameter (`q`, `1/(1-q^2)`,
//! `-2`). A `table { i*i -> -1; ... }` block switches the algebra to the
//! finite-basis backend; `poisson { (i,j) -> k; ... }` declares an explicit
//! bracket table. Comments run from `#` to the end of the line.

use std::fmt::Write as _;

use crate::algebra::{AlgebraSpec, Backend, Element, Generator, Mono, PhiMultipliers};
use crate::cochain::Cochain;
use crate::derivation::DerivationBasis;
use crate::error::{Error, Result};
use crate::grading::{CocycleBase, CocycleSpec, GradingGroup};
use crate::metric::Metric;
use crate::model::Model;
use crate::scalar::{rat, Rat, Scalar};
use crate::symplectic::{PoissonStructure, SymplecticStructure};
use crate::tensor::{wedge, Tensor};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    /// A compact derivation symbol `d/d<name>`.
    Deriv(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Arrow,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = vec![];
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let n = chars.len();
    while i < n {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let mut push = |kind: Tok| {
            out.push(Token {
                kind,
                line: tline,
                col: tcol,
            })
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < n && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' => {
                push(Tok::LBrace);
                i += 1;
                col += 1;
            }
            '}' => {
                push(Tok::RBrace);
                i += 1;
                col += 1;
            }
            '(' => {
                push(Tok::LParen);
                i += 1;
                col += 1;
            }
            ')' => {
                push(Tok::RParen);
                i += 1;
                col += 1;
            }
            '[' => {
                push(Tok::LBrack);
                i += 1;
                col += 1;
            }
            ']' => {
                push(Tok::RBrack);
                i += 1;
                col += 1;
            }
            ',' => {
                push(Tok::Comma);
                i += 1;
                col += 1;
            }
            ';' => {
                push(Tok::Semi);
                i += 1;
                col += 1;
            }
            '^' => {
                push(Tok::Caret);
                i += 1;
                col += 1;
            }
            '*' => {
                push(Tok::Star);
                i += 1;
                col += 1;
            }
            '/' => {
                push(Tok::Slash);
                i += 1;
                col += 1;
            }
            '+' => {
                push(Tok::Plus);
                i += 1;
                col += 1;
            }
            '-' => {
                if i + 1 < n && chars[i + 1] == '>' {
                    push(Tok::Arrow);
                    i += 2;
                    col += 2;
                } else {
                    push(Tok::Minus);
                    i += 1;
                    col += 1;
                }
            }
            _ if c.is_ascii_digit() => {
                let mut v: i64 = 0;
                while i < n && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((chars[i] as u8 - b'0') as i64))
                        .ok_or(Error::Parse {
                            line: tline,
                            col: tcol,
                            msg: "integer literal overflows".into(),
                        })?;
                    i += 1;
                    col += 1;
                }
                push(Tok::Int(v));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                // compact derivation symbol d/d<name>
                if c == 'd'
                    && i + 2 < n
                    && chars[i + 1] == '/'
                    && chars[i + 2] == 'd'
                    && i + 3 < n
                    && (chars[i + 3].is_ascii_alphanumeric() || chars[i + 3] == '_')
                {
                    let mut j = i + 3;
                    let mut name = String::new();
                    while j < n && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        name.push(chars[j]);
                        j += 1;
                    }
                    col += j - i;
                    i = j;
                    push(Tok::Deriv(name));
                } else {
                    let mut j = i;
                    let mut name = String::new();
                    while j < n && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        name.push(chars[j]);
                        j += 1;
                    }
                    col += j - i;
                    i = j;
                    push(Tok::Ident(name));
                }
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    out.push(Token {
        kind: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Expression tree; evaluation is deferred so that contexts with different
/// multiplication rules can interpret the same syntax.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(i64),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].kind
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].kind
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos.min(self.toks.len() - 1)];
        (t.line, t.col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].kind.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &Tok) -> bool {
        if self.peek() == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<()> {
        if self.peek() == &kind {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected {what}, found {other:?}")),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<i64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(if neg { -v } else { v })
            }
            other => self.err(format!("expected {what}, found {other:?}")),
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    // term := ['-'] factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<Expr> {
        let neg = self.eat(&Tok::Minus);
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat(&Tok::Slash) {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                break;
            }
        }
        Ok(if neg { Expr::Neg(Box::new(acc)) } else { acc })
    }

    // factor := atom ['^' ['-'] INT]
    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.expect_int("integer exponent")?;
            Ok(Expr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Name(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            other => self.err(format!("expected expression atom, found {other:?}")),
        }
    }

    fn int_tuple(&mut self) -> Result<Vec<i64>> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = vec![self.expect_int("integer")?];
        while self.eat(&Tok::Comma) {
            out.push(self.expect_int("integer")?);
        }
        self.expect(Tok::RParen, "')'")?;
        Ok(out)
    }

    fn int_matrix(&mut self) -> Result<Vec<Vec<i64>>> {
        self.expect(Tok::LBrack, "'['")?;
        let mut rows = vec![];
        loop {
            self.expect(Tok::LBrack, "'['")?;
            let mut row = vec![self.expect_int("integer")?];
            while self.eat(&Tok::Comma) {
                row.push(self.expect_int("integer")?);
            }
            self.expect(Tok::RBrack, "']'")?;
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrack, "']'")?;
        Ok(rows)
    }

    fn expr_matrix(&mut self) -> Result<Vec<Vec<Expr>>> {
        self.expect(Tok::LBrack, "'['")?;
        let mut rows = vec![];
        loop {
            self.expect(Tok::LBrack, "'['")?;
            let mut row = vec![self.expr()?];
            while self.eat(&Tok::Comma) {
                row.push(self.expr()?);
            }
            self.expect(Tok::RBrack, "']'")?;
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrack, "']'")?;
        Ok(rows)
    }
}

#[derive(Debug, Default)]
struct SpecAst {
    name: String,
    parameter: Option<String>,
    rank: Option<usize>,
    moduli: Option<Vec<i64>>,
    cocycle: Option<(CocycleBaseAst, Vec<Vec<i64>>)>,
    generators: Vec<(String, Vec<i64>, bool)>,
    phi: Vec<((String, i64), Expr)>,
    phi_a: Option<Vec<Vec<Expr>>>,
    table: Option<Vec<((String, String), Expr)>>,
    metric: Option<Vec<Vec<Expr>>>,
    symplectic: Option<Vec<FormTerm>>,
    poisson: Option<Vec<((String, String), Expr)>>,
}

#[derive(Debug)]
enum CocycleBaseAst {
    Param(String),
    Const(Rat),
}

fn parse_spec_ast(p: &mut Parser) -> Result<SpecAst> {
    let mut ast = SpecAst::default();
    match p.bump() {
        Tok::Ident(kw) if kw == "algebra" => {}
        other => return p.err(format!("expected 'algebra', found {other:?}")),
    }
    ast.name = p.expect_ident("algebra name")?;
    p.expect(Tok::LBrace, "'{'")?;
    while !p.eat(&Tok::RBrace) {
        let kw = p.expect_ident("block keyword")?;
        match kw.as_str() {
            "parameter" => {
                ast.parameter = Some(p.expect_ident("parameter name")?);
                p.expect(Tok::Semi, "';'")?;
            }
            "group" => {
                let z = p.expect_ident("'Z'")?;
                if z != "Z" {
                    return p.err("grading groups are powers of Z (with optional moduli)");
                }
                p.expect(Tok::Caret, "'^'")?;
                let rank = p.expect_int("rank")?;
                if rank <= 0 {
                    return p.err("rank must be positive");
                }
                ast.rank = Some(rank as usize);
                if let Tok::Ident(m) = p.peek().clone() {
                    if m == "mod" {
                        p.bump();
                        ast.moduli = Some(p.int_tuple()?);
                    }
                }
                p.expect(Tok::Semi, "';'")?;
            }
            "cocycle" => {
                let base = match p.peek().clone() {
                    Tok::Ident(s) => {
                        p.bump();
                        CocycleBaseAst::Param(s)
                    }
                    Tok::Minus | Tok::Int(_) => {
                        let num = p.expect_int("rational base")?;
                        let den = if p.eat(&Tok::Slash) {
                            p.expect_int("denominator")?
                        } else {
                            1
                        };
                        if den == 0 {
                            return p.err("zero denominator in cocycle base");
                        }
                        CocycleBaseAst::Const(rat(num, den))
                    }
                    other => return p.err(format!("expected cocycle base, found {other:?}")),
                };
                p.expect(Tok::Caret, "'^'")?;
                let mat = p.int_matrix()?;
                ast.cocycle = Some((base, mat));
                p.expect(Tok::Semi, "';'")?;
            }
            "generator" => {
                let name = p.expect_ident("generator name")?;
                let kw = p.expect_ident("'degree'")?;
                if kw != "degree" {
                    return p.err("expected 'degree'");
                }
                let coords = p.int_tuple()?;
                let invertible = match p.peek().clone() {
                    Tok::Ident(s) if s == "invertible" => {
                        p.bump();
                        true
                    }
                    _ => false,
                };
                ast.generators.push((name, coords, invertible));
                p.expect(Tok::Semi, "';'")?;
            }
            "phi" => {
                p.expect(Tok::LBrace, "'{'")?;
                while !p.eat(&Tok::RBrace) {
                    let name = p.expect_ident("generator name")?;
                    let exp = if p.eat(&Tok::Caret) {
                        p.expect_int("exponent")?
                    } else {
                        1
                    };
                    p.expect(Tok::Arrow, "'->'")?;
                    let value = p.expr()?;
                    p.expect(Tok::Semi, "';'")?;
                    ast.phi.push(((name, exp), value));
                }
            }
            "phiA" => {
                ast.phi_a = Some(p.expr_matrix()?);
                p.expect(Tok::Semi, "';'")?;
            }
            "table" => {
                p.expect(Tok::LBrace, "'{'")?;
                let mut entries = vec![];
                while !p.eat(&Tok::RBrace) {
                    let a = p.expect_ident("generator name")?;
                    p.expect(Tok::Star, "'*'")?;
                    let b = p.expect_ident("generator name")?;
                    p.expect(Tok::Arrow, "'->'")?;
                    let value = p.expr()?;
                    p.expect(Tok::Semi, "';'")?;
                    entries.push(((a, b), value));
                }
                ast.table = Some(entries);
            }
            "metric" => {
                ast.metric = Some(p.expr_matrix()?);
                p.expect(Tok::Semi, "';'")?;
            }
            "symplectic" => {
                ast.symplectic = Some(parse_form_expr(p)?);
                p.expect(Tok::Semi, "';'")?;
            }
            "poisson" => {
                p.expect(Tok::LBrace, "'{'")?;
                let mut entries = vec![];
                while !p.eat(&Tok::RBrace) {
                    p.expect(Tok::LParen, "'('")?;
                    let a = p.expect_ident("generator name")?;
                    p.expect(Tok::Comma, "','")?;
                    let b = p.expect_ident("generator name")?;
                    p.expect(Tok::RParen, "')'")?;
                    p.expect(Tok::Arrow, "'->'")?;
                    let value = p.expr()?;
                    p.expect(Tok::Semi, "';'")?;
                    entries.push(((a, b), value));
                }
                ast.poisson = Some(entries);
            }
            other => return p.err(format!("unknown block keyword '{other}'")),
        }
    }
    if p.peek() != &Tok::Eof {
        return p.err("trailing input after algebra block");
    }
    Ok(ast)
}

/// One term of a symplectic 2-form expression: optional coefficient, sign,
/// and the two differential names (`dy ^ dx`).
type FormTerm = (Option<Expr>, bool, String, String);

fn parse_form_expr(p: &mut Parser) -> Result<Vec<FormTerm>> {
    let mut terms = vec![];
    loop {
        let mut neg = false;
        if p.eat(&Tok::Minus) {
            neg = true;
        }
        // optional coefficient: parse factors until we meet a differential
        let mut coef: Option<Expr> = None;
        loop {
            if let Tok::Ident(name) = p.peek().clone() {
                if let Some(rest) = name.strip_prefix('d') {
                    if !rest.is_empty() && p.peek_at(1) == &Tok::Caret {
                        break;
                    }
                }
            }
            let f = p.factor()?;
            coef = Some(match coef {
                None => f,
                Some(c) => Expr::Mul(Box::new(c), Box::new(f)),
            });
            if !p.eat(&Tok::Star) {
                return p.err("expected '*' and a differential like dx^dy");
            }
        }
        let first = p.expect_ident("differential")?;
        p.expect(Tok::Caret, "'^'")?;
        let second = p.expect_ident("differential")?;
        let strip = |s: &str| -> Result<String> {
            s.strip_prefix('d')
                .filter(|r| !r.is_empty())
                .map(|r| r.to_string())
                .ok_or_else(|| Error::Parse {
                    line: 0,
                    col: 0,
                    msg: format!("'{s}' is not a differential (expected d<generator>)"),
                })
        };
        terms.push((coef, neg, strip(&first)?, strip(&second)?));
        if p.eat(&Tok::Plus) {
            continue;
        }
        if p.peek() == &Tok::Minus {
            // leave the sign for the next term
            continue;
        }
        break;
    }
    Ok(terms)
}

/// Evaluate an expression over an algebra. Products, quotients, and powers
/// go through the algebra's canonical-form arithmetic.
pub fn eval_expr(alg: &AlgebraSpec, e: &Expr) -> Result<Element> {
    match e {
        Expr::Int(v) => Ok(alg.scalar(Scalar::from_int(*v))),
        Expr::Name(n) => resolve_name(alg, n),
        Expr::Neg(a) => Ok(eval_expr(alg, a)?.neg()),
        Expr::Add(a, b) => Ok(eval_expr(alg, a)?.add(&eval_expr(alg, b)?)),
        Expr::Sub(a, b) => Ok(eval_expr(alg, a)?.sub(&eval_expr(alg, b)?)),
        Expr::Mul(a, b) => alg.mul(&eval_expr(alg, a)?, &eval_expr(alg, b)?),
        Expr::Div(a, b) => alg.try_div(&eval_expr(alg, a)?, &eval_expr(alg, b)?),
        Expr::Pow(a, k) => {
            let base = eval_expr(alg, a)?;
            element_pow(alg, &base, *k)
        }
    }
}

/// Restricted evaluation for finite-basis entries: no products or powers of
/// basis labels, so the multiplication table being defined is never
/// consulted.
pub fn eval_expr_linear(alg: &AlgebraSpec, e: &Expr) -> Result<Element> {
    match e {
        Expr::Int(v) => Ok(alg.scalar(Scalar::from_int(*v))),
        Expr::Name(n) => resolve_name(alg, n),
        Expr::Neg(a) => Ok(eval_expr_linear(alg, a)?.neg()),
        Expr::Add(a, b) => Ok(eval_expr_linear(alg, a)?.add(&eval_expr_linear(alg, b)?)),
        Expr::Sub(a, b) => Ok(eval_expr_linear(alg, a)?.sub(&eval_expr_linear(alg, b)?)),
        Expr::Mul(a, b) => {
            let ea = eval_expr_linear(alg, a)?;
            let eb = eval_expr_linear(alg, b)?;
            match (ea.as_scalar(alg), eb.as_scalar(alg)) {
                (Some(s), _) => Ok(eb.scale(&s)),
                (_, Some(s)) => Ok(ea.scale(&s)),
                _ => Err(Error::domain(
                    "products of basis labels are not allowed in table entries",
                )),
            }
        }
        Expr::Div(a, b) => {
            let ea = eval_expr_linear(alg, a)?;
            let eb = eval_expr_linear(alg, b)?;
            let s = eb
                .as_scalar(alg)
                .ok_or_else(|| Error::domain("divisor must be a scalar in table entries"))?;
            Ok(ea.scale(&s.inv()?))
        }
        Expr::Pow(a, k) => {
            let ea = eval_expr_linear(alg, a)?;
            let s = ea
                .as_scalar(alg)
                .ok_or_else(|| Error::domain("powers of basis labels are not allowed in table entries"))?;
            Ok(alg.scalar(s.pow(*k)?))
        }
    }
}

fn resolve_name(alg: &AlgebraSpec, name: &str) -> Result<Element> {
    if alg.param.as_deref() == Some(name) {
        return Ok(alg.scalar(Scalar::q()));
    }
    match alg.generator_index(name) {
        Some(i) => Ok(alg.generator(i)),
        None => Err(Error::structure(format!("unknown name '{name}'"))),
    }
}

fn element_pow(alg: &AlgebraSpec, base: &Element, k: i64) -> Result<Element> {
    if k < 0 {
        let inv = alg.invert(base)?;
        return element_pow(alg, &inv, -k);
    }
    let mut acc = alg.one();
    for _ in 0..k {
        acc = alg.mul(&acc, base)?;
    }
    Ok(acc)
}

/// Parse a standalone element expression against an existing algebra.
pub fn parse_element(alg: &AlgebraSpec, text: &str) -> Result<Element> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return p.err("trailing input after expression");
    }
    eval_expr(alg, &e)
}

/// Parse a derivation expression `f * d/dx + g * d/dy`.
pub fn parse_derivation(alg: &AlgebraSpec, text: &str) -> Result<crate::derivation::Derivation> {
    let mut p = Parser::new(text)?;
    let n = alg.rank();
    let mut comps = vec![Element::zero(); n];
    loop {
        let neg = p.eat(&Tok::Minus);
        // optional coefficient chain
        let mut coef: Option<Expr> = None;
        let slot = loop {
            if let Tok::Deriv(name) = p.peek().clone() {
                p.bump();
                match alg.generator_index(&name) {
                    Some(i) => break i,
                    None => return p.err(format!("unknown generator '{name}'")),
                }
            }
            let f = p.factor()?;
            coef = Some(match coef {
                None => f,
                Some(c) => Expr::Mul(Box::new(c), Box::new(f)),
            });
            if !p.eat(&Tok::Star) {
                return p.err("expected '*' and a derivation symbol like d/dx");
            }
        };
        let mut value = match coef {
            None => alg.one(),
            Some(e) => eval_expr(alg, &e)?,
        };
        if neg {
            value = value.neg();
        }
        comps[slot] = comps[slot].add(&value);
        if p.eat(&Tok::Plus) {
            continue;
        }
        if p.peek() == &Tok::Minus {
            continue;
        }
        break;
    }
    if p.peek() != &Tok::Eof {
        return p.err("trailing input after derivation expression");
    }
    Ok(crate::derivation::Derivation::new(comps))
}

/// Parse and semantically validate a full model.
pub fn parse_model(text: &str) -> Result<Model> {
    let mut p = Parser::new(text)?;
    let ast = parse_spec_ast(&mut p)?;
    build_model(ast)
}

fn build_model(ast: SpecAst) -> Result<Model> {
    let rank = ast
        .rank
        .ok_or_else(|| Error::structure("missing 'group' declaration"))?;
    let moduli = match ast.moduli {
        None => vec![0u64; rank],
        Some(m) => {
            if m.len() != rank {
                return Err(Error::structure(format!(
                    "moduli tuple has {} entries but the group has rank {rank}",
                    m.len()
                )));
            }
            m.iter()
                .map(|&v| {
                    if v < 0 {
                        Err(Error::structure("moduli must be non-negative"))
                    } else {
                        Ok(v as u64)
                    }
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let group = GradingGroup::with_moduli(moduli);

    let (base_ast, form) = ast
        .cocycle
        .ok_or_else(|| Error::structure("missing 'cocycle' declaration"))?;
    let base = match base_ast {
        CocycleBaseAst::Param(name) => {
            if ast.parameter.as_deref() != Some(name.as_str()) {
                return Err(Error::structure(format!(
                    "cocycle base '{name}' is not the declared parameter"
                )));
            }
            CocycleBase::Param
        }
        CocycleBaseAst::Const(c) => CocycleBase::Const(c),
    };
    if form.len() != rank || form.iter().any(|r| r.len() != rank) {
        return Err(Error::structure(format!(
            "cocycle exponent form must be {rank}x{rank}"
        )));
    }
    let cocycle = CocycleSpec::new(base, form)?;

    if ast.generators.is_empty() {
        return Err(Error::structure("no generators declared"));
    }
    let mut generators = vec![];
    for (name, coords, invertible) in &ast.generators {
        if generators
            .iter()
            .any(|g: &Generator| g.name == *name)
        {
            return Err(Error::structure(format!("duplicate generator '{name}'")));
        }
        if coords.len() != rank {
            return Err(Error::structure(format!(
                "generator '{name}' has a degree of rank {} but the group has rank {rank}",
                coords.len()
            )));
        }
        generators.push(Generator {
            name: name.clone(),
            degree: group.degree(coords)?,
            invertible: *invertible,
        });
    }
    let n = generators.len();

    // skeleton with a placeholder backend for linear evaluation of finite
    // tables; the placeholder multiplication is never consulted
    let backend_is_table = ast.table.is_some();
    let skeleton = AlgebraSpec {
        name: ast.name.clone(),
        group: group.clone(),
        cocycle: cocycle.clone(),
        generators: generators.clone(),
        backend: if backend_is_table {
            Backend::Table {
                mul: vec![vec![Element::zero(); n]; n],
                phi: (0..n)
                    .map(|i| Element::from_term(Mono::Gen(i), Scalar::one()))
                    .collect(),
            }
        } else {
            Backend::Torus {
                phi: (0..n)
                    .map(|_| PhiMultipliers {
                        pos: Scalar::one(),
                        neg: Scalar::one(),
                    })
                    .collect(),
            }
        },
        param: ast.parameter.clone(),
    };

    let backend = if let Some(entries) = &ast.table {
        let mut mul = vec![vec![None; n]; n];
        for ((a, b), value) in entries {
            let ia = skeleton
                .generator_index(a)
                .ok_or_else(|| Error::structure(format!("unknown generator '{a}' in table")))?;
            let ib = skeleton
                .generator_index(b)
                .ok_or_else(|| Error::structure(format!("unknown generator '{b}' in table")))?;
            if mul[ia][ib].is_some() {
                return Err(Error::structure(format!("duplicate table entry {a}*{b}")));
            }
            let e = eval_expr_linear(&skeleton, value)?;
            // the product must be homogeneous of the summed degree
            if !e.is_zero() {
                let d = skeleton
                    .degree(&e)
                    .ok_or_else(|| Error::domain(format!("table entry {a}*{b} is inhomogeneous")))?;
                let expected = group.add(
                    &generators[ia].degree,
                    &generators[ib].degree,
                )?;
                if d != expected {
                    return Err(Error::domain(format!(
                        "table entry {a}*{b} has degree {d}, expected {expected}"
                    )));
                }
            }
            mul[ia][ib] = Some(e);
        }
        let mut full = vec![];
        for (i, row) in mul.into_iter().enumerate() {
            let mut out_row = vec![];
            for (j, e) in row.into_iter().enumerate() {
                out_row.push(e.ok_or_else(|| {
                    Error::structure(format!(
                        "multiplication table is missing entry {}*{}",
                        generators[i].name, generators[j].name
                    ))
                })?);
            }
            full.push(out_row);
        }
        // twist images on basis labels
        let mut phi: Vec<Element> = (0..n)
            .map(|i| Element::from_term(Mono::Gen(i), Scalar::one()))
            .collect();
        for ((name, exp), value) in &ast.phi {
            if *exp != 1 {
                return Err(Error::structure(
                    "finite-basis twist entries take plain generator keys",
                ));
            }
            let i = skeleton.generator_index(name).ok_or_else(|| {
                Error::structure(format!("unknown generator '{name}' in phi block"))
            })?;
            let e = eval_expr_linear(&skeleton, value)?;
            if !e.is_zero() {
                let d = skeleton
                    .degree(&e)
                    .ok_or_else(|| Error::domain("phi image must be homogeneous"))?;
                if d != generators[i].degree {
                    return Err(Error::domain(format!(
                        "phi({name}) must preserve the degree {}",
                        generators[i].degree
                    )));
                }
            }
            phi[i] = e;
        }
        Backend::Table { mul: full, phi }
    } else {
        // torus multipliers; defaults are 1
        let mut phi: Vec<PhiMultipliers> = (0..n)
            .map(|_| PhiMultipliers {
                pos: Scalar::one(),
                neg: Scalar::one(),
            })
            .collect();
        for ((name, exp), value) in &ast.phi {
            let i = skeleton.generator_index(name).ok_or_else(|| {
                Error::structure(format!("unknown generator '{name}' in phi block"))
            })?;
            let e = eval_expr(&skeleton, value)?;
            let (mono, coef) = e.single_term().ok_or_else(|| {
                Error::domain(format!("phi({name}) must be a multiple of {name}^{exp}"))
            })?;
            let mut expected = vec![0i64; n];
            expected[i] = *exp;
            if *mono != Mono::Torus(expected) {
                return Err(Error::domain(format!(
                    "phi({name}^{exp}) must be a multiple of {name}^{exp}"
                )));
            }
            match exp {
                1 => phi[i].pos = coef.clone(),
                -1 => phi[i].neg = coef.clone(),
                _ => {
                    return Err(Error::structure(
                        "twist entries take keys x or x^-1 only",
                    ))
                }
            }
        }
        Backend::Torus { phi }
    };

    let algebra = AlgebraSpec {
        name: ast.name,
        group,
        cocycle,
        generators,
        backend,
        param: ast.parameter,
    };

    let basis = match &ast.phi_a {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::structure(format!("phiA matrix must be {n}x{n}")));
            }
            let mut mat = vec![vec![Scalar::zero(); n]; n];
            for (r, row) in rows.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    let v = eval_expr(&algebra, e)?;
                    mat[r][c] = v.as_scalar(&algebra).ok_or_else(|| {
                        Error::domain("phiA entries must be scalars")
                    })?;
                }
            }
            Some(DerivationBasis::new(mat)?)
        }
    };

    let metric = match &ast.metric {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::structure(format!("metric matrix must be {n}x{n}")));
            }
            let mut comps = vec![vec![Element::zero(); n]; n];
            for (r, row) in rows.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    comps[r][c] = eval_expr(&algebra, e)?;
                }
            }
            Some(Metric::new(&algebra, comps)?)
        }
    };

    let symplectic = match &ast.symplectic {
        None => None,
        Some(terms) => {
            let mut acc: Option<Tensor> = None;
            for (coef, neg, a, b) in terms {
                let ia = algebra.generator_index(a).ok_or_else(|| {
                    Error::structure(format!("unknown differential d{a}"))
                })?;
                let ib = algebra.generator_index(b).ok_or_else(|| {
                    Error::structure(format!("unknown differential d{b}"))
                })?;
                let mut t = wedge(
                    &algebra,
                    &Tensor::dual_basis(&algebra, ia),
                    &Tensor::dual_basis(&algebra, ib),
                )?;
                if let Some(c) = coef {
                    let f = eval_expr(&algebra, c)?;
                    t = form_scale_left(&algebra, &f, &t)?;
                }
                if *neg {
                    t = t.neg();
                }
                acc = Some(match acc {
                    None => t,
                    Some(prev) => prev.add(&t)?,
                });
            }
            let omega = Cochain::new(&algebra, acc.expect("at least one term"))?;
            Some(SymplecticStructure::new(omega)?)
        }
    };

    let poisson_table = match &ast.poisson {
        None => None,
        Some(entries) => {
            let mut bracket = vec![vec![Element::zero(); n]; n];
            for ((a, b), value) in entries {
                let ia = algebra.generator_index(a).ok_or_else(|| {
                    Error::structure(format!("unknown generator '{a}' in poisson block"))
                })?;
                let ib = algebra.generator_index(b).ok_or_else(|| {
                    Error::structure(format!("unknown generator '{b}' in poisson block"))
                })?;
                bracket[ia][ib] = if algebra.is_torus() {
                    eval_expr(&algebra, value)?
                } else {
                    eval_expr_linear(&algebra, value)?
                };
            }
            Some(PoissonStructure::from_table(&algebra, bracket)?)
        }
    };

    Ok(Model {
        algebra,
        basis,
        metric,
        symplectic,
        poisson_table,
    })
}

/// Left module action of a homogeneous coefficient on a form:
/// `(f alpha)(args) = rho(f, alpha) alpha(args) f`.
fn form_scale_left(alg: &AlgebraSpec, f: &Element, t: &Tensor) -> Result<Tensor> {
    let df = alg.degree_checked(f, "form coefficient")?;
    let rho = alg.cocycle.eval(&df, &t.degree)?;
    let n = alg.rank();
    let degree = alg.group.add(&df, &t.degree)?;
    let mut comps = vec![Element::zero(); n.pow(t.arity as u32)];
    for tuple in crate::tensor::tuples(n, t.arity) {
        let v = alg.mul(t.component(alg, &tuple), f)?.scale(&rho);
        comps[crate::tensor::tuple_index(n, &tuple)] = v;
    }
    Tensor::new(alg, t.arity, t.kind, comps, degree)
}

/// Render a report of one element per line, used by error paths that need
/// a readable dump of expressions.
pub fn describe_elements(alg: &AlgebraSpec, items: &[(&str, &Element)]) -> String {
    let mut out = String::new();
    for (name, e) in items {
        let _ = writeln!(out, "{name} = {}", alg.render(e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = r#"
        algebra quantum_plane {
          parameter q;
          group Z^2;
          cocycle q ^ [[0, 1], [-1, 0]];
          generator x degree (1, 0) invertible;
          generator y degree (0, 1) invertible;
          phi { x -> x; y -> y; x^-1 -> x^-1; y^-1 -> y^-1; }
          phiA [[1, 0], [0, 1]];
          metric [[x^-2, q*x^-1*y^-1], [x^-1*y^-1, y^-2]];
          symplectic dy^dx;
        }
    "#;

    const QUATERNION: &str = r#"
        algebra quaternion {
          group Z^3 mod (2, 2, 2);
          cocycle -1 ^ [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]];
          generator i degree (0, 1, 1);
          generator j degree (1, 0, 1);
          generator k degree (1, 1, 0);
          phi { i -> i; j -> j; k -> k; }
          table {
            i*i -> -1; i*j -> k;  i*k -> -j;
            j*i -> -k; j*j -> -1; j*k -> i;
            k*i -> j;  k*j -> -i; k*k -> -1;
          }
          poisson {
            (i,j) -> k; (j,i) -> -k;
            (j,k) -> i; (k,j) -> -i;
            (k,i) -> j; (i,k) -> -j;
          }
        }
    "#;

    #[test]
    fn parses_the_plane_model() {
        let model = parse_model(PLANE).unwrap();
        assert_eq!(model.algebra.rank(), 2);
        assert!(model.algebra.is_torus());
        assert!(model.basis.is_some());
        assert!(model.metric.is_some());
        assert!(model.symplectic.is_some());
        // the cocycle pins x*y = q y*x
        let x = model.algebra.generator(0);
        let y = model.algebra.generator(1);
        let yx = model.algebra.mul(&y, &x).unwrap();
        let xy = model.algebra.mul(&x, &y).unwrap();
        assert_eq!(yx, xy.scale(&Scalar::q_pow(-1)));
    }

    #[test]
    fn parses_the_quaternion_model() {
        let model = parse_model(QUATERNION).unwrap();
        assert!(!model.algebra.is_torus());
        assert_eq!(model.algebra.rank(), 3);
        assert!(model.poisson_table.is_some());
        let i = model.algebra.generator(0);
        let j = model.algebra.generator(1);
        let k = model.algebra.generator(2);
        assert_eq!(model.algebra.mul(&j, &i).unwrap(), k.neg());
        assert_eq!(model.algebra.mul(&i, &j).unwrap(), k);
    }

    #[test]
    fn twist_multipliers_through_the_text_format() {
        let with = |a: i64, b: i64, c: i64| -> crate::model::Model {
            let src = format!(
                r#"
                algebra quaternion {{
                  group Z^3 mod (2, 2, 2);
                  cocycle -1 ^ [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]];
                  generator i degree (0, 1, 1);
                  generator j degree (1, 0, 1);
                  generator k degree (1, 1, 0);
                  phi {{ i -> {a}*i; j -> {b}*j; k -> {c}*k; }}
                  table {{
                    i*i -> -1; i*j -> k;  i*k -> -j;
                    j*i -> -k; j*j -> -1; j*k -> i;
                    k*i -> j;  k*j -> -i; k*k -> -1;
                  }}
                }}
                "#
            );
            parse_model(&src).unwrap()
        };
        let equal = with(2, 2, 2);
        assert_eq!(
            equal.algebra.check_structure().status_of("hom-associativity"),
            Some(crate::report::Status::Pass)
        );
        let unequal = with(1, 2, 1);
        let report = unequal.algebra.check_structure();
        assert_eq!(
            report.status_of("hom-associativity"),
            Some(crate::report::Status::Fail)
        );
        assert!(report.witness_of("hom-associativity").is_some());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let bad = r#"
            algebra bad {
              parameter q;
              group Z^2;
              cocycle q ^ [[0, 1], [-1, 0]];
              generator x degree (1);
            }
        "#;
        let err = parse_model(bad).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        assert!(err.to_string().contains("rank"));
    }

    #[test]
    fn syntax_error_carries_location() {
        let bad = "algebra oops {\n  group Z^;\n}";
        let err = parse_model(bad).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn element_expressions() {
        let model = parse_model(PLANE).unwrap();
        let alg = &model.algebra;
        let e = parse_element(alg, "x^-2").unwrap();
        assert_eq!(e, alg.monomial(&[-2, 0]).unwrap());
        // q*y*x normalizes to x*y
        let e = parse_element(alg, "q*y*x").unwrap();
        assert_eq!(e, alg.monomial(&[1, 1]).unwrap());
        // rational-function coefficient
        let e = parse_element(alg, "1/(1-q^2) * x^2").unwrap();
        let c = (&Scalar::from_int(1) - &Scalar::q_pow(2)).inv().unwrap();
        assert_eq!(e, alg.monomial(&[2, 0]).unwrap().scale(&c));
        // unknown names are structural errors
        assert!(parse_element(alg, "z + 1").is_err());
    }

    #[test]
    fn roundtrip_parse_render(){
        let model = parse_model(PLANE).unwrap();
        let alg = &model.algebra;
        for text in ["-x^-1", "q*x*y", "-1/(q^2-1)*x^2", "1 - x*y", "0"] {
            let e = parse_element(alg, text).unwrap();
            let rendered = alg.render(&e);
            let back = parse_element(alg, &rendered).unwrap();
            assert_eq!(back, e, "roundtrip through {rendered}");
        }
    }

    #[test]
    fn derivation_expressions() {
        let model = parse_model(PLANE).unwrap();
        let alg = &model.algebra;
        let d = parse_derivation(alg, "x * d/dx + -1 * d/dy").unwrap();
        assert_eq!(d.comps[0], alg.generator(0));
        assert_eq!(d.comps[1], alg.one().neg());
        let d2 = parse_derivation(alg, "-d/dy").unwrap();
        assert_eq!(d2.comps[1], alg.one().neg());
        let rendered = crate::render::render_derivation(alg, &d2);
        assert_eq!(parse_derivation(alg, &rendered).unwrap(), d2);
    }
}
