//! Tower definition files.
//!
//! ```text
//! # F_16 as a quadratic over F_4
//! base Fp 2
//! gen w : x^2 + x + 1
//! gen v : x^2 + x + w
//! elem a = w*v + 1
//! ```
//!
//! Polynomials are written in the stage variable `x`, the base variable `t`
//! (only over `FpT`) and earlier generator names. Element expressions use the
//! generator names and earlier element names, with `+ - * / ^` and
//! parentheses.

use std::fmt::Write as _;

use fieldsep::{AlgebraError, BaseField, Element, FactorConfig, Field, Poly, PrimeField, RationalFunctionField, Tower};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, column: usize, name: String },
    #[error("line {line}: minimal polynomial of `{name}` is reducible: factor {factor}")]
    Reducible { line: usize, name: String, factor: String },
    #[error("line {line}: {source}")]
    Algebra { line: usize, source: AlgebraError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Fp,
    FpT,
}

/// A parsed tower: its stages, generator names and named elements.
#[derive(Debug, Clone)]
pub struct TowerSpec<B: BaseField> {
    pub kind: BaseKind,
    pub p: u64,
    /// `stages[0]` is the base field, `stages[i]` adjoins `names[i - 1]`.
    pub stages: Vec<Tower<B>>,
    pub names: Vec<String>,
    pub elems: Vec<(String, Element<B>)>,
}

impl<B: BaseField> TowerSpec<B> {
    pub fn top(&self) -> &Tower<B> {
        self.stages.last().unwrap()
    }

    pub fn element(&self, name: &str) -> Option<Element<B>> {
        let top = self.top();
        if let Some((_, e)) = self.elems.iter().find(|(n, _)| n == name) {
            return Some(e.clone());
        }
        let i = self.names.iter().position(|n| n == name)?;
        Some(top.lift_from(&self.stages[i + 1], &self.stages[i + 1].generator()))
    }

    /// Prints the tower back in the file grammar.
    pub fn to_text(&self) -> String {
        let kind = match self.kind {
            BaseKind::Fp => "Fp",
            BaseKind::FpT => "FpT",
        };
        let mut out = format!("base {kind} {}\n", self.p);
        for (name, stage) in self.names.iter().zip(&self.stages[1..]) {
            writeln!(out, "gen {name} : {}", stage.minpoly().unwrap()).unwrap();
        }
        for (name, e) in &self.elems {
            writeln!(out, "elem {name} = {}", self.top().format_elem(e)).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone)]
pub enum LoadedTower {
    Finite(TowerSpec<PrimeField>),
    Function(TowerSpec<RationalFunctionField>),
}

impl LoadedTower {
    pub fn to_text(&self) -> String {
        match self {
            LoadedTower::Finite(s) => s.to_text(),
            LoadedTower::Function(s) => s.to_text(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

#[derive(Debug, Clone)]
enum Expr {
    Num(u64),
    Ident(String, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    /// Division, with the column of the `/`.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u64),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> LoadError {
    LoadError::Syntax { line, column, message: message.into() }
}

fn lex(src: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, LoadError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        let col = offset + src[..at].chars().count() + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[i].1.to_digit(10).unwrap() as u64))
                    .ok_or_else(|| syntax(line, col, "integer literal too large"))?;
                i += 1;
            }
            out.push((Tok::Num(n), col));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                s.push(chars[i].1);
                i += 1;
            }
            out.push((Tok::Ident(s), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, LoadError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, LoadError> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let col = self.col();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?), col);
            } else if matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_) | Tok::Op('('))) {
                // juxtaposition, as in `2x` or `t(x + 1)`
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr, LoadError> {
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Num(n), _)) => {
                    let n = *n;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), n))
                }
                _ => Err(syntax(self.line, col, "exponent must be a non-negative integer")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, LoadError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(n), _)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some((Tok::Ident(s), c)) => {
                self.pos += 1;
                Ok(Expr::Ident(s, c))
            }
            Some((Tok::Op('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.line, self.col(), "expected `)`"));
                }
                Ok(e)
            }
            Some((Tok::Op(c), _)) => Err(syntax(self.line, col, format!("unexpected `{c}`"))),
            None => Err(syntax(self.line, col, "unexpected end of line")),
        }
    }
}

fn parse_expr(src: &str, line: usize, offset: usize) -> Result<Expr, LoadError> {
    let toks = lex(src, line, offset)?;
    let end = offset + src.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, line, end };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(line, p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

enum Line {
    Base { kind: BaseKind, p: u64 },
    Gen { name: String, poly: Expr },
    Elem { name: String, expr: Expr },
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

fn parse_line(raw: &str, line: usize) -> Result<Option<Line>, LoadError> {
    let text = raw.split('#').next().unwrap();
    let trimmed = text.trim_start();
    if trimmed.trim().is_empty() {
        return Ok(None);
    }
    let lead = text.len() - trimmed.len();
    let col_of = |byte: usize| text[..byte].chars().count() + 1;
    let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
    let rest_at = lead + keyword.len() + 1;
    match keyword {
        "base" => {
            let words: Vec<&str> = rest.split_whitespace().collect();
            let kind = match words.first() {
                Some(&"Fp") => BaseKind::Fp,
                Some(&"FpT") => BaseKind::FpT,
                _ => return Err(syntax(line, col_of(rest_at.min(text.len())), "expected `Fp` or `FpT`")),
            };
            let p = match words.get(1).map(|w| w.parse::<u64>()) {
                Some(Ok(p)) if words.len() == 2 => p,
                _ => return Err(syntax(line, col_of(rest_at.min(text.len())), "expected `base Fp <p>` or `base FpT <p>`")),
            };
            Ok(Some(Line::Base { kind, p }))
        }
        "gen" | "elem" => {
            let sep = if keyword == "gen" { ':' } else { '=' };
            let Some(split) = rest.find(sep) else {
                return Err(syntax(line, col_of(text.len()), format!("expected `{sep}`")));
            };
            let name = rest[..split].trim();
            if !is_identifier(name) || name == "x" || name == "t" {
                return Err(syntax(line, col_of(rest_at), format!("invalid name `{name}`")));
            }
            let body_at = rest_at + split + 1;
            let offset = text[..body_at].chars().count();
            let expr = parse_expr(&rest[split + 1..], line, offset)?;
            let name = name.to_string();
            Ok(Some(if keyword == "gen" { Line::Gen { name, poly: expr } } else { Line::Elem { name, expr } }))
        }
        other => Err(syntax(line, col_of(lead), format!("unknown directive `{other}`"))),
    }
}

/// Names visible while evaluating one line.
struct Scope<'a, B: BaseField> {
    field: &'a Tower<B>,
    gens: &'a [(String, Element<B>)],
    elems: &'a [(String, Element<B>)],
    allow_x: bool,
    line: usize,
}

impl<B: BaseField> Scope<'_, B> {
    fn eval(&self, e: &Expr) -> Result<Poly<Tower<B>>, LoadError> {
        let f = self.field;
        let algebra = |source| LoadError::Algebra { line: self.line, source };
        Ok(match e {
            Expr::Num(n) => {
                let p = f.characteristic();
                Poly::constant(f.clone(), f.scalar(f.base_field().scalar(n % p).unwrap()))
            }
            Expr::Ident(name, col) => {
                if name == "x" && self.allow_x {
                    Poly::x(f.clone())
                } else if let (true, Some(t)) = (name == "t", f.base_field().variable()) {
                    Poly::constant(f.clone(), f.scalar(t))
                } else if let Some((_, v)) = self.elems.iter().rev().find(|(n, _)| n == name) {
                    Poly::constant(f.clone(), v.clone())
                } else if let Some((_, v)) = self.gens.iter().find(|(n, _)| n == name) {
                    Poly::constant(f.clone(), v.clone())
                } else {
                    return Err(LoadError::UnknownIdentifier { line: self.line, column: *col, name: name.clone() });
                }
            }
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                match op {
                    '+' => a.add(&b),
                    '-' => a.sub(&b),
                    _ => a.mul(&b),
                }
            }
            Expr::Div(a, b, col) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                if !b.is_constant() {
                    return Err(syntax(self.line, *col, "division by a polynomial in x"));
                }
                let inv = f.inv(&b.coeff(0)).ok_or_else(|| algebra(AlgebraError::DivisionByZero))?;
                a.scale(&inv)
            }
            Expr::Pow(a, n) => self.eval(a)?.pow(*n),
        })
    }
}

fn build<B: BaseField>(
    base: B,
    kind: BaseKind,
    p: u64,
    lines: &[(usize, Line)],
    cfg: &FactorConfig,
) -> Result<TowerSpec<B>, LoadError> {
    let mut stages = vec![Tower::base(base)];
    let mut names: Vec<String> = Vec::new();
    let mut gens: Vec<(String, Element<B>)> = Vec::new();
    let mut elems: Vec<(String, Element<B>)> = Vec::new();
    for (line, l) in lines {
        let line = *line;
        match l {
            Line::Base { .. } => return Err(syntax(line, 1, "duplicate base declaration")),
            Line::Gen { name, poly } => {
                if !elems.is_empty() {
                    return Err(syntax(line, 1, "generators must be declared before elements"));
                }
                if names.contains(name) {
                    return Err(syntax(line, 1, format!("generator `{name}` declared twice")));
                }
                let top = stages.last().unwrap().clone();
                let scope = Scope { field: &top, gens: &gens, elems: &[], allow_x: true, line };
                let f = scope.eval(poly)?;
                let f = if f.is_zero() { f } else { f.monic() };
                let stage = match top.make_extension(&f, name, cfg) {
                    Ok(s) => s,
                    Err(AlgebraError::Reducible { factor }) => {
                        return Err(LoadError::Reducible { line, name: name.clone(), factor })
                    }
                    Err(source) => return Err(LoadError::Algebra { line, source }),
                };
                for g in gens.iter_mut() {
                    g.1 = stage.lift_from(&top, &g.1);
                }
                gens.push((name.clone(), stage.generator()));
                names.push(name.clone());
                stages.push(stage);
            }
            Line::Elem { name, expr } => {
                let top = stages.last().unwrap().clone();
                let scope = Scope { field: &top, gens: &gens, elems: &elems, allow_x: false, line };
                let v = scope.eval(expr)?;
                elems.push((name.clone(), v.coeff(0)));
            }
        }
    }
    Ok(TowerSpec { kind, p, stages, names, elems })
}

/// Parses and loads a tower file, certifying every minimal polynomial.
pub fn parse_tower(text: &str, cfg: &FactorConfig) -> Result<LoadedTower, LoadError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if let Some(l) = parse_line(raw, i + 1)? {
            lines.push((i + 1, l));
        }
    }
    let Some((first_line, Line::Base { kind, p })) = lines.first() else {
        let line = lines.first().map_or(1, |(l, _)| *l);
        return Err(syntax(line, 1, "the first declaration must be `base`"));
    };
    let (kind, p, first_line) = (*kind, *p, *first_line);
    let fp = PrimeField::new(p).map_err(|source| LoadError::Algebra { line: first_line, source })?;
    Ok(match kind {
        BaseKind::Fp => LoadedTower::Finite(build(fp, kind, p, &lines[1..], cfg)?),
        BaseKind::FpT => LoadedTower::Function(build(RationalFunctionField::new(fp), kind, p, &lines[1..], cfg)?),
    })
}
