//! Surface syntax for class expressions: a small left-associative
//! grammar with `+`, `-`, `*`, rational literals, and class/bundle
//! function calls, plus the printer and evaluator.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := RATIONAL | IDENT '(' args ')' | '(' expr ')'
//! ```
//! Class functions are `c`, `ch`, `td`, `tdC`, `e`, `wedge_alt`,
//! `lambda(p, B)`, and generator references `c1(B)`, `c2(B)`, ...;
//! bundle arguments are names combined with `dual(...)` and
//! `sum(..., ...)`. There is no unary minus: negation always appears as
//! a `-` between terms (series print leading negatives as `0 - ...`).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::bundle::{Bundle, BundleError, Context};
use crate::classes::{characteristic_class, wedge_power_ch, ClassKind};
use crate::rational::{parse_rational, Rat};
use crate::series::{ChernSeries, SeriesError};

/// Bundle-valued subexpressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    Named(String),
    Dual(Box<BundleExpr>),
    Sum(Vec<BundleExpr>),
}

impl BundleExpr {
    /// Lower to an engine bundle expression (name resolution happens when
    /// the bundle is used against a context).
    pub fn resolve(&self) -> Result<Bundle, BundleError> {
        match self {
            BundleExpr::Named(name) => Ok(Bundle::named(name.clone())),
            BundleExpr::Dual(inner) => Ok(inner.resolve()?.dual()),
            BundleExpr::Sum(parts) => {
                let resolved: Result<Vec<_>, _> = parts.iter().map(|p| p.resolve()).collect();
                Bundle::sum(resolved?)
            }
        }
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Named(name) => write!(f, "{name}"),
            BundleExpr::Dual(inner) => write!(f, "dual({inner})"),
            BundleExpr::Sum(parts) => {
                write!(f, "sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The class functions of the surface syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassFn {
    TotalChern,
    ChernCharacter,
    Todd,
    ToddComplexified,
    Euler,
    AlternatingWedgeCh,
}

impl ClassFn {
    fn name(self) -> &'static str {
        match self {
            ClassFn::TotalChern => "c",
            ClassFn::ChernCharacter => "ch",
            ClassFn::Todd => "td",
            ClassFn::ToddComplexified => "tdC",
            ClassFn::Euler => "e",
            ClassFn::AlternatingWedgeCh => "wedge_alt",
        }
    }

    fn kind(self) -> ClassKind {
        match self {
            ClassFn::TotalChern => ClassKind::TotalChern,
            ClassFn::ChernCharacter => ClassKind::ChernCharacter,
            ClassFn::Todd => ClassKind::Todd,
            ClassFn::ToddComplexified => ClassKind::ToddComplexified,
            ClassFn::Euler => ClassKind::Euler,
            ClassFn::AlternatingWedgeCh => ClassKind::AlternatingWedgeCh,
        }
    }

    fn from_name(name: &str) -> Option<ClassFn> {
        match name {
            "c" => Some(ClassFn::TotalChern),
            "ch" => Some(ClassFn::ChernCharacter),
            "td" => Some(ClassFn::Todd),
            "tdC" => Some(ClassFn::ToddComplexified),
            "e" => Some(ClassFn::Euler),
            "wedge_alt" => Some(ClassFn::AlternatingWedgeCh),
            _ => None,
        }
    }
}

/// Abstract syntax of class expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassExpr {
    Rational(Rat),
    /// A single Chern generator `c<j>(B)`.
    Generator {
        j: u32,
        bundle: BundleExpr,
    },
    /// A named characteristic class of a bundle expression.
    Class {
        f: ClassFn,
        bundle: BundleExpr,
    },
    /// `lambda(p, B)`: the Chern character of the p-th wedge power.
    WedgePower {
        p: u32,
        bundle: BundleExpr,
    },
    /// Negation; only produced by binary `-`.
    Neg(Box<ClassExpr>),
    /// At least two factors.
    Product(Vec<ClassExpr>),
    /// At least two summands; subtracted terms appear as `Neg`.
    Sum(Vec<ClassExpr>),
}

/// Parse failure with a 1-based source position.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: found {found}, expected {}", expected.join(" or "))]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub found: String,
    pub expected: Vec<String>,
}

/// Evaluation failure for a syntactically valid expression.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Rational(Rat),
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Rational(_) => "a rational literal".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
        }
    }
}

/// A token with the line and column it starts at.
type SpannedTok = (Tok, u32, u32);

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokenize(mut self) -> Result<(Vec<SpannedTok>, (u32, u32)), ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else {
                return Ok((out, (line, col)));
            };
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                c if c.is_ascii_digit() => {
                    let mut text = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                        text.push(self.bump().unwrap());
                    }
                    if matches!(self.chars.peek(), Some(&'/' | &'.')) {
                        text.push(self.bump().unwrap());
                        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                            text.push(self.bump().unwrap());
                        }
                    }
                    let value = parse_rational(&text).map_err(|_| ParseError {
                        line,
                        col,
                        found: format!("'{text}'"),
                        expected: vec!["a rational literal".into()],
                    })?;
                    Tok::Rational(value)
                }
                c if c.is_ascii_alphabetic() => {
                    let mut text = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_alphanumeric() || *c == '_')
                    {
                        text.push(self.bump().unwrap());
                    }
                    Tok::Ident(text)
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        found: format!("'{other}'"),
                        expected: vec!["a token".into()],
                    })
                }
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, u32, u32)>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (u32, u32) {
        self.tokens
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn found(&self) -> String {
        self.peek()
            .map(Tok::describe)
            .unwrap_or_else(|| "end of input".into())
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError {
            line,
            col,
            found: self.found(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat(&mut self, want: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[expected])
        }
    }

    fn expr(&mut self) -> Result<ClassExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    terms.push(ClassExpr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ClassExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<ClassExpr, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            ClassExpr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<ClassExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Rational(value)) => {
                self.pos += 1;
                Ok(ClassExpr::Rational(value))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.eat(&Tok::LParen, "'('")?;
                let node = self.call(&name)?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(node)
            }
            _ => self.fail(&["a rational literal", "a class function", "'('"]),
        }
    }

    fn call(&mut self, name: &str) -> Result<ClassExpr, ParseError> {
        if let Some(f) = ClassFn::from_name(name) {
            let bundle = self.bundle_expr()?;
            return Ok(ClassExpr::Class { f, bundle });
        }
        if name == "lambda" {
            let p = self.wedge_degree()?;
            self.eat(&Tok::Comma, "','")?;
            let bundle = self.bundle_expr()?;
            return Ok(ClassExpr::WedgePower { p, bundle });
        }
        if let Some(j) = generator_degree(name) {
            let bundle = self.bundle_expr()?;
            return Ok(ClassExpr::Generator { j, bundle });
        }
        // Rewind to point at the offending identifier.
        self.pos -= 2;
        self.fail(&["a class function (c, cN, ch, td, tdC, e, wedge_alt, lambda)"])
    }

    fn wedge_degree(&mut self) -> Result<u32, ParseError> {
        if let Some(Tok::Rational(value)) = self.peek().cloned() {
            if value.is_integer() {
                if let Ok(p) = u32::try_from(value.to_integer()) {
                    self.pos += 1;
                    return Ok(p);
                }
            }
        }
        self.fail(&["a non-negative integer wedge degree"])
    }

    fn bundle_expr(&mut self) -> Result<BundleExpr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "dual" => {
                        self.eat(&Tok::LParen, "'('")?;
                        let inner = self.bundle_expr()?;
                        self.eat(&Tok::RParen, "')'")?;
                        Ok(BundleExpr::Dual(Box::new(inner)))
                    }
                    "sum" => {
                        self.eat(&Tok::LParen, "'('")?;
                        let mut parts = vec![self.bundle_expr()?];
                        self.eat(&Tok::Comma, "','")?;
                        parts.push(self.bundle_expr()?);
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            parts.push(self.bundle_expr()?);
                        }
                        self.eat(&Tok::RParen, "')'")?;
                        Ok(BundleExpr::Sum(parts))
                    }
                    _ => Ok(BundleExpr::Named(name)),
                }
            }
            _ => self.fail(&["a bundle name", "dual", "sum"]),
        }
    }
}

fn generator_degree(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('c')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

/// Parse a class expression.
pub fn parse_class_expr(text: &str) -> Result<ClassExpr, ParseError> {
    let (tokens, end) = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let ast = parser.expr()?;
    if parser.peek().is_some() {
        return parser.fail(&["'+'", "'-'", "'*'", "end of input"]);
    }
    Ok(ast)
}

/// Parse a bare bundle expression such as `dual(sum(E, T))`.
pub fn parse_bundle_expr(text: &str) -> Result<BundleExpr, ParseError> {
    let (tokens, end) = Lexer::new(text).tokenize()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let ast = parser.bundle_expr()?;
    if parser.peek().is_some() {
        return parser.fail(&["end of input"]);
    }
    Ok(ast)
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &ClassExpr, in_product: bool) -> fmt::Result {
    let needs_parens = matches!(child, ClassExpr::Sum(_) | ClassExpr::Neg(_))
        || (in_product && matches!(child, ClassExpr::Product(_)));
    if needs_parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Rational(r) => write!(f, "{r}"),
            ClassExpr::Generator { j, bundle } => write!(f, "c{j}({bundle})"),
            ClassExpr::Class { f: func, bundle } => write!(f, "{}({bundle})", func.name()),
            ClassExpr::WedgePower { p, bundle } => write!(f, "lambda({p}, {bundle})"),
            // The grammar has no unary minus, so a standalone negation
            // prints as a subtraction from zero.
            ClassExpr::Neg(inner) => {
                write!(f, "0 - ")?;
                write_child(f, inner, false)
            }
            ClassExpr::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write_child(f, factor, true)?;
                }
                Ok(())
            }
            ClassExpr::Sum(terms) => {
                for (i, term) in terms.iter().enumerate() {
                    match (i, term) {
                        (0, ClassExpr::Neg(inner)) => {
                            write!(f, "0 - ")?;
                            write_child(f, inner, false)?;
                        }
                        (0, _) => write_child(f, term, false)?,
                        (_, ClassExpr::Neg(inner)) => {
                            write!(f, " - ")?;
                            write_child(f, inner, false)?;
                        }
                        (_, _) => {
                            write!(f, " + ")?;
                            write_child(f, term, false)?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// Render an expression in the canonical surface syntax.
pub fn print_class_expr(ast: &ClassExpr) -> String {
    ast.to_string()
}

/// Evaluate an expression to a truncated series over `ctx`.
pub fn eval_class_expr(
    ast: &ClassExpr,
    ctx: &Arc<Context>,
    cutoff: u32,
) -> Result<ChernSeries, EvalError> {
    match ast {
        ClassExpr::Rational(r) => Ok(ChernSeries::constant(ctx, cutoff, r.clone())),
        ClassExpr::Generator { j, bundle } => {
            let bundle = bundle.resolve()?;
            if *j > cutoff {
                // Degrees above the cutoff are identically zero in the
                // truncated ring.
                let _ = bundle.rank(ctx)?;
                return Ok(ChernSeries::zero(ctx, cutoff));
            }
            let total = characteristic_class(ctx, ClassKind::TotalChern, &bundle, cutoff)?;
            Ok(total.homogeneous_part(*j)?)
        }
        ClassExpr::Class { f, bundle } => {
            let bundle = bundle.resolve()?;
            Ok(characteristic_class(ctx, f.kind(), &bundle, cutoff)?)
        }
        ClassExpr::WedgePower { p, bundle } => {
            let bundle = bundle.resolve()?;
            Ok(wedge_power_ch(ctx, *p, &bundle, cutoff)?)
        }
        ClassExpr::Neg(inner) => {
            let value = eval_class_expr(inner, ctx, cutoff)?;
            Ok(value.scale(&-Rat::from_integer(1.into())))
        }
        ClassExpr::Product(factors) => {
            let mut out = ChernSeries::one(ctx, cutoff);
            for factor in factors {
                out = out.mul(&eval_class_expr(factor, ctx, cutoff)?)?;
            }
            Ok(out)
        }
        ClassExpr::Sum(terms) => {
            let mut out = ChernSeries::zero(ctx, cutoff);
            for term in terms {
                out = out.add(&eval_class_expr(term, ctx, cutoff)?)?;
            }
            Ok(out)
        }
    }
}
