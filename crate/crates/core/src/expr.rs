//! Text form of right-hand sides.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := "-" unary | power
//! power    := primary ("^" exponent)?
//! exponent := (number | "(" expr ")") ("^" exponent)?
//! primary  := number | variable | function "(" expr ")" | "(" expr ")"
//! variable := "x" | "y" | "y" digit+        (y1, y2, ...)
//! function := "sin" | "cos" | "tan" | "exp" | "ln" | "sqrt" | "abs"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)`. Domain errors (division by zero, `ln` of a negative number)
//! are not caught here; they evaluate to non-finite values.

use std::fmt;
use thiserror::Error;

use crate::model::{OdeSystem, Rhs};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("variable `{0}` is not bound")]
    Unbound(String),

    #[error("expected {expected} expressions, got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("{}", format_components(.0))]
    Components(Vec<(usize, ExprError)>),
}

fn format_components(errors: &[(usize, ExprError)]) -> String {
    errors
        .iter()
        .map(|(i, e)| format!("component {}: {e}", i + 1))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    /// Bare `y`, only meaningful for one-dimensional systems.
    Y,
    /// `y1`, `y2`, ... (1-based as written).
    Indexed(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("x"),
            Var::Y => f.write_str("y"),
            Var::Indexed(i) => write!(f, "y{i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }

    fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            BinOp::Add => a + b,
            BinOp::Sub => a - b,
            BinOp::Mul => a * b,
            BinOp::Div => a / b,
            BinOp::Pow => a.powf(b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Exp => v.exp(),
            Func::Ln => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    fn is_atom(&self) -> bool {
        matches!(self, Expr::Num(_) | Expr::Var(_) | Expr::Call(..))
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atom() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }

    fn visit_vars(&self, out: &mut Vec<Var>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(*v),
            Expr::Neg(e) | Expr::Call(_, e) => e.visit_vars(out),
            Expr::Bin(_, l, r) => {
                l.visit_vars(out);
                r.visit_vars(out);
            }
        }
    }
}

/// Fully parenthesized except around atoms; reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.fmt_operand(f)
            }
            // Exponents must be literals or parenthesized.
            Expr::Bin(BinOp::Pow, l, r) if !matches!(**r, Expr::Num(_)) => {
                l.fmt_operand(f)?;
                write!(f, " ^ ({r})")
            }
            Expr::Bin(op, l, r) => {
                l.fmt_operand(f)?;
                write!(f, " {} ", op.symbol())?;
                r.fmt_operand(f)
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

/// A parsed expression.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    root: Expr,
}

impl Expression {
    pub fn root(&self) -> &Expr {
        &self.root
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars = Vec::new();
        self.root.visit_vars(&mut vars);
        vars
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for Expression {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["number", "variable", "function", "'('", "'-'"];

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lexeme = &text[start..i];
            let value: f64 = lexeme.parse().map_err(|_| ExprError::Syntax {
                offset: start,
                found: format!("`{lexeme}`"),
                expected: vec!["number"],
            })?;
            toks.push((Tok::Num(value), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        }
        let ch = text[start..].chars().next().unwrap_or('?');
        return Err(ExprError::Syntax {
            offset: start,
            found: format!("character '{ch}'"),
            expected: OPERAND.to_vec(),
        });
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ExprError {
        ExprError::Syntax {
            offset: self.offset(),
            found: self.peek().describe(),
            expected: expected.to_vec(),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ExprError> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&["operator", "')'"]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        self.power_tail(base)
    }

    fn power_tail(&mut self, base: Expr) -> Result<Expr, ExprError> {
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_base = match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Expr::Num(v)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                inner
            }
            _ => return Err(self.error(&["number", "'('"])),
        };
        let exponent = self.power_tail(exp_base)?;
        Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)))
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let offset = self.offset();
                self.bump();
                if let Some(func) = Func::from_name(&name) {
                    if *self.peek() != Tok::LParen {
                        return Err(self.error(&["'('"]));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                match parse_var(&name) {
                    Some(v) => Ok(Expr::Var(v)),
                    None => Err(ExprError::UnknownIdentifier { name, offset }),
                }
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

fn parse_var(name: &str) -> Option<Var> {
    match name {
        "x" => Some(Var::X),
        "y" => Some(Var::Y),
        _ => {
            let digits = name.strip_prefix('y')?;
            if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok().map(Var::Indexed)
        }
    }
}

pub fn parse(text: &str) -> Result<Expression, ExprError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(Expression { root })
}

fn lookup(v: Var, x: f64, y: &[f64]) -> Option<f64> {
    match v {
        Var::X => Some(x),
        Var::Y if y.len() == 1 => Some(y[0]),
        Var::Y => None,
        Var::Indexed(i) => y.get(i - 1).copied(),
    }
}

fn eval_node(e: &Expr, x: f64, y: &[f64]) -> Result<f64, ExprError> {
    Ok(match e {
        Expr::Num(v) => *v,
        Expr::Var(v) => lookup(*v, x, y).ok_or_else(|| ExprError::Unbound(v.to_string()))?,
        Expr::Neg(inner) => -eval_node(inner, x, y)?,
        Expr::Bin(op, l, r) => op.apply(eval_node(l, x, y)?, eval_node(r, x, y)?),
        Expr::Call(func, arg) => func.apply(eval_node(arg, x, y)?),
    })
}

/// Evaluates at `(x, y)`. `y` binds `y1..yn`, and bare `y` when `n = 1`.
pub fn evaluate(expr: &Expression, x: f64, y: &[f64]) -> Result<f64, ExprError> {
    eval_node(&expr.root, x, y)
}

/// Expression with variables resolved to state indices.
#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    X,
    State(usize),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn eval(&self, x: f64, y: &[f64]) -> f64 {
        match self {
            Node::Num(v) => *v,
            Node::X => x,
            Node::State(i) => y[*i],
            Node::Neg(e) => -e.eval(x, y),
            Node::Bin(op, l, r) => op.apply(l.eval(x, y), r.eval(x, y)),
            Node::Call(f, a) => f.apply(a.eval(x, y)),
        }
    }
}

fn resolve(e: &Expr, dimension: usize) -> Result<Node, String> {
    Ok(match e {
        Expr::Num(v) => Node::Num(*v),
        Expr::Var(Var::X) => Node::X,
        Expr::Var(Var::Y) if dimension == 1 => Node::State(0),
        Expr::Var(v @ Var::Y) => return Err(v.to_string()),
        Expr::Var(Var::Indexed(i)) if *i <= dimension => Node::State(i - 1),
        Expr::Var(v @ Var::Indexed(_)) => return Err(v.to_string()),
        Expr::Neg(inner) => Node::Neg(Box::new(resolve(inner, dimension)?)),
        Expr::Bin(op, l, r) => Node::Bin(*op, Box::new(resolve(l, dimension)?), Box::new(resolve(r, dimension)?)),
        Expr::Call(f, a) => Node::Call(*f, Box::new(resolve(a, dimension)?)),
    })
}

/// An expression checked against a state dimension; evaluation cannot fail.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledExpr {
    node: Node,
    dimension: usize,
}

impl CompiledExpr {
    pub fn eval(&self, x: f64, y: &[f64]) -> f64 {
        self.node.eval(x, y)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

/// Parses `text` and binds its variables to `x, y1..yn`.
pub fn compile(text: &str, dimension: usize) -> Result<CompiledExpr, ExprError> {
    let expr = parse(text)?;
    let node = resolve(&expr.root, dimension).map_err(|name| ExprError::UnknownIdentifier {
        offset: find_identifier(text, &name),
        name,
    })?;
    Ok(CompiledExpr { node, dimension })
}

fn find_identifier(text: &str, name: &str) -> usize {
    let bytes = text.as_bytes();
    let is_ident = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    let mut from = 0;
    while let Some(pos) = text[from..].find(name) {
        let at = from + pos;
        let end = at + name.len();
        let before_ok = at == 0 || !is_ident(bytes[at - 1]);
        let after_ok = end >= bytes.len() || !is_ident(bytes[end]);
        if before_ok && after_ok {
            return at;
        }
        from = at + 1;
    }
    0
}

/// Right-hand side built from one compiled expression per component.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledRhs {
    components: Vec<CompiledExpr>,
}

impl CompiledRhs {
    pub fn dimension(&self) -> usize {
        self.components.len()
    }
}

impl Rhs for CompiledRhs {
    fn eval(&self, x: f64, y: &[f64], dydx: &mut [f64]) {
        for (out, c) in dydx.iter_mut().zip(&self.components) {
            *out = c.eval(x, y);
        }
    }
}

/// Compiles `n` component expressions. All components are checked;
/// failures are reported together with their (0-based) indices.
pub fn compile_rhs(texts: &[impl AsRef<str>], dimension: usize) -> Result<CompiledRhs, ExprError> {
    if texts.len() != dimension || dimension == 0 {
        return Err(ExprError::ComponentCount { expected: dimension, got: texts.len() });
    }
    let mut components = Vec::with_capacity(dimension);
    let mut errors = Vec::new();
    for (i, t) in texts.iter().enumerate() {
        match compile(t.as_ref(), dimension) {
            Ok(c) => components.push(c),
            Err(e) => errors.push((i, e)),
        }
    }
    if !errors.is_empty() {
        return Err(ExprError::Components(errors));
    }
    Ok(CompiledRhs { components })
}

/// Builds an `n`-dimensional system from one expression per component.
pub fn compile_system(texts: &[impl AsRef<str>], dimension: usize) -> Result<OdeSystem, ExprError> {
    let rhs = compile_rhs(texts, dimension)?;
    Ok(OdeSystem::new(dimension, rhs).expect("dimension checked above"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(text: &str) -> String {
        parse(text).unwrap().to_string()
    }

    #[test]
    fn precedence_shapes() {
        assert_eq!(tree("y - 2*x/y"), "y - ((2 * x) / y)");
        assert_eq!(tree("-x^2"), "-(x ^ 2)");
        assert_eq!(tree("2^3^2"), "2 ^ (3 ^ 2)");
        assert_eq!(tree("1 - 2 - 3"), "(1 - 2) - 3");
        assert_eq!(tree("8 / 4 / 2"), "(8 / 4) / 2");
        assert_eq!(tree("-(x)^2"), "-(x ^ 2)");
        assert_eq!(tree("(-x)^2"), "(-x) ^ 2");
        assert_eq!(tree("2*-x"), "2 * (-x)");
        assert_eq!(tree("x^(y)"), "x ^ (y)");
        assert_eq!(tree("x^(sin(x))"), "x ^ (sin(x))");
    }

    #[test]
    fn unclosed_call_reports_end_offset() {
        match parse("y1 + sin(") {
            Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_identifiers() {
        assert_eq!(
            parse("x + foo").unwrap_err(),
            ExprError::UnknownIdentifier { name: "foo".into(), offset: 4 }
        );
        assert!(matches!(parse("y0"), Err(ExprError::UnknownIdentifier { .. })));
        assert!(matches!(parse("y01"), Err(ExprError::UnknownIdentifier { .. })));
    }

    #[test]
    fn exponent_must_be_literal_or_parenthesized() {
        assert!(matches!(parse("x^y"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("x^-1"), Err(ExprError::Syntax { offset: 2, .. })));
        assert!(parse("x^(-1)").is_ok());
        assert!(parse("x^(y)").is_ok());
    }

    #[test]
    fn evaluation_examples() {
        let e = parse("y - 2*x/y").unwrap();
        assert_eq!(evaluate(&e, 0.0, &[1.0]).unwrap(), 1.0);
        let s3 = 3f64.sqrt();
        let v = evaluate(&e, 1.0, &[s3]).unwrap();
        assert!((v - 1.0 / s3).abs() < 1e-15);
        assert!((v - 0.577350).abs() < 1e-6);
        let r = evaluate(&parse("sqrt(1 + 2*x)").unwrap(), 0.4, &[]).unwrap();
        assert!((r - 1.341641).abs() < 1e-6);
    }

    #[test]
    fn unbound_variable() {
        let e = parse("y2 + 1").unwrap();
        assert_eq!(evaluate(&e, 0.0, &[1.0]), Err(ExprError::Unbound("y2".into())));
        let bare = parse("y").unwrap();
        assert!(evaluate(&bare, 0.0, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn domain_errors_propagate_as_non_finite() {
        assert!(evaluate(&parse("1/x").unwrap(), 0.0, &[]).unwrap().is_infinite());
        assert!(evaluate(&parse("ln(x)").unwrap(), -1.0, &[]).unwrap().is_nan());
        assert!(evaluate(&parse("sqrt(x)").unwrap(), -1.0, &[]).unwrap().is_nan());
    }

    #[test]
    fn compile_system_examples() {
        let sys = compile_system(&["y - 2*x/y"], 1).unwrap();
        assert_eq!(sys.eval(0.0, &[1.0]), vec![1.0]);
        let osc = compile_system(&["y2", "-y1"], 2).unwrap();
        assert_eq!(osc.eval(0.0, &[3.0, 4.0]), vec![4.0, -3.0]);
        match compile_system(&["y1", "y3"], 2) {
            Err(ExprError::Components(errs)) => {
                assert_eq!(errs.len(), 1);
                assert_eq!(errs[0].0, 1);
                assert_eq!(errs[0].1, ExprError::UnknownIdentifier { name: "y3".into(), offset: 0 });
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bare_y_only_in_scalar_systems() {
        assert!(compile_system(&["y"], 1).is_ok());
        assert!(compile_system(&["y", "y1"], 2).is_err());
    }

    #[test]
    fn component_errors_are_aggregated() {
        match compile_system(&["(", "y2", "zz"], 3) {
            Err(ExprError::Components(errs)) => {
                assert_eq!(errs.iter().map(|e| e.0).collect::<Vec<_>>(), vec![0, 2]);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            compile_system(&["y1"], 2),
            Err(ExprError::ComponentCount { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn number_forms() {
        for (text, v) in [("1.5", 1.5), (".25", 0.25), ("3.", 3.0), ("1e3", 1000.0), ("2.5E-1", 0.25)] {
            assert_eq!(evaluate(&parse(text).unwrap(), 0.0, &[]).unwrap(), v, "{text}");
        }
    }
}
