//! Algebra expressions typed on the command line.
//!
//! ```text
//! expr   := '-'? term (('+' | '-') term)*
//! term   := factor (op factor)*
//! op     := '^' | '.' | '_|' | '|_'
//! factor := rational | blade | poly | 'hodge(' expr ')' | 'invhodge(' expr ')'
//!         | 'd^' factor | 'd_|' factor | '(' expr ')'
//! blade  := 'e[' (digits (',' digits)*)? ']'
//! poly   := 'x' digits ('^' digits)?
//! ```
//!
//! All four products share one precedence level and associate to the left.
//! A `^` written directly after `x<i>` with a digit following it is an
//! exponent, so `x0^2` is a square while `x0 ^ 2` is `2 x0`.

use std::fmt;

use extcalc::field::{ext_deriv, int_deriv, MvField};
use extcalc::index::{IndexList, MAX_DIM};
use extcalc::scalar::{format_rational, parse_rational, Rational};
use extcalc::{Error, Metric, PolyScalar, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Wedge,
    Dot,
    LeftContract,
    RightContract,
}

impl Product {
    pub fn token(self) -> &'static str {
        match self {
            Product::Wedge => "^",
            Product::Dot => ".",
            Product::LeftContract => "_|",
            Product::RightContract => "|_",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Number(Rational),
    Blade(IndexList),
    Var { index: usize, power: u32 },
    Hodge(Box<Expr>),
    InvHodge(Box<Expr>),
    Ext(Box<Expr>),
    Int(Box<Expr>),
    Neg(Box<Expr>),
    Sum { negate: bool, lhs: Box<Expr>, rhs: Box<Expr> },
    Product { op: Product, lhs: Box<Expr>, rhs: Box<Expr> },
}

/// A parsed expression. `offset` is the byte position reported when
/// evaluating this node fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub offset: usize,
    pub node: Node,
}

fn error_at(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Blade(IndexList),
    Var(usize, u32),
    Hodge,
    InvHodge,
    Ext,
    Int,
    Op(Product),
    Plus,
    Minus,
    Open,
    Close,
}

fn digits_len(text: &str) -> usize {
    text.find(|c: char| !c.is_ascii_digit()).unwrap_or(text.len())
}

fn small_number<T: std::str::FromStr>(text: &str, offset: usize, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| error_at(offset, format!("{what} {text:?} is too large")))
}

fn lex_blade(text: &str, start: usize) -> Result<(Token, usize)> {
    // `text` starts just after "e[".
    let close = text
        .find(']')
        .ok_or_else(|| error_at(start, "unterminated blade literal"))?;
    let body = &text[..close];
    let mut indices: Vec<usize> = Vec::new();
    if !body.trim().is_empty() {
        let mut at = start + 2;
        for part in body.split(',') {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            if trimmed.is_empty() || digits_len(trimmed) != trimmed.len() {
                return Err(error_at(at + lead, "expected a blade index"));
            }
            let index: usize = small_number(trimmed, at + lead, "blade index")?;
            if index >= MAX_DIM {
                return Err(error_at(at + lead, format!("blade index {index} exceeds the maximum dimension {MAX_DIM}")));
            }
            if indices.last().is_some_and(|&p| p >= index) {
                return Err(error_at(at + lead, "indices must be strictly increasing"));
            }
            indices.push(index);
            at += part.len() + 1;
        }
    }
    let list = IndexList::new(&indices).map_err(|e| error_at(start, e.to_string()))?;
    Ok((Token::Blade(list), close + 3))
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < text.len() {
        let rest = &text[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let (token, len) = if rest.starts_with("d^") {
            (Token::Ext, 2)
        } else if rest.starts_with("d_|") {
            (Token::Int, 3)
        } else if rest.starts_with("_|") {
            (Token::Op(Product::LeftContract), 2)
        } else if rest.starts_with("|_") {
            (Token::Op(Product::RightContract), 2)
        } else if rest.starts_with("hodge(") {
            (Token::Hodge, 6)
        } else if rest.starts_with("invhodge(") {
            (Token::InvHodge, 9)
        } else if let Some(blade) = rest.strip_prefix("e[") {
            lex_blade(blade, pos)?
        } else if c == 'x' && rest[1..].starts_with(|d: char| d.is_ascii_digit()) {
            let n = digits_len(&rest[1..]);
            let index = small_number(&rest[1..1 + n], pos, "coordinate index")?;
            let mut len = 1 + n;
            let mut power = 1;
            let tail = &rest[len..];
            if tail.starts_with('^') && tail[1..].starts_with(|d: char| d.is_ascii_digit()) {
                let m = digits_len(&tail[1..]);
                power = small_number(&tail[1..1 + m], pos + len + 1, "exponent")?;
                len += 1 + m;
            }
            (Token::Var(index, power), len)
        } else if c.is_ascii_digit() {
            let mut len = digits_len(rest);
            if rest[len..].starts_with('/') && rest[len + 1..].starts_with(|d: char| d.is_ascii_digit()) {
                len += 1 + digits_len(&rest[len + 1..]);
            }
            let value = parse_rational(&rest[..len])
                .ok_or_else(|| error_at(pos, format!("invalid rational {:?}", &rest[..len])))?;
            (Token::Number(value), len)
        } else {
            let token = match c {
                '^' => Token::Op(Product::Wedge),
                '.' => Token::Op(Product::Dot),
                '+' => Token::Plus,
                '-' => Token::Minus,
                '(' => Token::Open,
                ')' => Token::Close,
                _ => return Err(error_at(pos, format!("unknown token {c:?}"))),
            };
            (token, 1)
        };
        out.push((pos, token));
        pos += len;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn close(&mut self) -> Result<()> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Close) => Ok(()),
            _ => Err(error_at(offset, "expected ')'")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let start = self.offset();
        let mut lhs = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            let inner = self.term()?;
            Expr {
                offset: start,
                node: Node::Neg(Box::new(inner)),
            }
        } else {
            self.term()?
        };
        while let Some(tok @ (Token::Plus | Token::Minus)) = self.peek() {
            let negate = *tok == Token::Minus;
            let offset = self.offset();
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr {
                offset,
                node: Node::Sum {
                    negate,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some(Token::Op(op)) = self.peek() {
            let op = *op;
            let offset = self.offset();
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr {
                offset,
                node: Node::Product {
                    op,
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let offset = self.offset();
        let node = match self.bump() {
            Some(Token::Number(value)) => Node::Number(value),
            Some(Token::Blade(list)) => Node::Blade(list),
            Some(Token::Var(index, power)) => Node::Var { index, power },
            Some(Token::Hodge) => {
                let inner = self.expr()?;
                self.close()?;
                Node::Hodge(Box::new(inner))
            }
            Some(Token::InvHodge) => {
                let inner = self.expr()?;
                self.close()?;
                Node::InvHodge(Box::new(inner))
            }
            Some(Token::Ext) => Node::Ext(Box::new(self.factor()?)),
            Some(Token::Int) => Node::Int(Box::new(self.factor()?)),
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.close()?;
                return Ok(inner);
            }
            Some(_) => return Err(error_at(offset, "expected an operand")),
            None => return Err(error_at(offset, "unexpected end of input")),
        };
        Ok(Expr { offset, node })
    }
}

/// Parses `text` into an untyped tree; grades are checked by [`Expr::evaluate`].
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(error_at(parser.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Parses and evaluates in one step.
pub fn eval_text(text: &str, metric: Metric) -> Result<MvField> {
    parse_expr(text)?.evaluate(metric)
}

impl Expr {
    /// Evaluates to a homogeneous field. Sums of different grades are
    /// rejected unless one side is zero.
    pub fn evaluate(&self, metric: Metric) -> Result<MvField> {
        let at = |e: Error| match e {
            Error::Parse { .. } => e,
            other => error_at(self.offset, other.to_string()),
        };
        match &self.node {
            Node::Number(value) => Ok(MvField::scalar(metric, PolyScalar::constant(value.clone()))),
            Node::Blade(list) => MvField::term(metric, *list, PolyScalar::constant(extcalc::scalar::integer(1))).map_err(at),
            Node::Var { index, power } => {
                if *index >= metric.dim() {
                    return Err(error_at(
                        self.offset,
                        format!("coordinate x{index} outside a {}-dimensional space", metric.dim()),
                    ));
                }
                let mut exps = vec![0u8; index + 1];
                exps[*index] = u8::try_from(*power).map_err(|_| error_at(self.offset, "exponent too large"))?;
                let mono = extcalc::poly::Monomial::from_exponents(&exps);
                Ok(MvField::scalar(metric, PolyScalar::monomial(mono, extcalc::scalar::integer(1))))
            }
            Node::Hodge(inner) => Ok(inner.evaluate(metric)?.hodge()),
            Node::InvHodge(inner) => Ok(inner.evaluate(metric)?.inv_hodge()),
            Node::Ext(inner) => Ok(ext_deriv(&inner.evaluate(metric)?)),
            Node::Int(inner) => Ok(int_deriv(&inner.evaluate(metric)?)),
            Node::Neg(inner) => Ok(-inner.evaluate(metric)?),
            Node::Sum { negate, lhs, rhs } => {
                let a = lhs.evaluate(metric)?;
                let b = rhs.evaluate(metric)?;
                let b = if *negate { -b } else { b };
                if a.is_zero() {
                    return Ok(b);
                }
                if b.is_zero() {
                    return Ok(a);
                }
                a.checked_add(&b).map_err(at)
            }
            Node::Product { op, lhs, rhs } => {
                let a = lhs.evaluate(metric)?;
                let b = rhs.evaluate(metric)?;
                match op {
                    Product::Wedge => Ok(a.wedge(&b)),
                    Product::LeftContract => Ok(a.left_contract(&b)),
                    Product::RightContract => Ok(a.right_contract(&b)),
                    Product::Dot => {
                        if a.grade() != b.grade() {
                            return Err(error_at(
                                self.offset,
                                format!("'.' needs equal grades, found {} and {}", a.grade(), b.grade()),
                            ));
                        }
                        Ok(MvField::scalar(metric, a.dot(&b).map_err(at)?))
                    }
                }
            }
        }
    }
}

/// Fully parenthesized text that parses back to the same tree shape.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Number(value) => f.write_str(&format_rational(value)),
            Node::Blade(list) => write!(f, "e{list}"),
            Node::Var { index, power: 1 } => write!(f, "x{index}"),
            Node::Var { index, power } => write!(f, "x{index}^{power}"),
            Node::Hodge(inner) => write!(f, "hodge({inner})"),
            Node::InvHodge(inner) => write!(f, "invhodge({inner})"),
            Node::Ext(inner) => write!(f, "d^ ({inner})"),
            Node::Int(inner) => write!(f, "d_| ({inner})"),
            Node::Neg(inner) => write!(f, "-({inner})"),
            Node::Sum { negate, lhs, rhs } => write!(f, "({lhs}) {} ({rhs})", if *negate { '-' } else { '+' }),
            Node::Product { op, lhs, rhs } => write!(f, "({lhs}) {} ({rhs})", op.token()),
        }
    }
}
