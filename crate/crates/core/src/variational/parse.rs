//! Parser for densities written as `c * (D f . D g) + …`.
//!
//! ```text
//! density := sign? term (sign term)*
//! term    := (rational '*')? '(' slot '.' slot ')'
//! slot    := ('d^' | 'd_|' | 'dX')? ident
//! ```
//!
//! `dX` is the tensor prefix only when not followed by an identifier
//! character, so `dX A` is `∂⊗A` while `dXA` is a symbol.

use num_traits::Zero;

use super::{DerivOp, FieldSymbol, LagrangianDensity, Role, Slot};
use crate::blade::Metric;
use crate::error::{Error, Result};
use crate::scalar::{integer, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Op(DerivOp),
    Open,
    Close,
    Dot,
    Star,
    Plus,
    Minus,
}

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let rest = &text[pos..];
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let (token, len) = if rest.starts_with("d^") {
            (Token::Op(DerivOp::Ext), 2)
        } else if rest.starts_with("d_|") {
            (Token::Op(DerivOp::Int), 3)
        } else if rest.starts_with("dX") && !rest[2..].starts_with(is_ident_char) {
            (Token::Op(DerivOp::Tensor), 2)
        } else if c.is_ascii_digit() {
            let end = rest
                .find(|ch: char| !(ch.is_ascii_digit() || ch == '/'))
                .unwrap_or(rest.len());
            let value = parse_rational(&rest[..end])
                .ok_or_else(|| parse_error(pos, format!("invalid rational {:?}", &rest[..end])))?;
            (Token::Number(value), end)
        } else if c.is_ascii_alphabetic() {
            let end = rest.find(|ch: char| !is_ident_char(ch)).unwrap_or(rest.len());
            (Token::Ident(rest[..end].to_string()), end)
        } else {
            let token = match c {
                '(' => Token::Open,
                ')' => Token::Close,
                '.' => Token::Dot,
                '*' => Token::Star,
                '+' => Token::Plus,
                '-' => Token::Minus,
                _ => return Err(parse_error(pos, format!("unexpected character {c:?}"))),
            };
            (token, c.len_utf8())
        };
        out.push((pos, token));
        while chars.peek().is_some_and(|&(p, _)| p < pos + len) {
            chars.next();
        }
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

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        let offset = self.offset();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(parse_error(offset, format!("expected {what}"))),
        }
    }

    fn slot(&mut self) -> Result<Slot> {
        let op = match self.peek() {
            Some(Token::Op(op)) => {
                let op = *op;
                self.pos += 1;
                op
            }
            _ => DerivOp::Id,
        };
        let offset = self.offset();
        match self.next() {
            Some(Token::Ident(name)) => Ok(Slot { op, symbol: name }),
            _ => Err(parse_error(offset, "expected a field symbol")),
        }
    }

    fn term(&mut self, sign: Rational) -> Result<(Rational, Slot, Slot)> {
        let mut coeff = sign;
        if let Some(Token::Number(value)) = self.peek() {
            coeff *= value.clone();
            self.pos += 1;
            self.expect(Token::Star, "'*' after the coefficient")?;
        }
        self.expect(Token::Open, "'('")?;
        let left = self.slot()?;
        self.expect(Token::Dot, "'.'")?;
        let right = self.slot()?;
        self.expect(Token::Close, "')'")?;
        Ok((coeff, left, right))
    }
}

/// Parses a density. Symbols absent from `declared` become sources whose
/// grade is inferred from the other factor of their term.
pub fn parse_lagrangian(text: &str, metric: Metric, declared: &[FieldSymbol]) -> Result<LagrangianDensity> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let mut terms = Vec::new();
    let mut first = true;
    while parser.peek().is_some() || first {
        let offset = parser.offset();
        let sign = match parser.peek() {
            Some(Token::Plus) => {
                parser.pos += 1;
                integer(1)
            }
            Some(Token::Minus) => {
                parser.pos += 1;
                integer(-1)
            }
            _ if first => integer(1),
            _ => return Err(parse_error(offset, "expected '+' or '-' between terms")),
        };
        first = false;
        terms.push((offset, parser.term(sign)?));
    }

    let mut symbols = declared.to_vec();
    let grade_of = |symbols: &[FieldSymbol], name: &str| symbols.iter().find(|s| s.name == name).map(|s| s.grade);
    loop {
        let mut progress = false;
        for (_, (_, left, right)) in &terms {
            for (unknown, known) in [(left, right), (right, left)] {
                if grade_of(&symbols, &unknown.symbol).is_some() {
                    continue;
                }
                let Some(g) = grade_of(&symbols, &known.symbol) else { continue };
                let shape = known.op.shape(g);
                let inferred = (0..=metric.dim()).find(|&c| unknown.op.shape(c) == shape);
                if let Some(grade) = inferred {
                    symbols.push(FieldSymbol {
                        name: unknown.symbol.clone(),
                        grade,
                        role: Role::Source,
                    });
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }

    let mut density = LagrangianDensity::new(metric, symbols)?;
    for (offset, (coeff, left, right)) in terms {
        if coeff.is_zero() {
            continue;
        }
        density.add_term(coeff, left, right).map_err(|e| parse_error(offset, e.to_string()))?;
    }
    Ok(density)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn m13() -> Metric {
        Metric::new(1, 3).unwrap()
    }

    #[test]
    fn parses_maxwell_text() {
        let declared = [FieldSymbol::dynamical("A", 1)];
        let l = parse_lagrangian("1/2*(d^A . d^A) + (J . A)", m13(), &declared).unwrap();
        assert_eq!(l.terms().len(), 2);
        assert_eq!(l.terms()[0].coeff, rational(1, 2));
        assert_eq!(l.terms()[0].left, Slot::new(DerivOp::Ext, "A"));
        assert_eq!(l.symbol("J").unwrap().grade, 1);
        assert_eq!(l.symbol("J").unwrap().role, Role::Source);
    }

    #[test]
    fn display_round_trips() {
        let declared = [FieldSymbol::dynamical("A", 1)];
        let text = "-1/2 * (d^ A . d^ A) - 3 * (d_| A . d_| A) + (dX A . dX A) + (J . A)";
        let l = parse_lagrangian(text, m13(), &declared).unwrap();
        assert_eq!(l.to_string(), text);
        assert_eq!(parse_lagrangian(&l.to_string(), m13(), &declared).unwrap(), l);
    }

    #[test]
    fn tensor_prefix_needs_separator() {
        let declared = [FieldSymbol::dynamical("dXA", 0)];
        let l = parse_lagrangian("(dXA . dXA)", m13(), &declared).unwrap();
        assert_eq!(l.terms()[0].left.op, DerivOp::Id);
    }

    #[test]
    fn errors_carry_offsets() {
        let declared = [FieldSymbol::dynamical("A", 1)];
        match parse_lagrangian("(A . A) (A . A)", m13(), &declared) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("unexpected {other:?}"),
        }
        match parse_lagrangian("(d^A . A)", m13(), &declared) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_lagrangian("(A . A) + #", m13(), &declared).is_err());
        assert!(parse_lagrangian("", m13(), &declared).is_err());
    }
}
