use std::collections::BTreeMap;
use std::fmt;

use crate::blade::Metric;
use crate::error::{Error, Result};
use crate::field::{ext_deriv, int_deriv, laplacian, matrix_div, tensor_deriv, MvField, MvMatrixField};
use crate::poly::PolyScalar;
use crate::scalar::{format_rational, integer, Coeff, Rational};

/// Concrete values bound to field symbols.
pub type Bindings = BTreeMap<String, MvField>;

/// Differential operators appearing in formal field expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldOp {
    Ext,
    Int,
    /// `∂·∂`, the normal form of `∂×(∂⊗·)`.
    Lap,
    Tensor,
    /// `∂×`, from a row-grade-1 matrix to a multivector.
    Div,
}

impl FieldOp {
    pub const ALL: [FieldOp; 5] = [FieldOp::Ext, FieldOp::Int, FieldOp::Lap, FieldOp::Tensor, FieldOp::Div];

    /// Serialized name.
    pub fn name(self) -> &'static str {
        match self {
            FieldOp::Ext => "ext",
            FieldOp::Int => "int",
            FieldOp::Lap => "lap",
            FieldOp::Tensor => "tensor",
            FieldOp::Div => "div",
        }
    }

    pub fn from_name(name: &str) -> Option<FieldOp> {
        FieldOp::ALL.into_iter().find(|op| op.name() == name)
    }

    /// Token in canonical equation text.
    pub fn token(self) -> &'static str {
        match self {
            FieldOp::Ext => "d^",
            FieldOp::Int => "d_|",
            FieldOp::Lap => "lap",
            FieldOp::Tensor => "dX",
            FieldOp::Div => "div",
        }
    }

    /// Result shape of applying the operator to `shape`.
    pub fn shape_after(self, shape: Shape) -> Result<Shape> {
        match (self, shape) {
            (FieldOp::Ext, Shape::Vector(g)) => Ok(Shape::Vector(g + 1)),
            (FieldOp::Int, Shape::Vector(g)) => Ok(Shape::Vector(g - 1)),
            (FieldOp::Lap, Shape::Vector(g)) => Ok(Shape::Vector(g)),
            (FieldOp::Tensor, Shape::Vector(g)) if g >= 0 => Ok(Shape::Matrix(g as usize)),
            (FieldOp::Div, Shape::Matrix(c)) => Ok(Shape::Vector(c as isize)),
            _ => Err(Error::Domain(format!("operator {} cannot act on {shape}", self.name()))),
        }
    }
}

/// Type of a field-valued expression: a grade-`g` multivector field, or a
/// matrix field with row grade 1 and column grade `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Vector(isize),
    Matrix(usize),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Vector(g) => write!(f, "grade-{g} field"),
            Shape::Matrix(c) => write!(f, "(1,{c}) matrix field"),
        }
    }
}

/// A concrete value of some [`Shape`].
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Vector(MvField),
    Matrix(MvMatrixField),
}

impl Value {
    pub fn zero(metric: Metric, shape: Shape) -> Value {
        match shape {
            Shape::Vector(g) => Value::Vector(MvField::zero(metric, g)),
            Shape::Matrix(c) => Value::Matrix(MvMatrixField::zero(metric, 1, c)),
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Value::Vector(v) => Shape::Vector(v.grade()),
            Value::Matrix(m) => Shape::Matrix(m.col_grade()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Vector(v) => v.is_zero(),
            Value::Matrix(m) => m.is_zero(),
        }
    }

    pub fn dot(&self, other: &Value) -> Result<PolyScalar> {
        match (self, other) {
            (Value::Vector(a), Value::Vector(b)) => a.dot(b),
            (Value::Matrix(a), Value::Matrix(b)) => a.mat_dot(b),
            _ => Err(Error::Domain("dot product of a vector with a matrix".into())),
        }
    }

    pub fn apply(&self, op: FieldOp) -> Result<Value> {
        Ok(match (op, self) {
            (FieldOp::Ext, Value::Vector(v)) => Value::Vector(ext_deriv(v)),
            (FieldOp::Int, Value::Vector(v)) => Value::Vector(int_deriv(v)),
            (FieldOp::Lap, Value::Vector(v)) => Value::Vector(laplacian(v)),
            (FieldOp::Tensor, Value::Vector(v)) => Value::Matrix(tensor_deriv(v)?),
            (FieldOp::Div, Value::Matrix(m)) => Value::Vector(matrix_div(m)?),
            _ => {
                return Err(Error::Domain(format!(
                    "operator {} cannot act on {}",
                    op.name(),
                    self.shape()
                )))
            }
        })
    }

    pub fn scale_rational(&self, factor: &Rational) -> Value {
        match self {
            Value::Vector(v) => Value::Vector(v.scale_rational(factor)),
            Value::Matrix(m) => Value::Matrix(m.scale_rational(factor)),
        }
    }

    pub fn checked_add(&self, other: &Value) -> Result<Value> {
        match (self, other) {
            (Value::Vector(a), Value::Vector(b)) => Ok(Value::Vector(a.checked_add(b)?)),
            (Value::Matrix(a), Value::Matrix(b)) => Ok(Value::Matrix(a.checked_add(b)?)),
            _ => Err(Error::Domain("sum of a vector and a matrix".into())),
        }
    }

    pub fn into_vector(self) -> Result<MvField> {
        match self {
            Value::Vector(v) => Ok(v),
            Value::Matrix(_) => Err(Error::Domain("expected a multivector field, found a matrix".into())),
        }
    }

    pub fn into_matrix(self) -> Result<MvMatrixField> {
        match self {
            Value::Matrix(m) => Ok(m),
            Value::Vector(_) => Err(Error::Domain("expected a matrix field, found a multivector".into())),
        }
    }
}

/// `coeff · op₁(op₂(… symbol))`, with `ops` listed outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTerm {
    pub coeff: Rational,
    pub ops: Vec<FieldOp>,
    pub symbol: String,
}

impl FormalTerm {
    pub fn new(coeff: Rational, ops: Vec<FieldOp>, symbol: impl Into<String>) -> FormalTerm {
        FormalTerm {
            coeff,
            ops: normalize_ops(ops),
            symbol: symbol.into(),
        }
    }

    /// `op₁ ( op₂ symbol )` without the coefficient.
    pub fn chain_text(&self) -> String {
        chain_text(&self.ops, &self.symbol)
    }

    pub fn evaluate(&self, bindings: &Bindings) -> Result<Value> {
        let field = bindings
            .get(&self.symbol)
            .ok_or_else(|| Error::Domain(format!("no value bound to symbol {}", self.symbol)))?;
        let mut value = Value::Vector(field.clone());
        for &op in self.ops.iter().rev() {
            value = value.apply(op)?;
        }
        Ok(value.scale_rational(&self.coeff))
    }
}

fn chain_text(ops: &[FieldOp], symbol: &str) -> String {
    match ops {
        [] => symbol.to_string(),
        [op] => format!("{} {symbol}", op.token()),
        [op, rest @ ..] => format!("{} ( {} )", op.token(), chain_text(rest, symbol)),
    }
}

/// Rewrites every adjacent `Div, Tensor` pair to `Lap`.
fn normalize_ops(ops: Vec<FieldOp>) -> Vec<FieldOp> {
    let mut out: Vec<FieldOp> = Vec::with_capacity(ops.len());
    for op in ops.into_iter().rev() {
        if op == FieldOp::Div && out.last() == Some(&FieldOp::Tensor) {
            out.pop();
            out.push(FieldOp::Lap);
        } else {
            out.push(op);
        }
    }
    out.reverse();
    out
}

/// Sum of [`FormalTerm`]s. Like terms are merged on insertion, zero terms are
/// dropped, and first-insertion order is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalExpr {
    terms: Vec<FormalTerm>,
}

impl FormalExpr {
    pub fn zero() -> FormalExpr {
        FormalExpr::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = FormalTerm>) -> FormalExpr {
        let mut out = FormalExpr::zero();
        for t in terms {
            out.push(t);
        }
        out
    }

    /// A single chain with coefficient one.
    pub fn chain(ops: Vec<FieldOp>, symbol: &str) -> FormalExpr {
        FormalExpr::from_terms([FormalTerm::new(integer(1), ops, symbol)])
    }

    pub fn push(&mut self, term: FormalTerm) {
        let term = FormalTerm::new(term.coeff, term.ops, term.symbol);
        if let Some(pos) = self
            .terms
            .iter()
            .position(|t| t.ops == term.ops && t.symbol == term.symbol)
        {
            let merged = &self.terms[pos].coeff + &term.coeff;
            if merged.is_zero() {
                self.terms.remove(pos);
            } else {
                self.terms[pos].coeff = merged;
            }
        } else if !term.coeff.is_zero() {
            self.terms.push(term);
        }
    }

    pub fn terms(&self) -> &[FormalTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &FormalExpr) -> FormalExpr {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> FormalExpr {
        FormalExpr::from_terms(self.terms.iter().map(|t| FormalTerm {
            coeff: &t.coeff * factor,
            ..t.clone()
        }))
    }

    pub fn negated(&self) -> FormalExpr {
        self.scaled(&integer(-1))
    }

    /// `op` applied to every term.
    pub fn apply(&self, op: FieldOp) -> FormalExpr {
        FormalExpr::from_terms(self.terms.iter().map(|t| {
            let mut ops = Vec::with_capacity(t.ops.len() + 1);
            ops.push(op);
            ops.extend_from_slice(&t.ops);
            FormalTerm::new(t.coeff.clone(), ops, t.symbol.clone())
        }))
    }

    /// Evaluates against concrete fields; the empty sum is the zero of `shape`.
    pub fn evaluate(&self, metric: Metric, shape: Shape, bindings: &Bindings) -> Result<Value> {
        let mut sum = Value::zero(metric, shape);
        for t in &self.terms {
            let value = t.evaluate(bindings)?;
            sum = sum.checked_add(&value)?;
        }
        Ok(sum)
    }
}

impl fmt::Display for FormalExpr {
    /// E.g. `d_| ( d^ A ) + 4 * A`; the empty sum prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let negative = crate::scalar::is_negative(&t.coeff);
            let magnitude = if negative { -&t.coeff } else { t.coeff.clone() };
            match (n, negative) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if magnitude != integer(1) {
                write!(f, "{} * ", format_rational(&magnitude))?;
            }
            f.write_str(&t.chain_text())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn div_tensor_becomes_laplacian() {
        let e = FormalExpr::chain(vec![FieldOp::Tensor], "a").apply(FieldOp::Div);
        assert_eq!(e.terms()[0].ops, vec![FieldOp::Lap]);
        let nested = FormalTerm::new(integer(1), vec![FieldOp::Int, FieldOp::Div, FieldOp::Tensor, FieldOp::Ext], "a");
        assert_eq!(nested.ops, vec![FieldOp::Int, FieldOp::Lap, FieldOp::Ext]);
    }

    #[test]
    fn like_terms_merge_and_cancel() {
        let mut e = FormalExpr::chain(vec![FieldOp::Ext], "A");
        e.push(FormalTerm::new(rational(1, 2), vec![FieldOp::Ext], "A"));
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].coeff, rational(3, 2));
        e.push(FormalTerm::new(rational(-3, 2), vec![FieldOp::Ext], "A"));
        assert!(e.is_zero());
    }

    #[test]
    fn canonical_text() {
        let mut e = FormalExpr::chain(vec![FieldOp::Int, FieldOp::Ext], "A");
        e.push(FormalTerm::new(integer(4), vec![], "A"));
        e.push(FormalTerm::new(rational(-1, 2), vec![FieldOp::Ext, FieldOp::Int], "A"));
        assert_eq!(e.to_string(), "d_| ( d^ A ) + 4 * A - 1/2 * d^ ( d_| A )");
        assert_eq!(FormalExpr::zero().to_string(), "0");
        assert_eq!(FormalExpr::chain(vec![], "J").negated().to_string(), "-J");
    }

    #[test]
    fn op_names_round_trip() {
        for op in FieldOp::ALL {
            assert_eq!(FieldOp::from_name(op.name()), Some(op));
        }
    }
}
