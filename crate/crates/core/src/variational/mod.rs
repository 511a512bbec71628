//! Quadratic Lagrangian densities, vector derivatives and the two forms of
//! the Euler–Lagrange equations.
//!
//! A density is a sum of terms `c (D₁f₁ · D₂f₂)` where each `D` is one of
//! `Id`, `∂∧`, `∂⌋`, `∂⊗`. Distinct slots of the same symbol are independent
//! variables. Vector derivatives use the two product rules
//! `∂_X (X·X) = 2X` and `∂_X (X·Y) = Y`, which makes [`vderiv`] total.
//!
//! Independent of that formal route, [`jet`] differentiates a density with
//! respect to individual field components and their first partials. It
//! backs the tensor-form identity check and the first variation.

mod expr;
pub mod jet;
mod parse;

use std::fmt;

use crate::blade::Metric;
use crate::error::{Error, Result};
use crate::field::MvField;
use crate::poly::PolyScalar;
use crate::random::FieldRng;
use crate::scalar::{format_rational, integer, sign_rational, Coeff, Rational};
use crate::index::Sign;

pub use expr::{Bindings, FieldOp, FormalExpr, FormalTerm, Shape, Value};
pub use jet::{first_variation, first_variation_exterior, linear_coefficient, tensor_route, FirstVariation, TensorRoute};
pub use parse::parse_lagrangian;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Dynamical,
    Source,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSymbol {
    pub name: String,
    pub grade: usize,
    pub role: Role,
}

impl FieldSymbol {
    pub fn dynamical(name: &str, grade: usize) -> FieldSymbol {
        FieldSymbol {
            name: name.into(),
            grade,
            role: Role::Dynamical,
        }
    }

    pub fn source(name: &str, grade: usize) -> FieldSymbol {
        FieldSymbol {
            name: name.into(),
            grade,
            role: Role::Source,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivOp {
    Id,
    Ext,
    Int,
    Tensor,
}

impl DerivOp {
    /// Prefix used by the Lagrangian mini-grammar.
    pub fn token(self) -> &'static str {
        match self {
            DerivOp::Id => "",
            DerivOp::Ext => "d^",
            DerivOp::Int => "d_|",
            DerivOp::Tensor => "dX",
        }
    }

    pub fn field_ops(self) -> Vec<FieldOp> {
        match self {
            DerivOp::Id => vec![],
            DerivOp::Ext => vec![FieldOp::Ext],
            DerivOp::Int => vec![FieldOp::Int],
            DerivOp::Tensor => vec![FieldOp::Tensor],
        }
    }

    /// Shape of the slot applied to a field of grade `grade`.
    pub fn shape(self, grade: usize) -> Shape {
        let g = grade as isize;
        match self {
            DerivOp::Id => Shape::Vector(g),
            DerivOp::Ext => Shape::Vector(g + 1),
            DerivOp::Int => Shape::Vector(g - 1),
            DerivOp::Tensor => Shape::Matrix(grade),
        }
    }
}

/// `D f`: one factor of a dot-product term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slot {
    pub op: DerivOp,
    pub symbol: String,
}

impl Slot {
    pub fn new(op: DerivOp, symbol: &str) -> Slot {
        Slot {
            op,
            symbol: symbol.into(),
        }
    }

    pub fn text(&self) -> String {
        match self.op {
            DerivOp::Id => self.symbol.clone(),
            op => format!("{} {}", op.token(), self.symbol),
        }
    }
}

/// `coeff · (left · right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianTerm {
    pub coeff: Rational,
    pub left: Slot,
    pub right: Slot,
}

/// Sum of dot-product terms over declared field symbols.
///
/// Invariants: every slot names a declared symbol, both factors of a term
/// have the same shape, and at most one symbol is dynamical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianDensity {
    metric: Metric,
    symbols: Vec<FieldSymbol>,
    terms: Vec<LagrangianTerm>,
}

impl LagrangianDensity {
    pub fn new(metric: Metric, symbols: Vec<FieldSymbol>) -> Result<LagrangianDensity> {
        for (n, s) in symbols.iter().enumerate() {
            if s.grade > metric.dim() {
                return Err(Error::Domain(format!(
                    "symbol {} has grade {} beyond dimension {}",
                    s.name,
                    s.grade,
                    metric.dim()
                )));
            }
            if symbols[..n].iter().any(|t| t.name == s.name) {
                return Err(Error::Domain(format!("symbol {} declared twice", s.name)));
            }
        }
        if symbols.iter().filter(|s| s.role == Role::Dynamical).count() > 1 {
            return Err(Error::Domain("at most one dynamical field is supported".into()));
        }
        Ok(LagrangianDensity {
            metric,
            symbols,
            terms: Vec::new(),
        })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn symbols(&self) -> &[FieldSymbol] {
        &self.symbols
    }

    pub fn terms(&self) -> &[LagrangianTerm] {
        &self.terms
    }

    pub fn symbol(&self, name: &str) -> Result<&FieldSymbol> {
        self.symbols
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Domain(format!("undeclared symbol {name}")))
    }

    pub fn dynamical(&self) -> Option<&FieldSymbol> {
        self.symbols.iter().find(|s| s.role == Role::Dynamical)
    }

    pub fn slot_shape(&self, slot: &Slot) -> Result<Shape> {
        Ok(slot.op.shape(self.symbol(&slot.symbol)?.grade))
    }

    pub fn add_term(&mut self, coeff: Rational, left: Slot, right: Slot) -> Result<()> {
        let (ls, rs) = (self.slot_shape(&left)?, self.slot_shape(&right)?);
        if ls != rs {
            return Err(Error::Domain(format!(
                "dot product of {} ({ls}) with {} ({rs})",
                left.text(),
                right.text()
            )));
        }
        self.terms.push(LagrangianTerm { coeff, left, right });
        Ok(())
    }

    /// Builder form of [`LagrangianDensity::add_term`].
    pub fn with_term(mut self, coeff: Rational, left: Slot, right: Slot) -> Result<Self> {
        self.add_term(coeff, left, right)?;
        Ok(self)
    }

    pub fn uses(&self, op: DerivOp) -> bool {
        self.terms.iter().any(|t| t.left.op == op || t.right.op == op)
    }

    pub fn scaled(&self, factor: &Rational) -> LagrangianDensity {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff = &t.coeff * factor;
        }
        out
    }

    /// Term-list concatenation; both densities must declare the same symbols.
    pub fn sum(&self, other: &LagrangianDensity) -> Result<LagrangianDensity> {
        if self.metric != other.metric {
            return Err(Error::MetricMismatch);
        }
        if self.symbols != other.symbols {
            return Err(Error::Domain("densities declare different symbols".into()));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    pub fn evaluate_slot(&self, slot: &Slot, bindings: &Bindings) -> Result<Value> {
        let symbol = self.symbol(&slot.symbol)?;
        let field = bindings
            .get(&slot.symbol)
            .ok_or_else(|| Error::Domain(format!("no value bound to symbol {}", slot.symbol)))?;
        if field.metric() != self.metric {
            return Err(Error::MetricMismatch);
        }
        if field.grade() != symbol.grade as isize {
            return Err(Error::GradeMismatch {
                expected: symbol.grade as isize,
                found: field.grade(),
            });
        }
        let mut value = Value::Vector(field.clone());
        for op in slot.op.field_ops() {
            value = value.apply(op)?;
        }
        Ok(value)
    }

    /// The scalar density at concrete fields.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<PolyScalar> {
        let mut sum = PolyScalar::zero();
        for t in &self.terms {
            let left = self.evaluate_slot(&t.left, bindings)?;
            let right = self.evaluate_slot(&t.right, bindings)?;
            sum.plus_assign(&left.dot(&right)?.scaled(&t.coeff));
        }
        Ok(sum)
    }

    /// Random bindings for every symbol; trial indices 0..3 give the
    /// degenerate cases of [`FieldRng::field_case`].
    pub fn random_bindings(&self, rng: &mut FieldRng, max_degree: u32, index: usize) -> Bindings {
        self.symbols
            .iter()
            .map(|s| (s.name.clone(), rng.field_case(self.metric, s.grade, max_degree, index)))
            .collect()
    }
}

impl fmt::Display for LagrangianDensity {
    /// Mini-grammar text, e.g. `-1/2 * (d^ A . d^ A) + (J . A)`.
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
            write!(f, "({} . {})", t.left.text(), t.right.text())?;
        }
        Ok(())
    }
}

fn dynamical_symbol(l: &LagrangianDensity) -> Result<&FieldSymbol> {
    l.dynamical()
        .ok_or_else(|| Error::Domain("the density has no dynamical field".into()))
}

fn slot_expr(slot: &Slot, coeff: Rational) -> FormalTerm {
    FormalTerm::new(coeff, slot.op.field_ops(), slot.symbol.clone())
}

/// Formal vector derivative `∂_X L` with respect to the slot `wrt`.
pub fn vderiv(l: &LagrangianDensity, wrt: &Slot) -> Result<FormalExpr> {
    let symbol = l.symbol(&wrt.symbol)?;
    if symbol.role != Role::Dynamical {
        return Err(Error::Domain(format!(
            "cannot differentiate with respect to source symbol {}",
            wrt.symbol
        )));
    }
    let mut out = FormalExpr::zero();
    for t in &l.terms {
        match (&t.left == wrt, &t.right == wrt) {
            (true, true) => out.push(slot_expr(wrt, &t.coeff * integer(2))),
            (true, false) => out.push(slot_expr(&t.right, t.coeff.clone())),
            (false, true) => out.push(slot_expr(&t.left, t.coeff.clone())),
            (false, false) => {}
        }
    }
    Ok(out)
}

/// A field equation `lhs = rhs` of the given grade in the dynamical `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEquation {
    pub metric: Metric,
    pub grade: isize,
    pub field: String,
    pub lhs: FormalExpr,
    pub rhs: FormalExpr,
}

impl FieldEquation {
    pub fn new(metric: Metric, grade: isize, field: &str, lhs: FormalExpr, rhs: FormalExpr) -> FieldEquation {
        FieldEquation {
            metric,
            grade,
            field: field.into(),
            lhs,
            rhs,
        }
    }

    /// `lhs − rhs` at concrete fields.
    pub fn residual(&self, bindings: &Bindings) -> Result<MvField> {
        let shape = Shape::Vector(self.grade);
        let lhs = self.lhs.evaluate(self.metric, shape, bindings)?.into_vector()?;
        let rhs = self.rhs.evaluate(self.metric, shape, bindings)?.into_vector()?;
        lhs.checked_sub(&rhs)
    }

    pub fn holds(&self, bindings: &Bindings) -> Result<bool> {
        Ok(self.residual(bindings)?.is_zero())
    }

    /// Presentation form: terms in the dynamical field on the left, sources
    /// on the right. Negative dynamical terms join the right side after the
    /// sources, unless that would leave the left side empty.
    pub fn arranged(&self) -> FieldEquation {
        let is_dynamical = |t: &FormalTerm| t.symbol == self.field;
        let difference = self.rhs.plus(&self.lhs.negated());
        let dynamical: Vec<_> = difference.terms().iter().filter(|t| is_dynamical(t)).cloned().collect();
        let sources = difference.negated();
        let sources = sources.terms().iter().filter(|t| !is_dynamical(t)).cloned();
        let any_positive = dynamical.iter().any(|t| !crate::scalar::is_negative(&t.coeff));
        let mut lhs = FormalExpr::zero();
        let mut rhs = FormalExpr::from_terms(sources);
        for t in dynamical {
            if any_positive && crate::scalar::is_negative(&t.coeff) {
                rhs.push(FormalTerm {
                    coeff: -t.coeff,
                    ..t
                });
            } else {
                lhs.push(t);
            }
        }
        FieldEquation { lhs, rhs, ..self.clone() }
    }
}

impl fmt::Display for FieldEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `∂_a L = ∂×(∂_{∂⊗a} L)`. The result is not rearranged; `∂×∂⊗` is
/// written as `lap`.
pub fn euler_lagrange_tensor(l: &LagrangianDensity) -> Result<FieldEquation> {
    if l.uses(DerivOp::Ext) || l.uses(DerivOp::Int) {
        return Err(Error::Domain(
            "density has exterior or interior slots; use the exterior form".into(),
        ));
    }
    let a = dynamical_symbol(l)?;
    let lhs = vderiv(l, &Slot::new(DerivOp::Id, &a.name))?;
    let rhs = vderiv(l, &Slot::new(DerivOp::Tensor, &a.name))?.apply(FieldOp::Div);
    Ok(FieldEquation::new(l.metric, a.grade as isize, &a.name, lhs, rhs))
}

/// `∂_a L = (−1)^s ∂⌋(∂_{∂∧a} L) − (−1)^s ∂∧(∂_{∂⌋a} L)` with `s = gr(a)`.
pub fn euler_lagrange_exterior(l: &LagrangianDensity) -> Result<FieldEquation> {
    if l.uses(DerivOp::Tensor) {
        return Err(Error::Domain("density has tensor slots; use the tensor form".into()));
    }
    let a = dynamical_symbol(l)?;
    let lhs = vderiv(l, &Slot::new(DerivOp::Id, &a.name))?;
    let rhs = exterior_rhs(l)?;
    Ok(FieldEquation::new(l.metric, a.grade as isize, &a.name, lhs, rhs))
}

/// `(−1)^s ∂⌋(∂_{∂∧a} L) − (−1)^s ∂∧(∂_{∂⌋a} L)`.
fn exterior_rhs(l: &LagrangianDensity) -> Result<FormalExpr> {
    let a = dynamical_symbol(l)?;
    let parity = sign_rational(Sign::parity(a.grade));
    let g_ext = vderiv(l, &Slot::new(DerivOp::Ext, &a.name))?;
    let g_int = vderiv(l, &Slot::new(DerivOp::Int, &a.name))?;
    Ok(g_ext
        .apply(FieldOp::Int)
        .scaled(&parity)
        .plus(&g_int.apply(FieldOp::Ext).scaled(&-parity)))
}

/// Outcome of [`verify_tensor_exterior_identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub trials: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `∂×(∂_{∂⊗a}L) = (−1)^s ∂⌋(∂_{∂∧a}L) − (−1)^s ∂∧(∂_{∂⌋a}L)` on
/// random polynomial fields. The left side comes from the component route
/// in [`jet`], so the two sides share no derivation code.
pub fn verify_tensor_exterior_identity(l: &LagrangianDensity, trials: usize, seed: u64) -> Result<IdentityReport> {
    if l.uses(DerivOp::Tensor) {
        return Err(Error::Domain("density must be written with exterior and interior slots".into()));
    }
    let a = dynamical_symbol(l)?;
    let rhs = exterior_rhs(l)?;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = FieldRng::for_trial(seed, trial as u64);
        let bindings = l.random_bindings(&mut rng, 3, trial);
        let route = tensor_route(l, &bindings)?;
        let tensor_side = crate::field::matrix_div(&route.gradient_deriv)?;
        let exterior_side = rhs
            .evaluate(l.metric, Shape::Vector(a.grade as isize), &bindings)?
            .into_vector()?;
        if tensor_side != exterior_side {
            failures.push(format!(
                "(k,n,s)=({},{},{}) trial {trial}: tensor side {tensor_side}, exterior side {exterior_side}",
                l.metric.k(),
                l.metric.n(),
                a.grade
            ));
        }
    }
    Ok(IdentityReport { trials, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn maxwell(metric: Metric, r: usize) -> LagrangianDensity {
        let sign = sign_rational(Sign::parity(r - 1));
        LagrangianDensity::new(
            metric,
            vec![FieldSymbol::dynamical("A", r - 1), FieldSymbol::source("J", r - 1)],
        )
        .unwrap()
        .with_term(sign * rational(1, 2), Slot::new(DerivOp::Ext, "A"), Slot::new(DerivOp::Ext, "A"))
        .unwrap()
        .with_term(integer(1), Slot::new(DerivOp::Id, "J"), Slot::new(DerivOp::Id, "A"))
        .unwrap()
    }

    #[test]
    fn vderiv_examples() {
        let m = Metric::new(1, 3).unwrap();
        let l = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("A", 1)])
            .unwrap()
            .with_term(rational(1, 2), Slot::new(DerivOp::Ext, "A"), Slot::new(DerivOp::Ext, "A"))
            .unwrap();
        let d = vderiv(&l, &Slot::new(DerivOp::Ext, "A")).unwrap();
        assert_eq!(d, FormalExpr::chain(vec![FieldOp::Ext], "A"));

        let l = maxwell(m, 2);
        assert_eq!(vderiv(&l, &Slot::new(DerivOp::Id, "A")).unwrap(), FormalExpr::chain(vec![], "J"));
        assert_eq!(
            vderiv(&l, &Slot::new(DerivOp::Ext, "A")).unwrap(),
            FormalExpr::chain(vec![FieldOp::Ext], "A").negated()
        );
        assert!(vderiv(&l, &Slot::new(DerivOp::Id, "J")).is_err());
    }

    #[test]
    fn maxwell_exterior_equation() {
        let m = Metric::new(1, 3).unwrap();
        let eq = euler_lagrange_exterior(&maxwell(m, 2)).unwrap().arranged();
        assert_eq!(eq.to_string(), "d_| ( d^ A ) = J");
        assert_eq!(eq.grade, 1);
    }

    #[test]
    fn tensor_poisson_equation() {
        let m = Metric::new(0, 3).unwrap();
        let l = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", 0), FieldSymbol::source("rho", 0)])
            .unwrap()
            .with_term(rational(1, 2), Slot::new(DerivOp::Tensor, "a"), Slot::new(DerivOp::Tensor, "a"))
            .unwrap()
            .with_term(integer(-1), Slot::new(DerivOp::Id, "rho"), Slot::new(DerivOp::Id, "a"))
            .unwrap();
        let eq = euler_lagrange_tensor(&l).unwrap();
        assert_eq!(eq.to_string(), "-rho = lap a");
        assert_eq!(eq.arranged().to_string(), "lap a = -rho");
        assert!(euler_lagrange_exterior(&l).is_err());
    }

    #[test]
    fn source_only_density() {
        let m = Metric::new(0, 3).unwrap();
        let l = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", 1), FieldSymbol::source("J", 1)])
            .unwrap()
            .with_term(integer(1), Slot::new(DerivOp::Id, "J"), Slot::new(DerivOp::Id, "a"))
            .unwrap();
        assert_eq!(euler_lagrange_tensor(&l).unwrap().to_string(), "J = 0");
        let report = verify_tensor_exterior_identity(&l, 5, 1).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn invariants_are_checked() {
        let m = Metric::new(0, 3).unwrap();
        assert!(LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", 4)]).is_err());
        assert!(LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", 1), FieldSymbol::dynamical("b", 1)]).is_err());
        let l = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", 1)]).unwrap();
        assert!(l
            .clone()
            .with_term(integer(1), Slot::new(DerivOp::Ext, "a"), Slot::new(DerivOp::Id, "a"))
            .is_err());
        assert!(l
            .with_term(integer(1), Slot::new(DerivOp::Id, "b"), Slot::new(DerivOp::Id, "a"))
            .is_err());
    }

    #[test]
    fn maxwell_identity_holds_in_minkowski() {
        let m = Metric::new(1, 3).unwrap();
        let report = verify_tensor_exterior_identity(&maxwell(m, 2), 6, 11).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn display_matches_grammar() {
        let l = maxwell(Metric::new(1, 3).unwrap(), 2);
        assert_eq!(l.to_string(), "-1/2 * (d^ A . d^ A) + (J . A)");
    }
}
