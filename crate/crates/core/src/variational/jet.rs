//! Component-level differentiation of a density.
//!
//! Each slot of the dynamical field `a` (grade `s`) is a linear function of
//! the jet variables `a_I` and `z_{jI} = ∂_j a_I`:
//!
//! * `(∂∧a)_{j+J} ∋ Δ_jj σ(j,J) z_{jJ}`
//! * `(∂⌋a)_{J\j} ∋ σ(J\j, j) z_{jJ}`
//! * `(∂⊗a)_{(j),J} = Δ_jj z_{jJ}`
//!
//! and a dot product weighs component `K` by `Δ_KK`. The product rule over
//! these sums gives `∂L/∂a_I` and `∂L/∂z_{jI}` without the formal rules.

use std::collections::BTreeMap;

use super::{Bindings, DerivOp, LagrangianDensity, Role, Shape, Slot, Value};
use crate::blade::Metric;
use crate::error::{Error, Result};
use crate::field::{divergence, ext_deriv, int_deriv, matrix_div, MvField, MvMatrixField};
use crate::index::{concat_signature, lists_of_len, IndexList, Sign};
use crate::poly::PolyScalar;
use crate::scalar::{rational, sign_rational, Coeff};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Vector(IndexList),
    Matrix(IndexList, IndexList),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Value(IndexList),
    Jet(usize, IndexList),
}

/// Nonzero entries `(component, variable, sign)` of the slot's linear map.
fn jacobian(op: DerivOp, grade: usize, metric: Metric) -> Vec<(Key, Var, Sign)> {
    let dim = metric.dim();
    let mut out = Vec::new();
    for list in lists_of_len(dim, grade) {
        match op {
            DerivOp::Id => out.push((Key::Vector(list), Var::Value(list), Sign::Plus)),
            DerivOp::Ext => {
                for j in (0..dim).filter(|&j| !list.contains(j)) {
                    let (sign, merged) = concat_signature(IndexList::single(j), list);
                    out.push((Key::Vector(merged), Var::Jet(j, list), metric.delta(j) * sign));
                }
            }
            DerivOp::Int => {
                for j in list.iter() {
                    let rest = list.remove(j).expect("index present");
                    let sign = concat_signature(rest, IndexList::single(j)).0;
                    out.push((Key::Vector(rest), Var::Jet(j, list), sign));
                }
            }
            DerivOp::Tensor => {
                for j in 0..dim {
                    out.push((Key::Matrix(IndexList::single(j), list), Var::Jet(j, list), metric.delta(j)));
                }
            }
        }
    }
    out
}

fn component(value: &Value, key: Key) -> PolyScalar {
    match (value, key) {
        (Value::Vector(v), Key::Vector(list)) => v.component(list),
        (Value::Matrix(m), Key::Matrix(row, col)) => m.entry(row, col),
        _ => unreachable!("slot shapes agree"),
    }
}

fn weight(metric: Metric, key: Key) -> Sign {
    match key {
        Key::Vector(list) => metric.delta_list(list),
        Key::Matrix(row, col) => metric.delta_list(row) * metric.delta_list(col),
    }
}

/// Partial derivatives of a density with respect to the jet variables of
/// the dynamical field, at concrete field values.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorRoute {
    /// `∂L/∂a_I`.
    pub value_partials: BTreeMap<IndexList, PolyScalar>,
    /// `∂L/∂(∂_j a_I)`, keyed by `(j, I)`.
    pub jet_partials: BTreeMap<(usize, IndexList), PolyScalar>,
    /// `∂_a L = Σ Δ_II (∂L/∂a_I) e_I`.
    pub field_deriv: MvField,
    /// `∂_{∂⊗a} L`, with entries `Δ_II ∂L/∂(∂_j a_I)` at `w_{(j),I}`.
    pub gradient_deriv: MvMatrixField,
}

impl TensorRoute {
    /// `∂_a L − ∂×(∂_{∂⊗a} L)`.
    pub fn residual(&self) -> Result<MvField> {
        self.field_deriv.checked_sub(&matrix_div(&self.gradient_deriv)?)
    }

    /// `∂L/∂a_I − Σ_j ∂_j (∂L/∂(∂_j a_I))`.
    pub fn component_residual(&self, list: IndexList) -> PolyScalar {
        let mut out = self.value_partials.get(&list).cloned().unwrap_or_default();
        for (&(j, l), p) in &self.jet_partials {
            if l == list {
                out = out.minus(&p.derivative(j));
            }
        }
        out
    }
}

/// Differentiates `l` at `bindings`, which must bind every symbol including
/// the dynamical field.
pub fn tensor_route(l: &LagrangianDensity, bindings: &Bindings) -> Result<TensorRoute> {
    let metric = l.metric();
    let a = l
        .dynamical()
        .ok_or_else(|| Error::Domain("the density has no dynamical field".into()))?;
    let mut value_partials: BTreeMap<IndexList, PolyScalar> = BTreeMap::new();
    let mut jet_partials: BTreeMap<(usize, IndexList), PolyScalar> = BTreeMap::new();
    for t in l.terms() {
        for (varied, other) in [(&t.left, &t.right), (&t.right, &t.left)] {
            if varied.symbol != a.name {
                continue;
            }
            let other_value = l.evaluate_slot(other, bindings)?;
            for (key, var, sign) in jacobian(varied.op, a.grade, metric) {
                let c = component(&other_value, key);
                if c.is_zero() {
                    continue;
                }
                let contribution = c.scaled(&t.coeff).signed(sign * weight(metric, key));
                let slot = match var {
                    Var::Value(list) => value_partials.entry(list).or_default(),
                    Var::Jet(j, list) => jet_partials.entry((j, list)).or_default(),
                };
                slot.plus_assign(&contribution);
            }
        }
    }
    let field_deriv = MvField::from_terms(
        metric,
        a.grade as isize,
        value_partials
            .iter()
            .map(|(&list, p)| (list, p.signed(metric.delta_list(list)))),
    )?;
    let gradient_deriv = MvMatrixField::from_terms(
        metric,
        1,
        a.grade,
        jet_partials
            .iter()
            .map(|(&(j, list), p)| ((IndexList::single(j), list), p.signed(metric.delta_list(list)))),
    )?;
    Ok(TensorRoute {
        value_partials,
        jet_partials,
        field_deriv,
        gradient_deriv,
    })
}

/// First-order change of a density under `a → a + tε`, split as
/// `bulk + ∂·boundary`.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstVariation {
    /// Euler–Lagrange integrand dotted with `ε`.
    pub bulk: PolyScalar,
    /// 1-vector whose divergence is the boundary term.
    pub boundary: MvField,
}

impl FirstVariation {
    /// `bulk + ∂·boundary`.
    pub fn total(&self) -> Result<PolyScalar> {
        Ok(self.bulk.plus(&divergence(&self.boundary)?))
    }
}

fn varied_bindings(l: &LagrangianDensity, bindings: &Bindings, eps: &MvField) -> Result<String> {
    let a = l
        .dynamical()
        .ok_or_else(|| Error::Domain("the density has no dynamical field".into()))?;
    let field = bindings
        .get(&a.name)
        .ok_or_else(|| Error::Domain(format!("no value bound to symbol {}", a.name)))?;
    if eps.metric() != field.metric() {
        return Err(Error::MetricMismatch);
    }
    if eps.grade() != field.grade() {
        return Err(Error::GradeMismatch {
            expected: field.grade(),
            found: eps.grade(),
        });
    }
    debug_assert_eq!(a.role, Role::Dynamical);
    Ok(a.name.clone())
}

/// `((∂_a L − ∂×B)·ε, B×ε)` with `B = ∂_{∂⊗a} L`.
pub fn first_variation(l: &LagrangianDensity, bindings: &Bindings, eps: &MvField) -> Result<FirstVariation> {
    varied_bindings(l, bindings, eps)?;
    let route = tensor_route(l, bindings)?;
    Ok(FirstVariation {
        bulk: route.residual()?.dot(eps)?,
        boundary: route.gradient_deriv.mat_vec(eps)?,
    })
}

/// Exterior split of the first variation, with `G_e = ∂_{∂∧a}L` and
/// `G_i = ∂_{∂⌋a}L`:
/// bulk `(∂_a L + (−1)^{s+1} ∂⌋G_e − (−1)^{s−1} ∂∧G_i)·ε`,
/// boundary `ε⌋G_e + (−1)^{s−1} G_i⌋ε`.
pub fn first_variation_exterior(l: &LagrangianDensity, bindings: &Bindings, eps: &MvField) -> Result<FirstVariation> {
    if l.uses(DerivOp::Tensor) {
        return Err(Error::Domain("density has tensor slots; use the tensor form".into()));
    }
    let name = varied_bindings(l, bindings, eps)?;
    let metric = l.metric();
    let s = eps.grade();
    let eval = |op: DerivOp, grade: isize| -> Result<MvField> {
        super::vderiv(l, &Slot::new(op, &name))?
            .evaluate(metric, Shape::Vector(grade), bindings)?
            .into_vector()
    };
    let d_a = eval(DerivOp::Id, s)?;
    let g_e = eval(DerivOp::Ext, s + 1)?;
    let g_i = eval(DerivOp::Int, s - 1)?;
    // (−1)^{s+1} = (−1)^{s−1}
    let odd = sign_rational(Sign::parity((s + 1) as usize));
    let bulk_field = d_a
        .checked_add(&int_deriv(&g_e).scale_rational(&odd))?
        .checked_sub(&ext_deriv(&g_i).scale_rational(&odd))?;
    let boundary = eps
        .left_contract(&g_e)
        .checked_add(&g_i.left_contract(eps).scale_rational(&odd))?;
    Ok(FirstVariation {
        bulk: bulk_field.dot(eps)?,
        boundary,
    })
}

/// The coefficient of `t` in `L(a + tε)`, computed as
/// `(L(a+ε) − L(a−ε)) / 2`; exact because `L` is at most quadratic in `a`.
pub fn linear_coefficient(l: &LagrangianDensity, bindings: &Bindings, eps: &MvField) -> Result<PolyScalar> {
    let name = varied_bindings(l, bindings, eps)?;
    let a = &bindings[&name];
    let mut plus = bindings.clone();
    plus.insert(name.clone(), a.checked_add(eps)?);
    let mut minus = bindings.clone();
    minus.insert(name, a.checked_sub(eps)?);
    Ok(l.evaluate(&plus)?
        .minus(&l.evaluate(&minus)?)
        .scaled(&rational(1, 2)))
}
