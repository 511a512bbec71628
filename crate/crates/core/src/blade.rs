//! Metric, homogeneous multivectors, and the exterior/interior products with
//! Hodge duality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::index::{check_dim, concat_signature, IndexList, Sign};
use crate::scalar::{Coeff, Rational};

/// Flat metric with `k` temporal (`Δ_ii = -1`) and `n` spatial (`Δ_ii = +1`)
/// dimensions. Temporal indices come first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Metric {
    k: usize,
    n: usize,
}

impl Metric {
    pub fn new(k: usize, n: usize) -> Result<Metric> {
        check_dim(k + n)?;
        Ok(Metric { k, n })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn dim(self) -> usize {
        self.k + self.n
    }

    /// `Δ_ii`.
    pub fn delta(self, i: usize) -> Sign {
        if i < self.k {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    /// `Δ_II`, the product of `Δ_ii` over `i ∈ I`.
    pub fn delta_list(self, list: IndexList) -> Sign {
        Sign::parity(list.iter().filter(|&i| i < self.k).count())
    }

    pub fn check_list(self, list: IndexList) -> Result<()> {
        if list.bound() > self.dim() {
            Err(Error::IndexOutOfRange {
                index: list.bound() - 1,
                dim: self.dim(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.n)
    }
}

/// Homogeneous-grade multivector `Σ_I a_I e_I`.
///
/// Every stored key has length equal to the grade and no stored coefficient
/// is zero. A zero multivector keeps its grade annotation, which may fall
/// outside `0..=dim` when it is the result of a grade-raising or -lowering
/// operation that ran off the end (e.g. `∂⌋` of a scalar has grade `-1`).
#[derive(Clone, PartialEq)]
pub struct Multivector<S = Rational> {
    metric: Metric,
    grade: isize,
    terms: BTreeMap<IndexList, S>,
}

impl<S: Coeff> Multivector<S> {
    pub fn zero(metric: Metric, grade: isize) -> Self {
        Multivector {
            metric,
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · e_I`.
    pub fn term(metric: Metric, list: IndexList, coeff: S) -> Result<Self> {
        Self::from_terms(metric, list.len() as isize, [(list, coeff)])
    }

    /// The unit blade `e_I`.
    pub fn basis(metric: Metric, list: IndexList) -> Result<Self> {
        Self::term(metric, list, S::one())
    }

    pub fn scalar(metric: Metric, value: S) -> Self {
        let mut out = Self::zero(metric, 0);
        if !value.is_zero() {
            out.terms.insert(IndexList::EMPTY, value);
        }
        out
    }

    /// Collects terms, summing repeated keys and dropping zeros. Keys must
    /// have length `grade` and live inside the metric.
    pub fn from_terms(
        metric: Metric,
        grade: isize,
        terms: impl IntoIterator<Item = (IndexList, S)>,
    ) -> Result<Self> {
        let mut out = Self::zero(metric, grade);
        for (list, coeff) in terms {
            metric.check_list(list)?;
            if list.len() as isize != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: list.len() as isize,
                });
            }
            out.accumulate(list, coeff);
        }
        Ok(out)
    }

    pub(crate) fn accumulate(&mut self, list: IndexList, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(list) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().plus_assign(&coeff);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn grade(&self) -> isize {
        self.grade
    }

    pub fn terms(&self) -> &BTreeMap<IndexList, S> {
        &self.terms
    }

    pub fn coeff(&self, list: IndexList) -> Option<&S> {
        self.terms.get(&list)
    }

    /// Coefficient of `e_I`, zero when absent.
    pub fn component(&self, list: IndexList) -> S {
        self.terms.get(&list).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade-0 coefficient.
    pub fn scalar_part(&self) -> S {
        self.component(IndexList::EMPTY)
    }

    pub fn map<T: Coeff>(&self, mut f: impl FnMut(IndexList, &S) -> T) -> Multivector<T> {
        let mut out = Multivector::zero(self.metric, self.grade);
        for (&list, coeff) in &self.terms {
            out.accumulate(list, f(list, coeff));
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map(|_, c| c.times(factor))
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        self.map(|_, c| c.scaled(factor))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.metric != other.metric {
            return Err(Error::MetricMismatch);
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&list, coeff) in &other.terms {
            out.accumulate(list, coeff.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    fn assert_metric(&self, other: &Self) {
        assert_eq!(self.metric, other.metric, "operands live in different metrics");
    }

    /// `a · b = Σ_I Δ_II a_I b_I`.
    pub fn dot(&self, other: &Self) -> Result<S> {
        self.check_same(other)?;
        let mut sum = S::zero();
        for (&list, a) in &self.terms {
            if let Some(b) = other.terms.get(&list) {
                sum.plus_assign(&a.times(b).signed(self.metric.delta_list(list)));
            }
        }
        Ok(sum)
    }

    /// `e_I ∧ e_J = σ(I,J) e_{I+J}`, extended bilinearly.
    pub fn wedge(&self, other: &Self) -> Self {
        self.assert_metric(other);
        let mut out = Self::zero(self.metric, self.grade + other.grade);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let (sign, merged) = concat_signature(i, j);
                if !sign.is_zero() {
                    out.accumulate(merged, a.times(b).signed(sign));
                }
            }
        }
        out
    }

    /// `e_I ⌋ e_J = Δ_II σ(J\I, I) e_{J\I}` when `I ⊆ J`, else zero.
    pub fn left_contract(&self, other: &Self) -> Self {
        self.assert_metric(other);
        let mut out = Self::zero(self.metric, other.grade - self.grade);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                if let Some(rest) = j.subtract(i) {
                    let sign = self.metric.delta_list(i) * concat_signature(rest, i).0;
                    out.accumulate(rest, a.times(b).signed(sign));
                }
            }
        }
        out
    }

    /// `e_J ⌊ e_I = Δ_II σ(I, J\I) e_{J\I}` when `I ⊆ J`, else zero. `self`
    /// plays the role of `e_J`.
    pub fn right_contract(&self, other: &Self) -> Self {
        self.assert_metric(other);
        let mut out = Self::zero(self.metric, self.grade - other.grade);
        for (&j, b) in &self.terms {
            for (&i, a) in &other.terms {
                if let Some(rest) = j.subtract(i) {
                    let sign = self.metric.delta_list(i) * concat_signature(i, rest).0;
                    out.accumulate(rest, b.times(a).signed(sign));
                }
            }
        }
        out
    }

    /// `e_I^H = Δ_II σ(I, I^c) e_{I^c}`.
    pub fn hodge(&self) -> Self {
        let dim = self.metric.dim();
        let mut out = Self::zero(self.metric, dim as isize - self.grade);
        for (&i, a) in &self.terms {
            let c = i.complement(dim);
            let sign = self.metric.delta_list(i) * concat_signature(i, c).0;
            out.accumulate(c, a.signed(sign));
        }
        out
    }

    /// `e_I^{H⁻¹} = Δ_{I^c I^c} σ(I^c, I) e_{I^c}`.
    pub fn inv_hodge(&self) -> Self {
        let dim = self.metric.dim();
        let mut out = Self::zero(self.metric, dim as isize - self.grade);
        for (&i, a) in &self.terms {
            let c = i.complement(dim);
            let sign = self.metric.delta_list(c) * concat_signature(c, i).0;
            out.accumulate(c, a.signed(sign));
        }
        out
    }
}

impl<S: Coeff> Neg for &Multivector<S> {
    type Output = Multivector<S>;

    fn neg(self) -> Multivector<S> {
        self.map(|_, c| c.negated())
    }
}

impl<S: Coeff> Neg for Multivector<S> {
    type Output = Multivector<S>;

    fn neg(self) -> Multivector<S> {
        -&self
    }
}

impl<S: Coeff> Add for &Multivector<S> {
    type Output = Multivector<S>;

    /// Panics on grade or metric mismatch; see [`Multivector::checked_add`].
    fn add(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.checked_add(rhs).expect("multivector addition")
    }
}

impl<S: Coeff> Add for Multivector<S> {
    type Output = Multivector<S>;

    fn add(self, rhs: Multivector<S>) -> Multivector<S> {
        &self + &rhs
    }
}

impl<S: Coeff> Sub for &Multivector<S> {
    type Output = Multivector<S>;

    fn sub(self, rhs: &Multivector<S>) -> Multivector<S> {
        self.checked_sub(rhs).expect("multivector subtraction")
    }
}

impl<S: Coeff> Sub for Multivector<S> {
    type Output = Multivector<S>;

    fn sub(self, rhs: Multivector<S>) -> Multivector<S> {
        &self - &rhs
    }
}

/// Coefficient rendering used by the canonical text form.
pub trait CanonicalText {
    /// `(negative, magnitude text, magnitude is one, needs parentheses)`.
    fn text_parts(&self) -> (bool, String, bool, bool);

    /// The coefficient printed on its own as a grade-0 value.
    fn standalone_text(&self) -> String;
}

impl<S: Coeff + CanonicalText> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if self.grade == 0 {
            return f.write_str(&self.scalar_part().standalone_text());
        }
        let mut out = String::new();
        for (n, (list, coeff)) in self.terms.iter().enumerate() {
            let (negative, magnitude, unit, compound) = coeff.text_parts();
            let blade = format!("e{list}");
            let body = if unit {
                blade
            } else if compound {
                format!("({magnitude}) ^ {blade}")
            } else {
                format!("{magnitude} ^ {blade}")
            };
            match (n, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl<S: fmt::Debug> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multivector")
            .field("metric", &self.metric)
            .field("grade", &self.grade)
            .field("terms", &self.terms)
            .finish()
    }
}

impl CanonicalText for Rational {
    fn text_parts(&self) -> (bool, String, bool, bool) {
        let negative = crate::scalar::is_negative(self);
        let magnitude = if negative { -self } else { self.clone() };
        let unit = num_traits::One::is_one(&magnitude);
        (negative, crate::scalar::format_rational(&magnitude), unit, false)
    }

    fn standalone_text(&self) -> String {
        crate::scalar::format_rational(self)
    }
}
