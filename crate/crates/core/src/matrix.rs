//! The matrix space spanned by `w_{I,J} = e_I ⊗ e_J`.

use std::collections::BTreeMap;
use std::fmt;

use crate::blade::{Metric, Multivector};
use crate::error::{Error, Result};
use crate::index::{lists_of_len, IndexList};
use crate::scalar::{Coeff, Rational};

/// Sparse matrix `Σ a_{I,J} w_{I,J}` with rows of grade `row_grade` and
/// columns of grade `col_grade`.
#[derive(Clone, PartialEq)]
pub struct MvMatrix<S = Rational> {
    metric: Metric,
    row_grade: usize,
    col_grade: usize,
    terms: BTreeMap<(IndexList, IndexList), S>,
}

impl<S: Coeff> MvMatrix<S> {
    pub fn zero(metric: Metric, row_grade: usize, col_grade: usize) -> Self {
        MvMatrix {
            metric,
            row_grade,
            col_grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        metric: Metric,
        row_grade: usize,
        col_grade: usize,
        terms: impl IntoIterator<Item = ((IndexList, IndexList), S)>,
    ) -> Result<Self> {
        let mut out = Self::zero(metric, row_grade, col_grade);
        for ((row, col), coeff) in terms {
            metric.check_list(row)?;
            metric.check_list(col)?;
            if row.len() != row_grade {
                return Err(Error::GradeMismatch {
                    expected: row_grade as isize,
                    found: row.len() as isize,
                });
            }
            if col.len() != col_grade {
                return Err(Error::GradeMismatch {
                    expected: col_grade as isize,
                    found: col.len() as isize,
                });
            }
            out.accumulate(row, col, coeff);
        }
        Ok(out)
    }

    /// The basis element `w_{I,J}`.
    pub fn basis(metric: Metric, row: IndexList, col: IndexList) -> Result<Self> {
        Self::from_terms(metric, row.len(), col.len(), [((row, col), S::one())])
    }

    /// `I_ℓ = Σ_I Δ_II w_{I,I}`.
    pub fn identity(metric: Metric, grade: usize) -> Self {
        let mut out = Self::zero(metric, grade, grade);
        for list in lists_of_len(metric.dim(), grade) {
            out.accumulate(list, list, S::one().signed(metric.delta_list(list)));
        }
        out
    }

    pub(crate) fn accumulate(&mut self, row: IndexList, col: IndexList, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((row, col)).or_insert_with(S::zero);
        entry.plus_assign(&coeff);
        if entry.is_zero() {
            self.terms.remove(&(row, col));
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn row_grade(&self) -> usize {
        self.row_grade
    }

    pub fn col_grade(&self) -> usize {
        self.col_grade
    }

    pub fn terms(&self) -> &BTreeMap<(IndexList, IndexList), S> {
        &self.terms
    }

    pub fn entry(&self, row: IndexList, col: IndexList) -> S {
        self.terms.get(&(row, col)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<T: Coeff>(&self, mut f: impl FnMut(IndexList, IndexList, &S) -> T) -> MvMatrix<T> {
        let mut out = MvMatrix::zero(self.metric, self.row_grade, self.col_grade);
        for (&(row, col), coeff) in &self.terms {
            out.accumulate(row, col, f(row, col, coeff));
        }
        out
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        self.map(|_, _, c| c.scaled(factor))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (&(row, col), coeff) in &other.terms {
            out.accumulate(row, col, coeff.clone());
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.metric != other.metric {
            return Err(Error::MetricMismatch);
        }
        if (self.row_grade, self.col_grade) != (other.row_grade, other.col_grade) {
            return Err(Error::Domain(format!(
                "matrix shapes differ: ({},{}) vs ({},{})",
                self.row_grade, self.col_grade, other.row_grade, other.col_grade
            )));
        }
        Ok(())
    }

    /// `w_{I₁,I₂} · w_{J₁,J₂} = Δ_{I₁J₁} Δ_{I₂J₂}`, extended bilinearly.
    pub fn mat_dot(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let mut sum = S::zero();
        for (&(row, col), a) in &self.terms {
            if let Some(b) = other.terms.get(&(row, col)) {
                let sign = self.metric.delta_list(row) * self.metric.delta_list(col);
                sum.plus_assign(&a.times(b).signed(sign));
            }
        }
        Ok(sum)
    }

    /// `w_{I,J} × w_{K,L} = Δ_{JK} w_{I,L}`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.metric != other.metric {
            return Err(Error::MetricMismatch);
        }
        if self.col_grade != other.row_grade {
            return Err(Error::GradeMismatch {
                expected: self.col_grade as isize,
                found: other.row_grade as isize,
            });
        }
        let mut out = Self::zero(self.metric, self.row_grade, other.col_grade);
        // The empty list sorts before every other list, so the rows keyed by
        // `j` start at `(j, ∅)` and are contiguous.
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in other.terms.range((j, IndexList::EMPTY)..) {
                if k != j {
                    break;
                }
                out.accumulate(i, l, a.times(b).signed(self.metric.delta_list(j)));
            }
        }
        Ok(out)
    }

    /// `w_{I,J} × e_K = Δ_{JK} e_I`.
    pub fn mat_vec(&self, vector: &Multivector<S>) -> Result<Multivector<S>> {
        if self.metric != vector.metric() {
            return Err(Error::MetricMismatch);
        }
        if self.col_grade as isize != vector.grade() {
            return Err(Error::GradeMismatch {
                expected: self.col_grade as isize,
                found: vector.grade(),
            });
        }
        let mut out = Multivector::zero(self.metric, self.row_grade as isize);
        for (&(i, j), a) in &self.terms {
            if let Some(v) = vector.coeff(j) {
                out.accumulate(i, a.times(v).signed(self.metric.delta_list(j)));
            }
        }
        Ok(out)
    }

    /// `e_K × w_{J,I} = Δ_{JK} e_I`: the vector multiplies from the left.
    pub fn vec_mat(vector: &Multivector<S>, matrix: &Self) -> Result<Multivector<S>> {
        matrix.transpose().mat_vec(vector)
    }

    /// `w_{I₁,I₂}ᵀ = w_{I₂,I₁}`.
    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.metric, self.col_grade, self.row_grade);
        for (&(row, col), coeff) in &self.terms {
            out.accumulate(col, row, coeff.clone());
        }
        out
    }
}

impl<S: fmt::Debug> fmt::Debug for MvMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MvMatrix")
            .field("metric", &self.metric)
            .field("row_grade", &self.row_grade)
            .field("col_grade", &self.col_grade)
            .field("terms", &self.terms)
            .finish()
    }
}
