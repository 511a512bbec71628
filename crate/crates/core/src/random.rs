//! Seeded, reproducible generators for multivectors and polynomial fields.
//!
//! Everything derives from [`GENERATOR`]: ChaCha8 seeded from a `u64`, whose
//! stream is fixed across platforms. Changing how values are drawn must bump
//! the version suffix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::{Metric, Multivector};
use crate::field::{MvField, MvMatrixField};
use crate::index::lists_of_len;
use crate::poly::{Monomial, PolyScalar};
use crate::scalar::{integer, rational, Rational};

pub const GENERATOR: &str = "chacha8-v1";

/// Coefficients are drawn from this set.
const NUMERATORS: [(i64, i64); 8] = [(-3, 1), (-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1), (3, 1)];

pub struct FieldRng {
    rng: ChaCha8Rng,
}

impl FieldRng {
    pub fn new(seed: u64) -> FieldRng {
        FieldRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for `(seed, stream)`, e.g. a trial index.
    pub fn for_trial(seed: u64, stream: u64) -> FieldRng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        FieldRng { rng }
    }

    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn rational(&mut self) -> Rational {
        let (p, q) = NUMERATORS[self.below(NUMERATORS.len())];
        rational(p, q)
    }

    /// Random monomial of total degree at most `max_degree`.
    pub fn monomial(&mut self, dim: usize, max_degree: u32) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u8; dim];
        for _ in 0..degree {
            exps[self.below(dim)] += 1;
        }
        Monomial::from_exponents(&exps)
    }

    /// Polynomial with up to four terms of total degree `≤ max_degree`.
    pub fn poly(&mut self, dim: usize, max_degree: u32) -> PolyScalar {
        let count = self.below(5);
        PolyScalar::from_terms((0..count).map(|_| {
            let m = self.monomial(dim, max_degree);
            (m, self.rational())
        }))
    }

    /// Random constant multivector; each component present with probability ½.
    pub fn multivector(&mut self, metric: Metric, grade: usize) -> Multivector {
        let mut terms = Vec::new();
        for list in lists_of_len(metric.dim(), grade) {
            if self.coin() {
                terms.push((list, self.rational()));
            }
        }
        Multivector::from_terms(metric, grade as isize, terms).expect("valid lists")
    }

    /// Field whose components are independent random polynomials.
    pub fn field(&mut self, metric: Metric, grade: usize, max_degree: u32) -> MvField {
        let dim = metric.dim();
        let terms: Vec<_> = lists_of_len(dim, grade)
            .into_iter()
            .map(|list| (list, self.poly(dim, max_degree)))
            .collect();
        MvField::from_terms(metric, grade as isize, terms).expect("valid lists")
    }

    /// Trial `index` of a property run: trials 0, 1 and 2 are the zero field,
    /// a constant field and a single-term field; the rest are random.
    pub fn field_case(&mut self, metric: Metric, grade: usize, max_degree: u32, index: usize) -> MvField {
        let dim = metric.dim();
        let lists = lists_of_len(dim, grade);
        match index {
            0 => MvField::zero(metric, grade as isize),
            1 => {
                let terms: Vec<_> = lists
                    .iter()
                    .map(|&list| (list, PolyScalar::constant(self.rational())))
                    .collect();
                MvField::from_terms(metric, grade as isize, terms).expect("valid lists")
            }
            2 => {
                let list = lists[self.below(lists.len())];
                let m = self.monomial(dim, max_degree);
                let coeff = PolyScalar::monomial(m, self.rational());
                MvField::term(metric, list, coeff).expect("valid list")
            }
            _ => self.field(metric, grade, max_degree),
        }
    }

    /// Matrix field with row grade 1 and the given column grade.
    pub fn matrix_field(&mut self, metric: Metric, col_grade: usize, max_degree: u32) -> MvMatrixField {
        let dim = metric.dim();
        let mut terms = Vec::new();
        for row in lists_of_len(dim, 1) {
            for col in lists_of_len(dim, col_grade) {
                terms.push(((row, col), self.poly(dim, max_degree)));
            }
        }
        MvMatrixField::from_terms(metric, 1, col_grade, terms).expect("valid lists")
    }

    /// Random constant field of the given grade (used for gauge shifts).
    pub fn constant_field(&mut self, metric: Metric, grade: usize) -> MvField {
        let mv = self.multivector(metric, grade);
        mv.map(|_, c| PolyScalar::constant(c.clone()))
    }

    pub fn small_integer(&mut self) -> Rational {
        integer(self.rng.gen_range(-5..=5))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let m = Metric::new(1, 3).unwrap();
        let a = FieldRng::new(7).field(m, 2, 3);
        let b = FieldRng::new(7).field(m, 2, 3);
        assert_eq!(a, b);
        let c = FieldRng::for_trial(7, 1).field(m, 2, 3);
        let d = FieldRng::for_trial(7, 2).field(m, 2, 3);
        assert_ne!(c, d);
    }

    #[test]
    fn degrees_are_bounded() {
        let mut rng = FieldRng::new(3);
        let m = Metric::new(2, 2).unwrap();
        for _ in 0..50 {
            let f = rng.field(m, 1, 3);
            assert!(f.terms().values().all(|p| p.degree().unwrap_or(0) <= 3));
        }
    }

    #[test]
    fn degenerate_cases_come_first() {
        let m = Metric::new(0, 3).unwrap();
        let mut rng = FieldRng::new(1);
        assert!(rng.field_case(m, 1, 3, 0).is_zero());
        let constant = rng.field_case(m, 1, 3, 1);
        assert!(constant.terms().values().all(|p| p.as_constant().is_some()));
        assert_eq!(rng.field_case(m, 1, 3, 2).terms().len(), 1);
    }
}
