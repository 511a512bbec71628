//! Randomized invariants of index lists, blades and matrices.

use extcalc::index::{concat_signature, sort_signature, IndexList, Sign};
use extcalc::scalar::{integer, rational};
use extcalc::{Metric, Multivector, MvMatrix, Rational};
use proptest::prelude::*;

fn metric_strategy(max_dim: usize) -> impl Strategy<Value = Metric> {
    (1..=max_dim).prop_flat_map(|d| (0..=d).prop_map(move |k| Metric::new(k, d - k).unwrap()))
}

fn list_in(dim: usize) -> impl Strategy<Value = IndexList> {
    (0u32..(1u32 << dim)).prop_map(|mask| IndexList::from_mask(mask as u16))
}

fn coeff() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rational(p, q))
}

/// Random homogeneous multivector of a random grade.
fn multivector(metric: Metric) -> impl Strategy<Value = Multivector> {
    let dim = metric.dim();
    (0..=dim).prop_flat_map(move |g| {
        let lists = extcalc::index::lists_of_len(dim, g);
        let n = lists.len();
        proptest::collection::vec(coeff(), n).prop_map(move |cs| {
            Multivector::from_terms(metric, g as isize, lists.iter().copied().zip(cs)).unwrap()
        })
    })
}

fn parity_by_pairs(raw: &[usize]) -> Sign {
    let mut inversions = 0;
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            if raw[i] == raw[j] {
                return Sign::Zero;
            }
            if raw[i] > raw[j] {
                inversions += 1;
            }
        }
    }
    Sign::parity(inversions)
}

proptest! {
    #[test]
    fn sort_signature_counts_inversions(dim in 1usize..=16, raw in proptest::collection::vec(0usize..16, 0..9)) {
        let raw: Vec<usize> = raw.into_iter().map(|i| i % dim).collect();
        let (sign, list) = sort_signature(&raw, dim).unwrap();
        prop_assert_eq!(sign, parity_by_pairs(&raw));
        if !sign.is_zero() {
            let mut sorted = raw.clone();
            sorted.sort();
            prop_assert_eq!(list.to_vec(), sorted);
        }
    }

    #[test]
    fn concat_agrees_with_sort(a in list_in(12), b in list_in(12)) {
        let mut raw = a.to_vec();
        raw.extend(b.to_vec());
        let (sign, merged) = concat_signature(a, b);
        let (expected, sorted) = sort_signature(&raw, 12).unwrap();
        prop_assert_eq!(sign, expected);
        if !sign.is_zero() {
            prop_assert_eq!(merged, sorted);
        }
    }

    #[test]
    fn hodge_round_trip_any_dimension(k in 0usize..=8, n in 0usize..=8, mask in any::<u16>()) {
        prop_assume!(k + n >= 1);
        let m = Metric::new(k, n).unwrap();
        let list = IndexList::from_mask(mask & ((1u32 << m.dim()) - 1) as u16);
        let e: Multivector = Multivector::basis(m, list).unwrap();
        prop_assert_eq!(e.hodge().inv_hodge(), e.clone());
        prop_assert_eq!(e.inv_hodge().hodge(), e);
    }

    #[test]
    fn products_are_bilinear((a1, a2, b) in metric_strategy(5).prop_flat_map(|m| (multivector(m), multivector(m), multivector(m))),
                             s in coeff()) {
        prop_assume!(a1.grade() == a2.grade());
        let combo = &a1.scale_rational(&s) + &a2;
        prop_assert_eq!(combo.wedge(&b), &a1.wedge(&b).scale_rational(&s) + &a2.wedge(&b));
        prop_assert_eq!(combo.left_contract(&b), &a1.left_contract(&b).scale_rational(&s) + &a2.left_contract(&b));
        prop_assert_eq!(b.right_contract(&combo), &b.right_contract(&a1).scale_rational(&s) + &b.right_contract(&a2));
    }

    #[test]
    fn dot_is_symmetric((a, b) in metric_strategy(5).prop_flat_map(|m| (multivector(m), multivector(m)))) {
        prop_assume!(a.grade() == b.grade());
        prop_assert_eq!(a.dot(&b).unwrap(), b.dot(&a).unwrap());
    }

    #[test]
    fn identity_matrix_acts_trivially((m, a) in metric_strategy(4).prop_flat_map(|m| (Just(m), multivector(m)))) {
        let g = a.grade() as usize;
        prop_assert_eq!(MvMatrix::identity(m, g).mat_vec(&a).unwrap(), a.clone());
        prop_assert_eq!(MvMatrix::vec_mat(&a, &MvMatrix::identity(m, g)).unwrap(), a);
    }
}

#[test]
fn mixed_grades_are_rejected() {
    let m = Metric::new(1, 3).unwrap();
    let terms = [(IndexList::new(&[0]).unwrap(), integer(1)), (IndexList::new(&[0, 1]).unwrap(), integer(1))];
    assert!(Multivector::from_terms(m, 1, terms).is_err());
}

#[test]
fn out_of_metric_lists_are_rejected() {
    let m = Metric::new(0, 3).unwrap();
    assert!(Multivector::<Rational>::basis(m, IndexList::new(&[3]).unwrap()).is_err());
    assert!(Metric::new(0, 0).is_err());
    assert!(Metric::new(9, 8).is_err());
}
