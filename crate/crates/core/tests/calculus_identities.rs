//! Differential identities on polynomial fields, driven by proptest seeds.

use extcalc::field::{carried_divergence, divergence, ext_deriv, int_deriv, laplacian, matrix_div, tensor_deriv, MvField};
use extcalc::index::{IndexList, Sign};
use extcalc::random::FieldRng;
use extcalc::scalar::{integer, sign_rational};
use extcalc::{Coeff, Metric, PolyScalar};
use proptest::prelude::*;

const METRICS: [(usize, usize); 4] = [(0, 3), (1, 1), (1, 3), (2, 2)];

fn case() -> impl Strategy<Value = (Metric, usize, u64)> {
    (0..METRICS.len(), any::<u64>()).prop_flat_map(|(i, seed)| {
        let (k, n) = METRICS[i];
        let m = Metric::new(k, n).unwrap();
        (Just(m), 0..=m.dim(), Just(seed))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivatives_are_nilpotent((m, g, seed) in case()) {
        let a = FieldRng::new(seed).field(m, g, 3);
        prop_assert!(ext_deriv(&ext_deriv(&a)).is_zero());
        prop_assert!(int_deriv(&int_deriv(&a)).is_zero());
    }

    #[test]
    fn splitting_identity((m, g, seed) in case()) {
        let a = FieldRng::new(seed).field(m, g, 3);
        let lhs = int_deriv(&ext_deriv(&a)) - ext_deriv(&int_deriv(&a));
        prop_assert_eq!(lhs, laplacian(&a).scale_rational(&sign_rational(Sign::parity(g))));
    }

    #[test]
    fn matrix_leibniz((m, g, seed) in case()) {
        let mut rng = FieldRng::new(seed);
        let a = rng.field(m, g, 3);
        let b = rng.matrix_field(m, g, 3);
        let lhs = divergence(&b.mat_vec(&a).unwrap()).unwrap();
        let rhs = matrix_div(&b).unwrap().dot(&a).unwrap().plus(&b.mat_dot(&tensor_deriv(&a).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_leibniz((m, s, seed) in case()) {
        prop_assume!(s >= 1);
        let mut rng = FieldRng::new(seed);
        let a = rng.field(m, s - 1, 3);
        let b = rng.field(m, s, 3);
        let lhs = divergence(&a.left_contract(&b)).unwrap();
        let rhs = ext_deriv(&a).dot(&b).unwrap()
            .plus(&int_deriv(&b).dot(&a).unwrap().scaled(&sign_rational(Sign::parity(s - 1))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_leibniz_for_vectors((m, _g, seed) in case()) {
        let mut rng = FieldRng::new(seed);
        let a = rng.field(m, 1, 3);
        let b = rng.field(m, 1, 3);
        let rhs = carried_divergence(&a, &b).unwrap() - carried_divergence(&b, &a).unwrap();
        prop_assert_eq!(int_deriv(&a.wedge(&b)), rhs);
    }

    #[test]
    fn exterior_derivative_obeys_graded_product_rule((m, g, seed) in case()) {
        // ∂∧(φ a) = (∂∧φ)∧a + φ ∂∧a for a scalar φ.
        let mut rng = FieldRng::new(seed);
        let phi = rng.field(m, 0, 2);
        let a = rng.field(m, g, 2);
        let lhs = ext_deriv(&phi.wedge(&a));
        let rhs = ext_deriv(&phi).wedge(&a) + phi.wedge(&ext_deriv(&a));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn documented_examples() {
    let m = Metric::new(0, 3).unwrap();
    let x = PolyScalar::var;
    let a = MvField::term(m, IndexList::single(1), x(0)).unwrap();
    assert_eq!(ext_deriv(&a), MvField::term(m, IndexList::new(&[0, 1]).unwrap(), PolyScalar::constant(integer(1))).unwrap());
    let b = MvField::term(m, IndexList::new(&[0, 1]).unwrap(), x(1)).unwrap();
    assert_eq!(int_deriv(&b), MvField::term(m, IndexList::single(0), PolyScalar::constant(integer(1))).unwrap());
    let a = MvField::term(m, IndexList::single(1), x(0)).unwrap();
    let c = MvField::term(m, IndexList::single(2), x(1)).unwrap();
    assert_eq!(a.wedge(&c), MvField::term(m, IndexList::new(&[1, 2]).unwrap(), x(0).times(&x(1))).unwrap());
}

#[test]
fn degenerate_fields_pass_through() {
    for (k, n) in METRICS {
        let m = Metric::new(k, n).unwrap();
        for g in 0..=m.dim() {
            let zero = MvField::zero(m, g as isize);
            assert!(ext_deriv(&zero).is_zero());
            assert_eq!(ext_deriv(&zero).grade(), g as isize + 1);
            assert_eq!(int_deriv(&zero).grade(), g as isize - 1);
            let constant = FieldRng::new(1).constant_field(m, g);
            assert!(ext_deriv(&constant).is_zero());
            assert!(tensor_deriv(&constant).unwrap().is_zero());
        }
    }
}
