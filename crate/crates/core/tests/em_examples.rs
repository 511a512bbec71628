//! Generalized Maxwell theory examples.

use extcalc::em::*;
use extcalc::field::{ext_deriv, int_deriv};
use extcalc::random::FieldRng;
use extcalc::scalar::{integer, rational};
use extcalc::variational::Bindings;
use extcalc::Metric;

#[test]
fn plain_maxwell_for_every_small_metric() {
    for dim in 1..=4 {
        for k in 0..=dim {
            let m = Metric::new(k, dim - k).unwrap();
            for r in 1..=dim {
                let eq = derive_equations(&MaxwellConfig::new(m, r).unwrap()).unwrap();
                assert_eq!(eq.to_string(), "d_| ( d^ A ) = J", "{m} r={r}");
                assert_eq!(eq.grade, r as isize - 1);
            }
        }
    }
}

#[test]
fn homogeneous_wave_equation() {
    let cfg = MaxwellConfig::new(Metric::new(1, 3).unwrap(), 3).unwrap().with_xi(integer(1)).unwrap();
    assert_eq!(wave_form(&cfg).unwrap().to_string(), "lap A = J");
    let mut rng = FieldRng::new(2);
    let wave = wave_form(&cfg).unwrap();
    let derived = derive_equations(&cfg).unwrap();
    for t in 0..10 {
        let bindings = random_bindings(&cfg, &mut rng, 3, t);
        assert_eq!(wave.residual(&bindings).unwrap(), derived.residual(&bindings).unwrap());
    }
}

#[test]
fn generic_gauge_wave_form_agrees() {
    let cfg = MaxwellConfig::new(Metric::new(1, 3).unwrap(), 2)
        .unwrap()
        .with_mass(rational(1, 2))
        .unwrap()
        .with_xi(rational(3, 5))
        .unwrap();
    let wave = wave_form(&cfg).unwrap();
    assert_eq!(wave.to_string(), "-lap A + 1/4 * A = J + 2/3 * d^ ( d_| A )");
    let derived = derive_equations(&cfg).unwrap();
    let mut rng = FieldRng::new(12);
    for t in 0..10 {
        let bindings = random_bindings(&cfg, &mut rng, 3, t);
        assert_eq!(wave.residual(&bindings).unwrap(), derived.residual(&bindings).unwrap());
    }
}

#[test]
fn gauge_invariance_in_minkowski() {
    let m = Metric::new(1, 3).unwrap();
    let mut rng = FieldRng::new(6);
    for _ in 0..20 {
        let a = rng.field(m, 1, 3);
        let moved = gauge_transform(&a, &rng.constant_field(m, 1), Some(&rng.field(m, 0, 3))).unwrap();
        assert_eq!(field_from_potential(&moved, 2).unwrap(), field_from_potential(&a, 2).unwrap());
    }
    let a = rng.field(m, 1, 3);
    let zero_shift = extcalc::MvField::zero(m, 1);
    let zero_gauge = extcalc::MvField::zero(m, 0);
    assert_eq!(gauge_transform(&a, &zero_shift, Some(&zero_gauge)).unwrap(), a);
}

#[test]
fn dual_theory_relations() {
    let m = Metric::new(1, 3).unwrap();
    let (nonhom, hom) = dual_theory(m, 2).unwrap();
    let mut rng = FieldRng::new(17);
    for _ in 0..10 {
        let abar = rng.field(m, 2, 3);
        let fbar = int_deriv(&abar);
        assert!(int_deriv(&fbar).is_zero());
        let bindings: Bindings = [("Abar".to_string(), abar.clone()), ("Jbar".to_string(), ext_deriv(&fbar))].into();
        assert!(nonhom.holds(&bindings).unwrap());
        assert!(hom.holds(&bindings).unwrap());
        assert_eq!(right_int_deriv(&abar).scale_rational(&integer(-1)), fbar);
    }
}

#[test]
fn lorenz_condition_on_exact_potentials() {
    let m = Metric::new(1, 3).unwrap();
    let mut rng = FieldRng::new(5);
    let exact = ext_deriv(&rng.field(m, 1, 3));
    assert!(lorenz_gauge_check(&exact));
    let generic = rng.field(m, 2, 3);
    assert_eq!(lorenz_gauge_check(&generic), ext_deriv(&generic).is_zero());
}

#[test]
fn config_validation() {
    let m = Metric::new(1, 3).unwrap();
    assert!(MaxwellConfig::new(m, 0).is_err());
    assert!(MaxwellConfig::new(m, 5).is_err());
    assert!(MaxwellConfig::new(m, 2).unwrap().with_xi(integer(0)).is_err());
    assert!(MaxwellConfig::new(m, 2).unwrap().with_mass(integer(-1)).is_err());
}
