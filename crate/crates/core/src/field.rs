//! Multivector fields with polynomial coefficients and the exterior,
//! interior and tensor derivatives.
//!
//! `∂ = Σ_i Δ_ii e_i ∂_i`. All operators are exact: coefficients are
//! polynomials, so every identity checks by structural equality.

use crate::blade::{Metric, Multivector};
use crate::error::{Error, Result};
use crate::index::{concat_signature, IndexList};
use crate::matrix::MvMatrix;
use crate::poly::PolyScalar;
use crate::scalar::Coeff;

pub type MvField = Multivector<PolyScalar>;
pub type MvMatrixField = MvMatrix<PolyScalar>;

/// `∂_i f`, checked against the metric's dimension.
pub fn partial(f: &PolyScalar, i: usize, metric: Metric) -> Result<PolyScalar> {
    if i >= metric.dim() {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: metric.dim(),
        });
    }
    Ok(f.derivative(i))
}

/// `∂∧a = Σ_{i∉I} Δ_ii σ(i,I) ∂_i a_I e_{i+I}`; zero of grade `dim+1` at the
/// top grade.
pub fn ext_deriv(a: &MvField) -> MvField {
    let metric = a.metric();
    let mut out = MvField::zero(metric, a.grade() + 1);
    for (&list, coeff) in a.terms() {
        for i in 0..metric.dim() {
            let (sign, merged) = concat_signature(IndexList::single(i), list);
            if sign.is_zero() {
                continue;
            }
            let d = coeff.derivative(i);
            out.accumulate(merged, d.signed(metric.delta(i) * sign));
        }
    }
    out
}

/// `∂⌋a = Σ_{i∈I} σ(I\i, i) ∂_i a_I e_{I\i}`; zero of grade `-1` for scalars.
pub fn int_deriv(a: &MvField) -> MvField {
    let metric = a.metric();
    let mut out = MvField::zero(metric, a.grade() - 1);
    for (&list, coeff) in a.terms() {
        for i in list.iter() {
            let rest = list.remove(i).expect("index present");
            let sign = concat_signature(rest, IndexList::single(i)).0;
            out.accumulate(rest, coeff.derivative(i).signed(sign));
        }
    }
    out
}

/// `∂⊗a = Σ Δ_ii ∂_i a_I w_{i,I}`: row grade 1, column grade `gr(a)`.
pub fn tensor_deriv(a: &MvField) -> Result<MvMatrixField> {
    let metric = a.metric();
    let grade = usize::try_from(a.grade())
        .ok()
        .filter(|&g| g <= metric.dim())
        .ok_or(Error::GradeMismatch {
            expected: 0,
            found: a.grade(),
        })?;
    let mut out = MvMatrixField::zero(metric, 1, grade);
    for (&list, coeff) in a.terms() {
        for i in 0..metric.dim() {
            let d = coeff.derivative(i).signed(metric.delta(i));
            out.accumulate(IndexList::single(i), list, d);
        }
    }
    Ok(out)
}

/// `∂ × B = Σ_{i,J} ∂_i b_{i,J} e_J` for a matrix field with row grade 1,
/// the contraction `Σ Δ_ii ∂_i e_i × w_{j,J}` with `e_i × w_{j,J} = Δ_ij e_J`.
pub fn matrix_div(b: &MvMatrixField) -> Result<MvField> {
    if b.row_grade() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: b.row_grade() as isize,
        });
    }
    let mut out = MvField::zero(b.metric(), b.col_grade() as isize);
    for (&(row, col), coeff) in b.terms() {
        let i = row.iter().next().expect("row grade 1");
        out.accumulate(col, coeff.derivative(i));
    }
    Ok(out)
}

/// `∂·v = Σ_i ∂_i v_i` for a 1-vector field.
pub fn divergence(v: &MvField) -> Result<PolyScalar> {
    if v.grade() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: v.grade(),
        });
    }
    let mut sum = PolyScalar::zero();
    for (&list, coeff) in v.terms() {
        let i = list.iter().next().expect("grade 1");
        sum.plus_assign(&coeff.derivative(i));
    }
    Ok(sum)
}

/// `Σ_i ∂_i (v_i c)`: the divergence of the 1-vector `v` with the
/// derivative also acting on the carried field `c`.
pub fn carried_divergence(carried: &MvField, v: &MvField) -> Result<MvField> {
    if v.grade() != 1 {
        return Err(Error::GradeMismatch {
            expected: 1,
            found: v.grade(),
        });
    }
    let mut out = MvField::zero(carried.metric(), carried.grade());
    for (&vi, v_coeff) in v.terms() {
        let i = vi.iter().next().expect("grade 1");
        for (&list, c) in carried.terms() {
            out.accumulate(list, v_coeff.times(c).derivative(i));
        }
    }
    Ok(out)
}

/// `(∂·∂)a = Σ_i Δ_ii ∂_i² a_I e_I`, component-wise.
pub fn laplacian(a: &MvField) -> MvField {
    let metric = a.metric();
    a.map(|_, coeff| {
        let mut sum = PolyScalar::zero();
        for i in 0..metric.dim() {
            sum.plus_assign(&coeff.derivative(i).derivative(i).signed(metric.delta(i)));
        }
        sum
    })
}

/// `φ e_I` as a field.
pub fn field_term(metric: Metric, list: IndexList, coeff: PolyScalar) -> Result<MvField> {
    MvField::term(metric, list, coeff)
}

/// Lifts a constant multivector to a field.
pub fn constant_field(value: &Multivector) -> MvField {
    value.map(|_, c| PolyScalar::constant(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    fn x(i: usize) -> PolyScalar {
        PolyScalar::var(i)
    }

    fn c(v: i64) -> PolyScalar {
        PolyScalar::constant(integer(v))
    }

    fn l(v: &[usize]) -> IndexList {
        IndexList::new(v).unwrap()
    }

    fn f(metric: Metric, terms: &[(&[usize], PolyScalar)]) -> MvField {
        let grade = terms.first().map_or(0, |t| t.0.len()) as isize;
        MvField::from_terms(metric, grade, terms.iter().map(|(v, p)| (l(v), p.clone()))).unwrap()
    }

    #[test]
    fn partial_checks_range() {
        let m = Metric::new(0, 3).unwrap();
        assert_eq!(partial(&x(0).times(&x(0)), 0, m).unwrap(), c(2).times(&x(0)));
        assert!(partial(&x(0), 1, m).unwrap().is_zero());
        assert!(partial(&x(0), 3, m).is_err());
    }

    #[test]
    fn ext_deriv_examples() {
        let m = Metric::new(0, 3).unwrap();
        let a = f(m, &[(&[1], x(0))]);
        assert_eq!(ext_deriv(&a), f(m, &[(&[0, 1], c(1))]));
        let phi = MvField::scalar(m, x(0).times(&x(1)));
        assert_eq!(ext_deriv(&phi), f(m, &[(&[0], x(1)), (&[1], x(0))]));
        let top = f(Metric::new(0, 1).unwrap(), &[(&[0], x(0))]);
        let d = ext_deriv(&top);
        assert!(d.is_zero());
        assert_eq!(d.grade(), 2);
    }

    #[test]
    fn ext_deriv_uses_temporal_sign() {
        let m = Metric::new(1, 3).unwrap();
        let a = f(m, &[(&[1], x(0))]);
        assert_eq!(ext_deriv(&a), f(m, &[(&[0, 1], c(-1))]));
    }

    #[test]
    fn int_deriv_examples() {
        let m = Metric::new(0, 3).unwrap();
        let a = f(m, &[(&[0], x(0)), (&[1], x(1))]);
        assert_eq!(int_deriv(&a), MvField::scalar(m, c(2)));
        let b = f(m, &[(&[0, 1], x(1))]);
        assert_eq!(int_deriv(&b), f(m, &[(&[0], c(1))]));
        let s = int_deriv(&MvField::scalar(m, x(0)));
        assert!(s.is_zero());
        assert_eq!(s.grade(), -1);
    }

    #[test]
    fn tensor_deriv_examples() {
        let m = Metric::new(1, 3).unwrap();
        let a = f(m, &[(&[1], x(0))]);
        let expected =
            MvMatrixField::from_terms(m, 1, 1, [((l(&[0]), l(&[1])), c(-1))]).unwrap();
        assert_eq!(tensor_deriv(&a).unwrap(), expected);
        assert!(tensor_deriv(&f(m, &[(&[2], c(5))])).unwrap().is_zero());
        let m02 = Metric::new(0, 2).unwrap();
        let phi = MvField::scalar(m02, x(0).times(&x(1)));
        let expected = MvMatrixField::from_terms(
            m02,
            1,
            0,
            [((l(&[0]), l(&[])), x(1)), ((l(&[1]), l(&[])), x(0))],
        )
        .unwrap();
        assert_eq!(tensor_deriv(&phi).unwrap(), expected);
    }

    #[test]
    fn laplacian_examples() {
        let m11 = Metric::new(1, 1).unwrap();
        let a = MvField::scalar(m11, x(0).times(&x(0)));
        assert_eq!(laplacian(&a), MvField::scalar(m11, c(-2)));
        let m03 = Metric::new(0, 3).unwrap();
        assert!(laplacian(&f(m03, &[(&[1], c(7))])).is_zero());
        let b = MvField::scalar(m03, x(1).times(&x(1)).plus(&x(2).times(&x(2))));
        assert_eq!(laplacian(&b), MvField::scalar(m03, c(4)));
    }

    #[test]
    fn matrix_div_of_tensor_deriv_is_laplacian() {
        let m = Metric::new(1, 2).unwrap();
        let a = f(
            m,
            &[(&[0], x(0).times(&x(0)).times(&x(1))), (&[2], x(2).times(&x(2)).times(&x(0)))],
        );
        assert_eq!(matrix_div(&tensor_deriv(&a).unwrap()).unwrap(), laplacian(&a));
    }

    #[test]
    fn pointwise_products_multiply_polynomials() {
        let m = Metric::new(0, 3).unwrap();
        let a = f(m, &[(&[1], x(0))]);
        let b = f(m, &[(&[2], x(1))]);
        assert_eq!(a.wedge(&b), f(m, &[(&[1, 2], x(0).times(&x(1)))]));
    }

    #[test]
    fn divergence_requires_vector() {
        let m = Metric::new(0, 3).unwrap();
        let a = f(m, &[(&[0], x(0)), (&[2], x(2).times(&x(2)))]);
        assert_eq!(divergence(&a).unwrap(), c(1).plus(&c(2).times(&x(2))));
        assert!(divergence(&MvField::scalar(m, x(0))).is_err());
    }
}
