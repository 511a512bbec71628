//! Generalized Maxwell theory for a grade-`r` field `F = ∂∧A` on a `(k,n)`
//! space-time, with optional Proca mass and R_ξ gauge-fixing terms, and the
//! dual theory built on `F̄ = ∂⌋Ā`.

use num_integer::binomial;
use num_traits::Signed;

use crate::blade::Metric;
use crate::error::{Error, Result};
use crate::field::{ext_deriv, int_deriv, laplacian, MvField};
use crate::index::Sign;
use crate::random::FieldRng;
use crate::scalar::{integer, rational, sign_rational, Coeff, Rational};
use crate::variational::{
    euler_lagrange_exterior, Bindings, DerivOp, FieldEquation, FieldOp, FieldSymbol, FormalExpr, FormalTerm,
    LagrangianDensity, Slot,
};
use crate::Multivector;

/// Parameters of the theory. `mass = 0` means no Proca term; `xi = None`
/// means no R_ξ term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxwellConfig {
    metric: Metric,
    r: usize,
    mass: Rational,
    xi: Option<Rational>,
    potential: String,
    source: String,
}

impl MaxwellConfig {
    /// Field grade `r` with `1 ≤ r ≤ k+n`; potential `A`, source `J`.
    pub fn new(metric: Metric, r: usize) -> Result<MaxwellConfig> {
        if r == 0 || r > metric.dim() {
            return Err(Error::Domain(format!(
                "field grade r = {r} outside 1..={} for metric {metric}",
                metric.dim()
            )));
        }
        Ok(MaxwellConfig {
            metric,
            r,
            mass: Rational::zero(),
            xi: None,
            potential: "A".into(),
            source: "J".into(),
        })
    }

    /// Scalar potential `phi` with charge density `rho`.
    pub fn electrostatics(metric: Metric) -> Result<MaxwellConfig> {
        Ok(MaxwellConfig::new(metric, 1)?.with_names("phi", "rho"))
    }

    pub fn with_names(mut self, potential: &str, source: &str) -> MaxwellConfig {
        self.potential = potential.into();
        self.source = source.into();
        self
    }

    pub fn with_mass(mut self, mass: Rational) -> Result<MaxwellConfig> {
        if crate::scalar::is_negative(&mass) {
            return Err(Error::Domain("Proca mass must be non-negative".into()));
        }
        self.mass = mass;
        Ok(self)
    }

    pub fn with_xi(mut self, xi: Rational) -> Result<MaxwellConfig> {
        if !xi.is_positive() {
            return Err(Error::Domain("gauge parameter xi must be positive".into()));
        }
        self.xi = Some(xi);
        Ok(self)
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mass(&self) -> &Rational {
        &self.mass
    }

    pub fn xi(&self) -> Option<&Rational> {
        self.xi.as_ref()
    }

    pub fn potential(&self) -> &str {
        &self.potential
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// `F = ∂∧A` for a potential of grade `r − 1`.
pub fn field_from_potential(potential: &MvField, r: usize) -> Result<MvField> {
    if potential.grade() != r as isize - 1 {
        return Err(Error::GradeMismatch {
            expected: r as isize - 1,
            found: potential.grade(),
        });
    }
    Ok(ext_deriv(potential))
}

/// `(−1)^{r−1}/2 (∂∧A)·(∂∧A) + J·A − ½m² A·A + (−1)^{r−1}/(2ξ) (∂⌋A)·(∂⌋A)`,
/// with the mass and gauge terms present only when configured.
pub fn build_lagrangian(cfg: &MaxwellConfig) -> LagrangianDensity {
    let (a, j) = (cfg.potential.as_str(), cfg.source.as_str());
    let s = cfg.r - 1;
    let parity = sign_rational(Sign::parity(s));
    let mut l = LagrangianDensity::new(cfg.metric, vec![FieldSymbol::dynamical(a, s), FieldSymbol::source(j, s)])
        .expect("grade checked by the config");
    let mut add = |coeff: Rational, left: Slot, right: Slot| l.add_term(coeff, left, right).expect("shapes agree");
    add(&parity * rational(1, 2), Slot::new(DerivOp::Ext, a), Slot::new(DerivOp::Ext, a));
    add(integer(1), Slot::new(DerivOp::Id, j), Slot::new(DerivOp::Id, a));
    if !cfg.mass.is_zero() {
        add(-(&cfg.mass * &cfg.mass) * rational(1, 2), Slot::new(DerivOp::Id, a), Slot::new(DerivOp::Id, a));
    }
    if let Some(xi) = &cfg.xi {
        add(&parity / (xi * integer(2)), Slot::new(DerivOp::Int, a), Slot::new(DerivOp::Int, a));
    }
    l
}

/// Euler–Lagrange equation of [`build_lagrangian`] in presentation form,
/// e.g. `d_| ( d^ A ) + A = J + d^ ( d_| A )`.
pub fn derive_equations(cfg: &MaxwellConfig) -> Result<FieldEquation> {
    Ok(euler_lagrange_exterior(&build_lagrangian(cfg))?.arranged())
}

/// `∂⌋(∂∧a) − ∂∧(∂⌋a) − (−1)^{gr a}(∂·∂)a`, which vanishes identically.
pub fn splitting_defect(a: &MvField) -> MvField {
    let parity = sign_rational(Sign::parity(a.grade().max(0) as usize));
    int_deriv(&ext_deriv(a)) - ext_deriv(&int_deriv(a)) - laplacian(a).scale_rational(&parity)
}

/// Number of random potentials the splitting identity is checked on before
/// [`wave_form`] relies on it.
const SPLITTING_TRIALS: usize = 12;

fn check_splitting(metric: Metric, grade: usize) -> Result<()> {
    for trial in 0..SPLITTING_TRIALS {
        let mut rng = FieldRng::for_trial(0x5eed, trial as u64);
        let a = rng.field_case(metric, grade, 3, trial);
        let defect = splitting_defect(&a);
        if !defect.is_zero() {
            return Err(Error::Domain(format!(
                "Laplacian splitting fails for metric {metric}, grade {grade}: defect {defect}"
            )));
        }
    }
    Ok(())
}

/// `(−1)^{r−1}(∂·∂)A + m²A = J + (1/ξ − 1) ∂∧(∂⌋A)`, obtained from
/// [`derive_equations`] by substituting
/// `∂⌋(∂∧A) = (−1)^{r−1}(∂·∂)A + ∂∧(∂⌋A)`. Zero terms are dropped; for
/// `r = 1` the `∂∧(∂⌋A)` term vanishes identically and is omitted.
pub fn wave_form(cfg: &MaxwellConfig) -> Result<FieldEquation> {
    let xi = cfg
        .xi
        .as_ref()
        .ok_or_else(|| Error::Domain("the wave form needs an R_xi gauge term".into()))?;
    let s = cfg.r - 1;
    check_splitting(cfg.metric, s)?;
    let a = cfg.potential.as_str();
    let parity = sign_rational(Sign::parity(s));
    let mut lhs = FormalExpr::zero();
    lhs.push(FormalTerm::new(parity, vec![FieldOp::Lap], a));
    lhs.push(FormalTerm::new(&cfg.mass * &cfg.mass, vec![], a));
    let mut rhs = FormalExpr::chain(vec![], &cfg.source);
    if s > 0 {
        let gauge = integer(1) / xi - integer(1);
        rhs.push(FormalTerm::new(gauge, vec![FieldOp::Ext, FieldOp::Int], a));
    }
    Ok(FieldEquation::new(cfg.metric, s as isize, a, lhs, rhs))
}

/// `A' = A + Ā + ∂∧G` with `Ā` constant. `gauge` may be `None` only when
/// `A` is a scalar, where `G` would have grade `−1`.
pub fn gauge_transform(potential: &MvField, shift: &MvField, gauge: Option<&MvField>) -> Result<MvField> {
    let s = potential.grade();
    if shift.grade() != s {
        return Err(Error::GradeMismatch {
            expected: s,
            found: shift.grade(),
        });
    }
    if shift.terms().values().any(|c| c.as_constant().is_none()) {
        return Err(Error::Domain("the shift must be a constant field".into()));
    }
    let mut out = potential.checked_add(shift)?;
    match gauge {
        Some(g) if g.grade() != s - 1 => {
            return Err(Error::GradeMismatch {
                expected: s - 1,
                found: g.grade(),
            })
        }
        Some(g) => out = out.checked_add(&ext_deriv(g))?,
        None if s > 0 => return Err(Error::Domain("gauge field required for potentials of grade ≥ 1".into())),
        None => {}
    }
    Ok(out)
}

/// Whether `∂∧F = 0` exactly.
pub fn homogeneous_check(f: &MvField) -> bool {
    ext_deriv(f).is_zero()
}

/// Lorenz-type condition `∂∧Ā = 0` for a dual potential.
pub fn lorenz_gauge_check(dual_potential: &MvField) -> bool {
    ext_deriv(dual_potential).is_zero()
}

/// `(−1)^r/2 (∂⌋Ā)·(∂⌋Ā) + J̄·Ā` for a potential of grade `s = r + 1`.
pub fn dual_lagrangian(metric: Metric, s: usize) -> Result<LagrangianDensity> {
    if s == 0 || s > metric.dim() {
        return Err(Error::Domain(format!(
            "dual potential grade s = {s} outside 1..={}",
            metric.dim()
        )));
    }
    let parity = sign_rational(Sign::parity(s - 1));
    LagrangianDensity::new(metric, vec![FieldSymbol::dynamical("Abar", s), FieldSymbol::source("Jbar", s)])?
        .with_term(parity * rational(1, 2), Slot::new(DerivOp::Int, "Abar"), Slot::new(DerivOp::Int, "Abar"))?
        .with_term(integer(1), Slot::new(DerivOp::Id, "Jbar"), Slot::new(DerivOp::Id, "Abar"))
}

/// The dual theory's nonhomogeneous equation `∂∧(∂⌋Ā) = J̄`, derived from
/// [`dual_lagrangian`], and its homogeneous equation `∂⌋(∂⌋Ā) = 0`.
pub fn dual_theory(metric: Metric, s: usize) -> Result<(FieldEquation, FieldEquation)> {
    let nonhomogeneous = euler_lagrange_exterior(&dual_lagrangian(metric, s)?)?.arranged();
    let homogeneous = FieldEquation::new(
        metric,
        s as isize - 2,
        "Abar",
        FormalExpr::chain(vec![FieldOp::Int, FieldOp::Int], "Abar"),
        FormalExpr::zero(),
    );
    Ok((nonhomogeneous, homogeneous))
}

/// `Ā⌊∂ = Σ_i Δ_ii ∂_i (Ā ⌊ e_i)`, the interior derivative acting from the
/// right.
pub fn right_int_deriv(a: &MvField) -> MvField {
    let metric = a.metric();
    let mut out = MvField::zero(metric, a.grade() - 1);
    for i in 0..metric.dim() {
        let di = a.map(|_, c| c.derivative(i).signed(metric.delta(i)));
        let e = Multivector::basis(metric, crate::IndexList::single(i)).expect("index in range");
        out = out + di.right_contract(&e);
    }
    out
}

/// `binomial(k+n−2, r−1)` physical polarizations of a grade-`r` field.
pub fn polarization_count(k: usize, n: usize, r: usize) -> Result<u64> {
    if k < 1 || n < 1 {
        return Err(Error::Domain(format!("polarization count needs k ≥ 1 and n ≥ 1, got ({k},{n})")));
    }
    if r < 1 || r > k + n {
        return Err(Error::Domain(format!("field grade r = {r} outside 1..={}", k + n)));
    }
    if r - 1 > k + n - 2 {
        return Ok(0);
    }
    Ok(binomial((k + n - 2) as u64, (r - 1) as u64))
}

/// Random bindings for the potential and source of `cfg`.
pub fn random_bindings(cfg: &MaxwellConfig, rng: &mut FieldRng, max_degree: u32, index: usize) -> Bindings {
    build_lagrangian(cfg).random_bindings(rng, max_degree, index)
}
