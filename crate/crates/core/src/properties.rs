//! Seeded property battery behind the `verify` command.
//!
//! Every property draws from its own stream of [`FieldRng`], keyed by the
//! run seed and the property name, so results do not depend on which other
//! properties run or in what order. Suites run their properties in parallel
//! and return results sorted by name.

use num_traits::Signed;
use rayon::prelude::*;

use crate::blade::{Metric, Multivector};
use crate::em::{self, MaxwellConfig};
use crate::field::{
    carried_divergence, divergence, ext_deriv, int_deriv, laplacian, matrix_div, tensor_deriv, MvField,
};
use crate::index::{all_lists, sort_signature, IndexList, Sign, MAX_DIM};
use crate::matrix::MvMatrix;
use crate::random::FieldRng;
use crate::scalar::{integer, rational, sign_rational, Coeff, Rational};
use crate::variational::{
    euler_lagrange_exterior, first_variation, first_variation_exterior, linear_coefficient, tensor_route, vderiv,
    verify_tensor_exterior_identity, Bindings, DerivOp, FieldEquation, FieldOp, FieldSymbol, FormalExpr,
    FormalTerm, LagrangianDensity, Shape, Slot,
};

/// Metrics used by the differential identities.
pub const CALCULUS_METRICS: [(usize, usize); 4] = [(0, 3), (1, 1), (1, 3), (2, 2)];

/// Largest polynomial degree of random fields.
pub const MAX_DEGREE: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            cases: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Records an error from the code under test as a failure.
    fn check_result(&mut self, result: crate::Result<bool>, describe: impl FnOnce() -> String) {
        match result {
            Ok(ok) => self.check(ok, describe),
            Err(e) => self.check(false, || format!("{}: error {e}", describe())),
        }
    }

    /// Adds `cases` cases of which `failures` failed.
    fn record(&mut self, cases: usize, failures: &[String], label: &str) {
        self.cases += cases;
        self.failures += failures.len();
        if self.counterexample.is_none() {
            self.counterexample = failures.first().map(|f| format!("{label}: {f}"));
        }
    }

    fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            counterexample: self.counterexample,
        }
    }
}

/// FNV-1a of the property name mixed into the run seed.
fn property_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    seed ^ h
}

/// Stream index for `(configuration, trial)`.
fn stream(config: usize, trial: usize) -> u64 {
    ((config as u64) << 32) | trial as u64
}

fn metric(k: usize, n: usize) -> Metric {
    Metric::new(k, n).expect("valid metric")
}

/// Every `(k,n)` with `1 ≤ k+n ≤ max_dim`.
pub fn metrics_up_to(max_dim: usize) -> Vec<Metric> {
    (1..=max_dim)
        .flat_map(|d| (0..=d).map(move |k| metric(k, d - k)))
        .collect()
}

type Property = fn(u64, usize) -> PropertyResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Algebra,
    Calculus,
    Variational,
    Em,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Algebra, Suite::Calculus, Suite::Variational, Suite::Em];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Calculus => "calculus",
            Suite::Variational => "variational",
            Suite::Em => "em",
        }
    }

    fn properties(self) -> Vec<(&'static str, Property)> {
        match self {
            Suite::Algebra => vec![
                ("algebra.signature_parity", signature_parity),
                ("algebra.duality", duality),
                ("algebra.hodge_round_trip", hodge_round_trip),
                ("algebra.equal_grade_collapse", equal_grade_collapse),
                ("algebra.graded_commutativity", graded_commutativity),
                ("algebra.wedge_associativity", wedge_associativity),
                ("algebra.bilinearity", bilinearity),
                ("algebra.matrix_identity", matrix_identity),
                ("algebra.matrix_transpose_action", matrix_transpose_action),
                ("algebra.matrix_dot", matrix_dot),
            ],
            Suite::Calculus => vec![
                ("calculus.ext_nilpotent", ext_nilpotent),
                ("calculus.int_nilpotent", int_nilpotent),
                ("calculus.leibniz_wedge", leibniz_wedge),
                ("calculus.leibniz_contraction", leibniz_contraction),
                ("calculus.matrix_leibniz", matrix_leibniz),
                ("calculus.laplacian_splitting", laplacian_splitting),
                ("calculus.tensor_laplacian", tensor_laplacian),
                ("calculus.curl", curl),
            ],
            Suite::Variational => vec![
                ("variational.tensor_exterior_identity", tensor_exterior_identity),
                ("variational.first_variation", first_variation_exactness),
                ("variational.component_form", component_form),
                ("variational.vderiv_linearity", vderiv_linearity),
            ],
            Suite::Em => vec![
                ("em.maxwell_structure", maxwell_structure),
                ("em.proca_structure", proca_structure),
                ("em.wave_form_agreement", wave_form_agreement),
                ("em.gauge_invariance", gauge_invariance),
                ("em.dual_theory", dual_theory),
                ("em.right_interior_sign", right_interior_sign),
                ("em.continuity", continuity),
                ("em.polarization_count", polarization_count),
            ],
        }
    }
}

/// Runs one suite; results are sorted by property name.
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Vec<PropertyResult> {
    let mut results: Vec<PropertyResult> = suite
        .properties()
        .into_par_iter()
        .map(|(_, property)| property(seed, trials))
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

/// Runs one named property.
pub fn run_property(name: &str, seed: u64, trials: usize) -> Option<PropertyResult> {
    Suite::ALL
        .iter()
        .flat_map(|s| s.properties())
        .find(|(n, _)| *n == name)
        .map(|(_, p)| p(seed, trials))
}

/// Names of every property in `suite`.
pub fn property_names(suite: Suite) -> Vec<&'static str> {
    let mut names: Vec<_> = suite.properties().into_iter().map(|(n, _)| n).collect();
    names.sort();
    names
}

// ---- algebra ----

/// Parity by counting adjacent swaps of a bubble sort.
fn bubble_parity(raw: &[usize]) -> Sign {
    let mut v = raw.to_vec();
    let mut swaps = 0;
    for end in (1..v.len()).rev() {
        for i in 0..end {
            if v[i] > v[i + 1] {
                v.swap(i, i + 1);
                swaps += 1;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        Sign::Zero
    } else {
        Sign::parity(swaps)
    }
}

fn signature_parity(seed: u64, trials: usize) -> PropertyResult {
    let name = "algebra.signature_parity";
    let mut tally = Tally::new(name);
    let mut rng = FieldRng::new(property_seed(seed, name));
    for _ in 0..trials.max(1) * 100 {
        let dim = 1 + rng.below(MAX_DIM);
        let len = rng.below(9);
        let raw: Vec<usize> = (0..len).map(|_| rng.below(dim)).collect();
        let expected = bubble_parity(&raw);
        let got = sort_signature(&raw, dim).map(|(s, _)| s);
        tally.check(got.as_ref() == Ok(&expected), || {
            format!("{raw:?} in dim {dim}: expected {expected:?}, got {got:?}")
        });
    }
    tally.finish()
}

fn blade(m: Metric, list: IndexList) -> Multivector {
    Multivector::basis(m, list).expect("list inside metric")
}

fn duality(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("algebra.duality");
    for m in metrics_up_to(5) {
        let lists = all_lists(m.dim());
        for &i in &lists {
            for &j in &lists {
                let (a, b) = (blade(m, i), blade(m, j));
                let left = a.left_contract(&b);
                let via_hodge = a.wedge(&b.hodge()).inv_hodge();
                tally.check(left == via_hodge, || format!("{m}: e{i} ⌋ e{j} = {left}, dual form {via_hodge}"));
                let right = b.right_contract(&a);
                let via_hodge = b.inv_hodge().wedge(&a).hodge();
                tally.check(right == via_hodge, || format!("{m}: e{j} ⌊ e{i} = {right}, dual form {via_hodge}"));
            }
        }
    }
    tally.finish()
}

fn hodge_round_trip(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("algebra.hodge_round_trip");
    for m in metrics_up_to(6) {
        for list in all_lists(m.dim()) {
            let e = blade(m, list);
            tally.check(e.hodge().inv_hodge() == e, || format!("{m}: (e{list}^H)^H⁻¹ ≠ e{list}"));
            tally.check(e.inv_hodge().hodge() == e, || format!("{m}: (e{list}^H⁻¹)^H ≠ e{list}"));
        }
    }
    tally.finish()
}

fn equal_grade_collapse(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("algebra.equal_grade_collapse");
    for m in metrics_up_to(5) {
        let lists = all_lists(m.dim());
        for &i in &lists {
            for &j in lists.iter().filter(|j| j.len() == i.len()) {
                let (a, b) = (blade(m, i), blade(m, j));
                let dot = Multivector::scalar(m, a.dot(&b).expect("equal grades"));
                let left = a.left_contract(&b);
                let right = b.right_contract(&a);
                tally.check(left == dot && right == dot, || {
                    format!("{m}: e{i}, e{j}: ⌋ {left}, ⌊ {right}, · {dot}")
                });
            }
        }
    }
    tally.finish()
}

fn graded_commutativity(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("algebra.graded_commutativity");
    for m in metrics_up_to(5) {
        let lists = all_lists(m.dim());
        for &i in &lists {
            for &j in &lists {
                let (a, b) = (blade(m, i), blade(m, j));
                let swapped = b.wedge(&a).scale_rational(&sign_rational(Sign::parity(i.len() * j.len())));
                tally.check(a.wedge(&b) == swapped, || format!("{m}: e{i} ∧ e{j}"));
            }
        }
    }
    tally.finish()
}

fn wedge_associativity(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("algebra.wedge_associativity");
    for m in metrics_up_to(4) {
        let lists = all_lists(m.dim());
        for &i in &lists {
            for &j in &lists {
                for &k in &lists {
                    let (a, b, c) = (blade(m, i), blade(m, j), blade(m, k));
                    tally.check(a.wedge(&b).wedge(&c) == a.wedge(&b.wedge(&c)), || {
                        format!("{m}: (e{i} ∧ e{j}) ∧ e{k}")
                    });
                }
            }
        }
    }
    tally.finish()
}

fn bilinearity(seed: u64, trials: usize) -> PropertyResult {
    let name = "algebra.bilinearity";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(4).into_iter().enumerate() {
        for t in 0..trials {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let (ga, gb) = (rng.below(m.dim() + 1), rng.below(m.dim() + 1));
            let a1 = rng.multivector(m, ga);
            let a2 = rng.multivector(m, ga);
            let b = rng.multivector(m, gb);
            let (s1, s2) = (rng.rational(), rng.rational());
            let combo = a1.scale_rational(&s1) + a2.scale_rational(&s2);
            type Product = fn(&Multivector, &Multivector) -> Multivector;
            let products: [(&str, Product); 3] = [
                ("∧", |x, y| x.wedge(y)),
                ("⌋", |x, y| x.left_contract(y)),
                ("⌊", |x, y| y.right_contract(x)),
            ];
            for (symbol, p) in products {
                let lhs = p(&combo, &b);
                let rhs = p(&a1, &b).scale_rational(&s1) + p(&a2, &b).scale_rational(&s2);
                tally.check(lhs == rhs, || format!("{m}: {symbol} not linear in its first argument, trial {t}"));
                let lhs = p(&b, &combo);
                let rhs = p(&b, &a1).scale_rational(&s1) + p(&b, &a2).scale_rational(&s2);
                tally.check(lhs == rhs, || format!("{m}: {symbol} not linear in its second argument, trial {t}"));
            }
            let b2 = rng.multivector(m, ga);
            let lhs = combo.dot(&b2).expect("equal grades");
            let rhs = &a1.dot(&b2).expect("equal grades") * &s1 + &a2.dot(&b2).expect("equal grades") * &s2;
            tally.check(lhs == rhs, || format!("{m}: · not linear, trial {t}"));
        }
    }
    tally.finish()
}

fn random_matrix(rng: &mut FieldRng, m: Metric, rows: usize, cols: usize) -> MvMatrix {
    let entries: Vec<_> = crate::index::lists_of_len(m.dim(), rows)
        .into_iter()
        .flat_map(|r| crate::index::lists_of_len(m.dim(), cols).into_iter().map(move |c| (r, c)))
        .collect();
    let mut terms = Vec::new();
    for key in entries {
        if rng.coin() {
            terms.push((key, rng.rational()));
        }
    }
    MvMatrix::from_terms(m, rows, cols, terms).expect("valid keys")
}

fn matrix_identity(seed: u64, trials: usize) -> PropertyResult {
    let name = "algebra.matrix_identity";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(4).into_iter().enumerate() {
        for t in 0..trials {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let l = rng.below(3.min(m.dim() + 1));
            let other = rng.below(m.dim() + 1);
            let a = random_matrix(&mut rng, m, l, other);
            let left = MvMatrix::identity(m, l).mat_mul(&a).expect("shapes agree");
            let b = random_matrix(&mut rng, m, other, l);
            let right = b.mat_mul(&MvMatrix::identity(m, l)).expect("shapes agree");
            tally.check(left == a && right == b, || format!("{m}: I_{l} not a two-sided identity, trial {t}"));
        }
    }
    tally.finish()
}

fn matrix_transpose_action(seed: u64, trials: usize) -> PropertyResult {
    let name = "algebra.matrix_transpose_action";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(4).into_iter().enumerate() {
        for t in 0..trials {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let (rows, cols) = (rng.below(m.dim() + 1), rng.below(m.dim() + 1));
            let a = random_matrix(&mut rng, m, rows, cols);
            for list in crate::index::lists_of_len(m.dim(), cols) {
                let e = blade(m, list);
                let lhs = MvMatrix::vec_mat(&e, &a.transpose()).expect("grades agree");
                let rhs = a.mat_vec(&e).expect("grades agree");
                tally.check(lhs == rhs, || format!("{m}: e{list} × Aᵀ ≠ A × e{list}, trial {t}"));
            }
        }
    }
    tally.finish()
}

fn matrix_dot(seed: u64, trials: usize) -> PropertyResult {
    let name = "algebra.matrix_dot";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(4).into_iter().enumerate() {
        for t in 0..trials {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let (rows, cols) = (rng.below(m.dim() + 1), rng.below(m.dim() + 1));
            let a = random_matrix(&mut rng, m, rows, cols);
            let mut expected = Rational::zero();
            for (&(r, col), v) in a.terms() {
                expected += (v * v) * sign_rational(m.delta_list(r) * m.delta_list(col));
            }
            let got = a.mat_dot(&a).expect("same shape");
            tally.check(got == expected, || format!("{m}: A·A = {got}, expected {expected}, trial {t}"));
        }
    }
    tally.finish()
}

// ---- calculus ----

/// Calls `body(rng, metric, trial)` for every calculus metric and trial,
/// with one stream per `(metric, grade-slot, trial)`.
fn for_calculus_fields(
    seed: u64,
    name: &str,
    trials: usize,
    grades: impl Fn(Metric) -> Vec<usize>,
    mut body: impl FnMut(&mut FieldRng, Metric, usize, usize),
) {
    let seed = property_seed(seed, name);
    for (c, &(k, n)) in CALCULUS_METRICS.iter().enumerate() {
        let m = metric(k, n);
        for g in grades(m) {
            for t in 0..trials {
                let mut rng = FieldRng::for_trial(seed, stream(c * 32 + g, t));
                body(&mut rng, m, g, t);
            }
        }
    }
}

fn all_grades(m: Metric) -> Vec<usize> {
    (0..=m.dim()).collect()
}

fn ext_nilpotent(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.ext_nilpotent");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, g, t| {
        let a = rng.field_case(m, g, MAX_DEGREE, t);
        let dd = ext_deriv(&ext_deriv(&a));
        tally.check(dd.is_zero(), || format!("{m} grade {g}: ∂∧∂∧a = {dd} for a = {a}"));
    });
    tally.finish()
}

fn int_nilpotent(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.int_nilpotent");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, g, t| {
        let a = rng.field_case(m, g, MAX_DEGREE, t);
        let dd = int_deriv(&int_deriv(&a));
        tally.check(dd.is_zero(), || format!("{m} grade {g}: ∂⌋∂⌋a = {dd} for a = {a}"));
    });
    tally.finish()
}

/// `∂⌋(a∧b) = a(∂·b) − (∂·a)b` for 1-vectors, with `∂` acting on the whole
/// product: `a(∂·b) = Σ_q ∂_q(b_q a)`.
fn leibniz_wedge(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.leibniz_wedge");
    for_calculus_fields(seed, tally.name, trials, |_| vec![1], |rng, m, _, t| {
        let a = rng.field_case(m, 1, MAX_DEGREE, t);
        let b = rng.field(m, 1, MAX_DEGREE);
        let lhs = int_deriv(&a.wedge(&b));
        let rhs = carried_divergence(&a, &b)
            .and_then(|x| Ok(x - carried_divergence(&b, &a)?));
        tally.check_result(rhs.map(|r| r == lhs), || format!("{m}: a = {a}, b = {b}"));
    });
    tally.finish()
}

/// `∂·(a⌋b) = (∂∧a)·b + (−1)^{gr a}(∂⌋b)·a` for grades `s−1`, `s`.
fn leibniz_contraction(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.leibniz_contraction");
    for_calculus_fields(seed, tally.name, trials, |m| (1..=m.dim()).collect(), |rng, m, s, t| {
        let a = rng.field_case(m, s - 1, MAX_DEGREE, t);
        let b = rng.field(m, s, MAX_DEGREE);
        let check = || -> crate::Result<bool> {
            let lhs = divergence(&a.left_contract(&b))?;
            let sign = sign_rational(Sign::parity(s - 1));
            let rhs = ext_deriv(&a).dot(&b)?.plus(&int_deriv(&b).dot(&a)?.scaled(&sign));
            Ok(lhs == rhs)
        };
        tally.check_result(check(), || format!("{m} s = {s}: a = {a}, b = {b}"));
    });
    tally.finish()
}

/// `∂·(B×a) = (∂×B)·a + B·(∂⊗a)`.
fn matrix_leibniz(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.matrix_leibniz");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, g, t| {
        let a = rng.field_case(m, g, MAX_DEGREE, t);
        let b = rng.matrix_field(m, g, MAX_DEGREE);
        let check = || -> crate::Result<bool> {
            let lhs = divergence(&b.mat_vec(&a)?)?;
            let rhs = matrix_div(&b)?.dot(&a)?.plus(&b.mat_dot(&tensor_deriv(&a)?)?);
            Ok(lhs == rhs)
        };
        tally.check_result(check(), || format!("{m} grade {g}: a = {a}"));
    });
    tally.finish()
}

/// `∂⌋(∂∧a) − ∂∧(∂⌋a) = (−1)^{gr a}(∂·∂)a`.
fn laplacian_splitting(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.laplacian_splitting");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, g, t| {
        let a = rng.field_case(m, g, MAX_DEGREE, t);
        let defect = em::splitting_defect(&a);
        tally.check(defect.is_zero(), || format!("{m} grade {g}: defect {defect} for a = {a}"));
    });
    tally.finish()
}

fn tensor_laplacian(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("calculus.tensor_laplacian");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, g, t| {
        let a = rng.field_case(m, g, MAX_DEGREE, t);
        let got = tensor_deriv(&a).and_then(|d| matrix_div(&d));
        tally.check_result(got.map(|x| x == laplacian(&a)), || format!("{m} grade {g}: a = {a}"));
    });
    tally.finish()
}

/// The classical curl `ε_ijk ∂_j v_k e_i` of a 1-vector field in (0,3).
fn classical_curl(v: &MvField) -> MvField {
    let m = v.metric();
    let c = |i: usize| v.component(IndexList::single(i));
    let comp = |j: usize, k: usize| c(k).derivative(j).minus(&c(j).derivative(k));
    MvField::from_terms(
        m,
        1,
        [(0, comp(1, 2)), (1, comp(2, 0)), (2, comp(0, 1))].map(|(i, p)| (IndexList::single(i), p)),
    )
    .expect("indices inside (0,3)")
}

fn curl(seed: u64, trials: usize) -> PropertyResult {
    let name = "calculus.curl";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    let m = metric(0, 3);
    for t in 0..trials {
        let mut rng = FieldRng::for_trial(seed, t as u64);
        let v = rng.field_case(m, 1, MAX_DEGREE, t);
        let forms = [
            ext_deriv(&v).inv_hodge(),
            int_deriv(&v.inv_hodge()),
            int_deriv(&v.hodge()),
        ];
        let classical = classical_curl(&v);
        tally.check(forms.iter().all(|f| *f == classical), || {
            format!("v = {v}: forms {} | {} | {}, classical {classical}", forms[0], forms[1], forms[2])
        });
    }
    tally.finish()
}

// ---- variational ----

/// A battery entry: a density and whether it uses tensor slots.
struct Battery {
    label: String,
    density: LagrangianDensity,
}

/// Maxwell, Maxwell+R_ξ, Maxwell+Proca, Maxwell+Proca+R_ξ, dual and pure-source
/// densities for every `(k,n)` with `k+n ≤ max_dim` and admissible grade.
fn exterior_battery(max_dim: usize) -> Vec<Battery> {
    let mut out = Vec::new();
    for m in metrics_up_to(max_dim) {
        for r in 1..=m.dim() {
            let plain = MaxwellConfig::new(m, r).expect("r in range");
            let proca = plain.clone().with_mass(rational(3, 2)).expect("mass ≥ 0");
            let rxi = plain.clone().with_xi(rational(2, 3)).expect("xi > 0");
            let gauge = proca.clone().with_xi(rational(2, 3)).expect("xi > 0");
            for (label, cfg) in [("maxwell", plain), ("maxwell+rxi", rxi), ("proca", proca), ("proca+rxi", gauge)] {
                out.push(Battery {
                    label: format!("{label} {m} r={r}"),
                    density: em::build_lagrangian(&cfg),
                });
            }
            out.push(Battery {
                label: format!("dual {m} s={r}"),
                density: em::dual_lagrangian(m, r).expect("s in range"),
            });
            let source_only = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", r - 1), FieldSymbol::source("J", r - 1)])
                .and_then(|l| l.with_term(integer(1), Slot::new(DerivOp::Id, "J"), Slot::new(DerivOp::Id, "a")))
                .expect("well-formed");
            out.push(Battery {
                label: format!("source {m} s={}", r - 1),
                density: source_only,
            });
        }
    }
    out
}

/// `½(∂⊗a)·(∂⊗a) − ρ·a` for every grade.
fn tensor_battery(max_dim: usize) -> Vec<Battery> {
    let mut out = Vec::new();
    for m in metrics_up_to(max_dim) {
        for s in 0..=m.dim() {
            let l = LagrangianDensity::new(m, vec![FieldSymbol::dynamical("a", s), FieldSymbol::source("rho", s)])
                .and_then(|l| l.with_term(rational(1, 2), Slot::new(DerivOp::Tensor, "a"), Slot::new(DerivOp::Tensor, "a")))
                .and_then(|l| l.with_term(integer(-1), Slot::new(DerivOp::Id, "rho"), Slot::new(DerivOp::Id, "a")))
                .expect("well-formed");
            out.push(Battery {
                label: format!("tensor {m} s={s}"),
                density: l,
            });
        }
    }
    out
}

/// Metrics with `k+n ≤ 4` contain the calculus set.
const VARIATIONAL_MAX_DIM: usize = 4;

fn tensor_exterior_identity(seed: u64, trials: usize) -> PropertyResult {
    let name = "variational.tensor_exterior_identity";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, entry) in exterior_battery(VARIATIONAL_MAX_DIM).into_iter().enumerate() {
        match verify_tensor_exterior_identity(&entry.density, trials, seed ^ c as u64) {
            Ok(report) => tally.record(report.trials, &report.failures, &entry.label),
            Err(e) => tally.check(false, || format!("{}: error {e}", entry.label)),
        }
    }
    tally.finish()
}

fn first_variation_exactness(seed: u64, trials: usize) -> PropertyResult {
    let name = "variational.first_variation";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    let battery = exterior_battery(VARIATIONAL_MAX_DIM);
    let tensor = tensor_battery(VARIATIONAL_MAX_DIM);
    for (c, entry) in battery.iter().chain(&tensor).enumerate() {
        let l = &entry.density;
        let a = l.dynamical().expect("battery has a dynamical field").clone();
        let exterior = !l.uses(DerivOp::Tensor);
        for t in 0..trials {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let bindings = l.random_bindings(&mut rng, MAX_DEGREE, t);
            let eps = rng.field_case(l.metric(), a.grade, MAX_DEGREE, (t + 1) % trials.max(1));
            let check = || -> crate::Result<bool> {
                let expected = linear_coefficient(l, &bindings, &eps)?;
                let mut ok = first_variation(l, &bindings, &eps)?.total()? == expected;
                if exterior {
                    ok &= first_variation_exterior(l, &bindings, &eps)?.total()? == expected;
                }
                Ok(ok)
            };
            tally.check_result(check(), || format!("{} trial {t}: a = {}, ε = {eps}", entry.label, bindings[&a.name]));
        }
    }
    tally.finish()
}

/// The exterior equation's residual, read per blade `I`, equals
/// `Δ_II (∂L/∂a_I − Σ_i ∂_i ∂L/∂(∂_i a_I))`.
fn component_form(seed: u64, trials: usize) -> PropertyResult {
    let name = "variational.component_form";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, entry) in exterior_battery(VARIATIONAL_MAX_DIM).iter().enumerate() {
        let l = &entry.density;
        let eq = match euler_lagrange_exterior(l) {
            Ok(eq) => eq,
            Err(e) => {
                tally.check(false, || format!("{}: error {e}", entry.label));
                continue;
            }
        };
        for t in 0..trials.min(10) {
            let mut rng = FieldRng::for_trial(seed, stream(c, t));
            let bindings = l.random_bindings(&mut rng, MAX_DEGREE, t);
            let check = || -> crate::Result<bool> {
                let residual = eq.residual(&bindings)?;
                let route = tensor_route(l, &bindings)?;
                let m = l.metric();
                Ok(crate::index::lists_of_len(m.dim(), eq.grade as usize).into_iter().all(|list| {
                    residual.component(list) == route.component_residual(list).signed(m.delta_list(list))
                }))
            };
            tally.check_result(check(), || format!("{} trial {t}", entry.label));
        }
    }
    tally.finish()
}

fn vderiv_linearity(seed: u64, trials: usize) -> PropertyResult {
    let name = "variational.vderiv_linearity";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(VARIATIONAL_MAX_DIM).into_iter().enumerate() {
        for r in 1..=m.dim() {
            let base = MaxwellConfig::new(m, r).expect("r in range");
            let l1 = em::build_lagrangian(&base);
            let l2 = em::build_lagrangian(&base.clone().with_mass(integer(1)).unwrap().with_xi(integer(1)).unwrap());
            for t in 0..trials.min(10) {
                let mut rng = FieldRng::for_trial(seed, stream(c * 32 + r, t));
                let (c1, c2) = (rng.rational(), rng.rational());
                let combined = l1.scaled(&c1).sum(&l2.scaled(&c2)).expect("same symbols");
                let bindings = l1.random_bindings(&mut rng, MAX_DEGREE, t);
                for op in [DerivOp::Id, DerivOp::Ext, DerivOp::Int] {
                    let slot = Slot::new(op, "A");
                    let shape = op.shape(r - 1);
                    let check = || -> crate::Result<bool> {
                        let lhs = vderiv(&combined, &slot)?.evaluate(m, shape, &bindings)?;
                        let rhs = vderiv(&l1, &slot)?
                            .scaled(&c1)
                            .plus(&vderiv(&l2, &slot)?.scaled(&c2))
                            .evaluate(m, shape, &bindings)?;
                        Ok(lhs == rhs)
                    };
                    tally.check_result(check(), || format!("{m} r={r} slot {op:?} c=({c1},{c2})"));
                }
            }
        }
    }
    tally.finish()
}

// ---- em ----

fn maxwell_structure(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("em.maxwell_structure");
    for m in metrics_up_to(4) {
        for r in 1..=m.dim() {
            let cfg = MaxwellConfig::new(m, r).expect("r in range");
            let expected = FieldEquation::new(
                m,
                r as isize - 1,
                "A",
                FormalExpr::chain(vec![FieldOp::Int, FieldOp::Ext], "A"),
                FormalExpr::chain(vec![], "J"),
            );
            let got = em::derive_equations(&cfg);
            tally.check(got.as_ref() == Ok(&expected), || format!("{m} r={r}: {got:?}"));
        }
    }
    tally.finish()
}

/// `∂⌋(∂∧A) + m²A = J + (1/ξ) ∂∧(∂⌋A)` for random `m > 0`, `ξ > 0`.
fn proca_structure(seed: u64, trials: usize) -> PropertyResult {
    let name = "em.proca_structure";
    let mut tally = Tally::new(name);
    let mut rng = FieldRng::new(property_seed(seed, name));
    for m in metrics_up_to(4) {
        for r in 1..=m.dim() {
            for _ in 0..trials.min(5) {
                let mass = rng.rational().abs();
                let xi = rng.rational().abs();
                let cfg = MaxwellConfig::new(m, r)
                    .and_then(|c| c.with_mass(mass.clone()))
                    .and_then(|c| c.with_xi(xi.clone()))
                    .expect("valid parameters");
                let lhs = FormalExpr::from_terms([
                    FormalTerm::new(integer(1), vec![FieldOp::Int, FieldOp::Ext], "A"),
                    FormalTerm::new(&mass * &mass, vec![], "A"),
                ]);
                let rhs = FormalExpr::from_terms([
                    FormalTerm::new(integer(1), vec![], "J"),
                    FormalTerm::new(integer(1) / &xi, vec![FieldOp::Ext, FieldOp::Int], "A"),
                ]);
                let expected = FieldEquation::new(m, r as isize - 1, "A", lhs, rhs);
                let got = em::derive_equations(&cfg);
                tally.check(got.as_ref() == Ok(&expected), || format!("{m} r={r} m={mass} ξ={xi}: {got:?}"));
            }
        }
    }
    tally.finish()
}

fn gauge_configs() -> Vec<(&'static str, Rational, Rational)> {
    vec![
        ("feynman", integer(0), integer(1)),
        ("feynman+proca", integer(2), integer(1)),
        ("generic", integer(1), rational(1, 3)),
        ("generic-massless", integer(0), integer(2)),
    ]
}

fn wave_form_agreement(seed: u64, trials: usize) -> PropertyResult {
    let name = "em.wave_form_agreement";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    let mut c = 0;
    for m in metrics_up_to(4) {
        for r in 1..=m.dim() {
            for (label, mass, xi) in gauge_configs() {
                c += 1;
                let cfg = MaxwellConfig::new(m, r)
                    .and_then(|x| x.with_mass(mass.clone()))
                    .and_then(|x| x.with_xi(xi.clone()))
                    .expect("valid parameters");
                let (derived, wave) = match (em::derive_equations(&cfg), em::wave_form(&cfg)) {
                    (Ok(d), Ok(w)) => (d, w),
                    (d, w) => {
                        tally.check(false, || format!("{m} r={r} {label}: {d:?} / {w:?}"));
                        continue;
                    }
                };
                for t in 0..trials.min(10) {
                    let mut rng = FieldRng::for_trial(seed, stream(c, t));
                    let bindings = em::random_bindings(&cfg, &mut rng, MAX_DEGREE, t);
                    let agree = derived
                        .residual(&bindings)
                        .and_then(|d| Ok(d == wave.residual(&bindings)?));
                    tally.check_result(agree, || format!("{m} r={r} {label} trial {t}: {derived} vs {wave}"));
                }
            }
        }
    }
    tally.finish()
}

fn gauge_invariance(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("em.gauge_invariance");
    for_calculus_fields(seed, tally.name, trials, |m| (1..=m.dim()).collect(), |rng, m, r, t| {
        let a = rng.field_case(m, r - 1, MAX_DEGREE, t);
        let shift = rng.constant_field(m, r - 1);
        let g = (r >= 2).then(|| rng.field(m, r - 2, MAX_DEGREE));
        let check = || -> crate::Result<bool> {
            let moved = em::gauge_transform(&a, &shift, g.as_ref())?;
            Ok(em::field_from_potential(&moved, r)? == em::field_from_potential(&a, r)?)
        };
        tally.check_result(check(), || format!("{m} r={r}: A = {a}"));
    });
    tally.finish()
}

fn dual_theory(seed: u64, trials: usize) -> PropertyResult {
    let name = "em.dual_theory";
    let mut tally = Tally::new(name);
    let seed = property_seed(seed, name);
    for (c, m) in metrics_up_to(4).into_iter().enumerate() {
        for s in 1..=m.dim() {
            let (nonhom, hom) = match em::dual_theory(m, s) {
                Ok(pair) => pair,
                Err(e) => {
                    tally.check(false, || format!("{m} s={s}: error {e}"));
                    continue;
                }
            };
            let expected = FieldEquation::new(
                m,
                s as isize,
                "Abar",
                FormalExpr::chain(vec![FieldOp::Ext, FieldOp::Int], "Abar"),
                FormalExpr::chain(vec![], "Jbar"),
            );
            tally.check(nonhom == expected, || format!("{m} s={s}: derived {nonhom}"));
            for t in 0..trials.min(10) {
                let mut rng = FieldRng::for_trial(seed, stream(c * 32 + s, t));
                let bindings: Bindings = [("Abar".to_string(), rng.field_case(m, s, MAX_DEGREE, t))].into();
                tally.check_result(hom.holds(&bindings), || format!("{m} s={s}: ∂⌋F̄ ≠ 0 for Ā = {}", bindings["Abar"]));
            }
        }
    }
    tally.finish()
}

/// `∂⌋Ā = (−1)^{s+1}(Ā⌊∂)`.
fn right_interior_sign(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("em.right_interior_sign");
    for_calculus_fields(seed, tally.name, trials, all_grades, |rng, m, s, t| {
        let a = rng.field_case(m, s, MAX_DEGREE, t);
        let right = em::right_int_deriv(&a).scale_rational(&sign_rational(Sign::parity(s + 1)));
        let left = int_deriv(&a);
        tally.check(left == right, || format!("{m} s={s}: ∂⌋Ā = {left}, signed Ā⌊∂ = {right}"));
    });
    tally.finish()
}

/// `J = ∂⌋(∂∧A)` implies `∂⌋J = 0`.
fn continuity(seed: u64, trials: usize) -> PropertyResult {
    let mut tally = Tally::new("em.continuity");
    for_calculus_fields(seed, tally.name, trials, |m| (1..=m.dim()).collect(), |rng, m, r, t| {
        let a = rng.field_case(m, r - 1, MAX_DEGREE, t);
        let cfg = MaxwellConfig::new(m, r).expect("r in range");
        let check = || -> crate::Result<bool> {
            let eq = em::derive_equations(&cfg)?;
            let bindings: Bindings = [("A".to_string(), a.clone())].into();
            let j = eq.lhs.evaluate(m, Shape::Vector(r as isize - 1), &bindings)?.into_vector()?;
            Ok(int_deriv(&j).is_zero())
        };
        tally.check_result(check(), || format!("{m} r={r}: A = {a}"));
    });
    tally.finish()
}

fn polarization_count(_seed: u64, _trials: usize) -> PropertyResult {
    let mut tally = Tally::new("em.polarization_count");
    // Pascal's triangle up to row 14.
    let mut pascal = vec![vec![1u64]];
    for row in 1..=14 {
        let prev: &Vec<u64> = &pascal[row - 1];
        let mut next = vec![1u64; row + 1];
        for i in 1..row {
            next[i] = prev[i - 1] + prev[i];
        }
        pascal.push(next);
    }
    for k in 1..=8 {
        for n in 1..=8 {
            for r in 1..=k + n {
                let row = k + n - 2;
                let expected = pascal[row].get(r - 1).copied().unwrap_or(0);
                let got = em::polarization_count(k, n, r);
                tally.check(got == Ok(expected), || format!("({k},{n},{r}): {got:?}, expected {expected}"));
            }
        }
    }
    tally.check(em::polarization_count(1, 3, 2) == Ok(2), || "(1,3,2) must give 2".into());
    tally.finish()
}
