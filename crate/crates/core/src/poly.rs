//! Multivariate polynomials in the coordinates `x_0 … x_{k+n-1}` with exact
//! rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::blade::CanonicalText;
use crate::index::MAX_DIM;
use crate::scalar::{format_rational, integer, Coeff, Rational};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then by the exponent of `x_0`, `x_1`, ...
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; MAX_DIM]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_DIM]);

    pub fn var(i: usize) -> Monomial {
        let mut exps = [0; MAX_DIM];
        exps[i] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exponents: &[u8]) -> Monomial {
        assert!(exponents.len() <= MAX_DIM);
        let mut exps = [0; MAX_DIM];
        exps[..exponents.len()].copy_from_slice(exponents);
        Monomial(exps)
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u8; MAX_DIM] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// One past the highest variable index that occurs.
    pub fn bound(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.0;
        for (e, &o) in exps.iter_mut().zip(other.0.iter()) {
            *e = e.checked_add(o).expect("monomial exponent overflow");
        }
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.bound()])
    }
}

/// Polynomial with rational coefficients; no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyScalar {
    pub fn zero() -> PolyScalar {
        PolyScalar::default()
    }

    pub fn constant(value: Rational) -> PolyScalar {
        PolyScalar::monomial(Monomial::ONE, value)
    }

    /// The coordinate `x_i`.
    pub fn var(i: usize) -> PolyScalar {
        PolyScalar::monomial(Monomial::var(i), integer(1))
    }

    pub fn monomial(monomial: Monomial, coeff: Rational) -> PolyScalar {
        let mut out = PolyScalar::zero();
        out.add_term(monomial, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// One past the highest variable index present.
    pub fn bound(&self) -> usize {
        self.terms.keys().map(Monomial::bound).max().unwrap_or(0)
    }

    /// Exact partial derivative `∂_i`.
    pub fn derivative(&self, i: usize) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut lowered = *m;
            lowered.0[i] -= 1;
            out.add_term(lowered, c * integer(e as i64));
        }
        out
    }

    /// Evaluates at a rational point; missing coordinates count as zero.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).cloned().unwrap_or_else(Rational::zero);
                    term *= num_traits::pow(x, e as usize);
                }
            }
            sum += term;
        }
        sum
    }

    fn monomial_text(monomial: &Monomial) -> String {
        let mut factors = Vec::new();
        for (i, &e) in monomial.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{i}")),
                _ => factors.push(format!("x{i}^{e}")),
            }
        }
        factors.join(" ^ ")
    }

    /// Magnitude text of a single term, without its sign.
    fn term_text(monomial: &Monomial, magnitude: &Rational) -> String {
        if *monomial == Monomial::ONE {
            return format_rational(magnitude);
        }
        let vars = PolyScalar::monomial_text(monomial);
        if *magnitude == integer(1) {
            vars
        } else {
            format!("{} ^ {vars}", format_rational(magnitude))
        }
    }
}

impl Coeff for PolyScalar {
    fn zero() -> Self {
        PolyScalar::zero()
    }

    fn one() -> Self {
        PolyScalar::constant(integer(1))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.plus_assign(other);
        out
    }

    fn plus_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = PolyScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn negated(&self) -> Self {
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    fn from_rational(value: &Rational) -> Self {
        PolyScalar::constant(value.clone())
    }

    fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return PolyScalar::zero();
        }
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c * factor)).collect(),
        }
    }
}

impl fmt::Display for PolyScalar {
    /// Terms in descending graded-lex order, e.g. `x0^2 - 3/2 ^ x0 ^ x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let text = PolyScalar::term_text(m, &c.abs());
            match (n, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&text);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl CanonicalText for PolyScalar {
    fn text_parts(&self) -> (bool, String, bool, bool) {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let negative = c.is_negative();
            let magnitude = c.abs();
            let unit = *m == Monomial::ONE && magnitude == integer(1);
            (negative, PolyScalar::term_text(m, &magnitude), unit, false)
        } else {
            (false, self.to_string(), false, true)
        }
    }

    fn standalone_text(&self) -> String {
        self.to_string()
    }
}
