//! Machine-readable form of a [`FieldEquation`].
//!
//! `ops` lists operator names outermost first, so `["int", "ext"]` on
//! symbol `A` is `∂⌋(∂∧A)`. Coefficients are rationals in lowest terms.

use extcalc::scalar::{format_rational, parse_rational};
use extcalc::variational::{FieldEquation, FieldOp, FormalExpr, FormalTerm};
use extcalc::{Error, Metric, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricDoc {
    pub k: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub ops: Vec<String>,
    pub symbol: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub metric: MetricDoc,
    pub grade: isize,
    pub field: String,
    pub lhs: Vec<TermDoc>,
    pub rhs: Vec<TermDoc>,
}

fn side_doc(expr: &FormalExpr) -> Vec<TermDoc> {
    expr.terms()
        .iter()
        .map(|t| TermDoc {
            coeff: format_rational(&t.coeff),
            ops: t.ops.iter().map(|op| op.name().to_string()).collect(),
            symbol: t.symbol.clone(),
        })
        .collect()
}

fn side_expr(terms: &[TermDoc]) -> Result<FormalExpr> {
    let mut out = FormalExpr::zero();
    for t in terms {
        let coeff = parse_rational(&t.coeff).ok_or_else(|| Error::Domain(format!("invalid coefficient {:?}", t.coeff)))?;
        let ops = t
            .ops
            .iter()
            .map(|name| FieldOp::from_name(name).ok_or_else(|| Error::Domain(format!("unknown operator {name:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(FormalTerm::new(coeff, ops, t.symbol.clone()));
    }
    Ok(out)
}

impl EquationDoc {
    pub fn from_equation(eq: &FieldEquation) -> EquationDoc {
        EquationDoc {
            metric: MetricDoc {
                k: eq.metric.k(),
                n: eq.metric.n(),
            },
            grade: eq.grade,
            field: eq.field.clone(),
            lhs: side_doc(&eq.lhs),
            rhs: side_doc(&eq.rhs),
        }
    }

    pub fn to_equation(&self) -> Result<FieldEquation> {
        Ok(FieldEquation::new(
            Metric::new(self.metric.k, self.metric.n)?,
            self.grade,
            &self.field,
            side_expr(&self.lhs)?,
            side_expr(&self.rhs)?,
        ))
    }

    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data always serializes")
    }

    pub fn from_json(text: &str) -> Result<EquationDoc> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use extcalc::em::{derive_equations, MaxwellConfig};
    use extcalc::scalar::rational;

    #[test]
    fn maxwell_document() {
        let eq = derive_equations(&MaxwellConfig::new(Metric::new(1, 3).unwrap(), 2).unwrap()).unwrap();
        let doc = EquationDoc::from_equation(&eq);
        assert_eq!(
            doc.to_json(),
            r#"{"metric":{"k":1,"n":3},"grade":1,"field":"A","lhs":[{"coeff":"1","ops":["int","ext"],"symbol":"A"}],"rhs":[{"coeff":"1","ops":[],"symbol":"J"}]}"#
        );
        assert_eq!(EquationDoc::from_json(&doc.to_json()).unwrap().to_equation().unwrap(), eq);
    }

    #[test]
    fn round_trip_with_fractions() {
        let cfg = MaxwellConfig::new(Metric::new(2, 2).unwrap(), 3)
            .unwrap()
            .with_mass(rational(2, 3))
            .unwrap()
            .with_xi(rational(5, 7))
            .unwrap();
        for eq in [derive_equations(&cfg).unwrap(), extcalc::em::wave_form(&cfg).unwrap()] {
            let doc = EquationDoc::from_equation(&eq);
            assert_eq!(EquationDoc::from_json(&doc.to_json()).unwrap(), doc);
            assert_eq!(doc.to_equation().unwrap(), eq);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{"metric":{"k":1,"n":3},"grade":1,"field":"A","lhs":[{"coeff":"x","ops":[],"symbol":"A"}],"rhs":[]}"#;
        assert!(EquationDoc::from_json(bad).unwrap().to_equation().is_err());
        let bad_op = bad.replace("\"x\"", "\"1\"").replace("\"ops\":[]", "\"ops\":[\"curl\"]");
        assert!(EquationDoc::from_json(&bad_op).unwrap().to_equation().is_err());
        assert!(EquationDoc::from_json("{").is_err());
    }
}
