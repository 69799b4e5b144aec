//! Structured outcome of a single inequality or identity check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::poly::C64;

/// A point where the check is tightest, with the local value of the
/// measured quantity and its local margin `bound - value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: [f64; 2],
    pub value: f64,
    pub margin: f64,
}

impl Witness {
    pub fn new(point: C64, value: f64, bound: f64) -> Self {
        Self {
            point: [point.re, point.im],
            value,
            margin: bound - value,
        }
    }
}

/// Result of a check.
///
/// `pass` holds iff `measured <= bound + tol * tol_scale`. Inequalities in
/// ratio form use `tol_scale = bound`; additive forms (bound zero) and
/// identities carry an explicit scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub input_digest: String,
    pub measured: f64,
    pub bound: f64,
    pub margin: f64,
    pub tol: f64,
    pub tol_scale: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn new(
        check_id: &str,
        input_digest: String,
        measured: f64,
        bound: f64,
        tol: f64,
        tol_scale: f64,
    ) -> Self {
        let mut r = Self {
            check_id: check_id.to_string(),
            input_digest,
            measured,
            bound,
            margin: 0.0,
            tol,
            tol_scale,
            pass: false,
            witnesses: Vec::new(),
            extras: BTreeMap::new(),
            input: None,
        };
        r.settle();
        r
    }

    /// Ratio-form report: `tol_scale = |bound|`.
    pub fn relative(check_id: &str, digest: String, measured: f64, bound: f64, tol: f64) -> Self {
        Self::new(check_id, digest, measured, bound, tol, bound.abs())
    }

    fn settle(&mut self) {
        self.margin = self.bound - self.measured;
        self.pass = self.measured.is_finite()
            && self.bound.is_finite()
            && self.measured <= self.bound + self.tol * self.tol_scale;
    }

    /// Margin divided by the tolerance scale; invariant under rescaling the
    /// input for every check.
    pub fn relative_margin(&self) -> f64 {
        if self.tol_scale > 0.0 {
            self.margin / self.tol_scale
        } else {
            self.margin
        }
    }

    pub fn with_witnesses(mut self, mut w: Vec<Witness>) -> Self {
        w.sort_by(|a, b| a.margin.total_cmp(&b.margin));
        self.witnesses = w;
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }

    /// Multiplies the bound by `factor` (a harness self-test: with
    /// `factor < 1` tight checks must fail).
    pub fn scale_bound(&mut self, factor: f64) {
        self.bound *= factor;
        for w in &mut self.witnesses {
            w.margin = self.bound - w.value;
        }
        self.settle();
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Hex SHA-256 of the compact JSON serialization of `value`.
pub fn digest<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("input serializes");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rule_and_margin() {
        let r = VerificationReport::relative("x", String::new(), 2.0, 2.0, 1e-8);
        assert!(r.pass);
        assert_eq!(r.margin, 0.0);
        let r = VerificationReport::relative("x", String::new(), 2.0 + 1e-9, 2.0, 1e-8);
        assert!(r.pass);
        let r = VerificationReport::relative("x", String::new(), 2.1, 2.0, 1e-8);
        assert!(!r.pass);
        assert!((r.margin + 0.1).abs() < 1e-15);
        let r = VerificationReport::relative("x", String::new(), f64::NAN, 2.0, 1e-8);
        assert!(!r.pass);
    }

    #[test]
    fn shrinking_the_bound_fails_equality() {
        let mut r = VerificationReport::relative("x", String::new(), 3.0, 3.0, 1e-8);
        r.scale_bound(0.99);
        assert!(!r.pass);
        assert!(r.margin < 0.0);
    }

    #[test]
    fn witnesses_sorted_by_margin() {
        let r =
            VerificationReport::relative("x", String::new(), 1.0, 1.0, 0.0).with_witnesses(vec![
                Witness::new(C64::new(1.0, 0.0), 0.5, 1.0),
                Witness::new(C64::new(0.0, 1.0), 1.0, 1.0),
            ]);
        assert_eq!(r.witnesses[0].margin, 0.0);
        assert_eq!(r.witnesses[1].margin, 0.5);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(&[1, 2]), digest(&[1, 2]));
        assert_ne!(digest(&[1, 2]), digest(&[2, 1]));
        assert_eq!(digest("").len(), 64);
    }
}
