//! JSON file formats.
//!
//! Polynomials: `{"type": "alg" | "trig", "degree": n, "coeffs": [[re, im], ...]}`
//! with `a_0..a_n` (alg) or `a_{-n}..a_n` (trig). Exponential sums:
//! `{"type": "expsum", "bandwidth": lambda, "terms": [[re, im, freq], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{AlgebraicPoly, ExponentialSum, TrigPoly, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolyFile {
    Alg {
        degree: usize,
        coeffs: Vec<[f64; 2]>,
    },
    Trig {
        degree: usize,
        coeffs: Vec<[f64; 2]>,
    },
    Expsum {
        bandwidth: f64,
        terms: Vec<[f64; 3]>,
    },
}

/// A parsed input: any of the three function classes.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Alg(AlgebraicPoly),
    Trig(TrigPoly),
    ExpSum(ExponentialSum),
}

fn to_pairs(c: &[C64]) -> Vec<[f64; 2]> {
    c.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(c: &[[f64; 2]]) -> Vec<C64> {
    c.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl From<&AlgebraicPoly> for PolyFile {
    fn from(p: &AlgebraicPoly) -> Self {
        PolyFile::Alg {
            degree: p.degree(),
            coeffs: to_pairs(p.coeffs()),
        }
    }
}

impl From<&TrigPoly> for PolyFile {
    fn from(t: &TrigPoly) -> Self {
        PolyFile::Trig {
            degree: t.degree(),
            coeffs: to_pairs(t.coeffs()),
        }
    }
}

impl From<&ExponentialSum> for PolyFile {
    fn from(f: &ExponentialSum) -> Self {
        PolyFile::Expsum {
            bandwidth: f.bandwidth(),
            terms: f.terms().iter().map(|&(a, l)| [a.re, a.im, l]).collect(),
        }
    }
}

impl From<&Polynomial> for PolyFile {
    fn from(p: &Polynomial) -> Self {
        match p {
            Polynomial::Alg(p) => p.into(),
            Polynomial::Trig(t) => t.into(),
            Polynomial::ExpSum(f) => f.into(),
        }
    }
}

impl TryFrom<PolyFile> for Polynomial {
    type Error = Error;

    fn try_from(f: PolyFile) -> Result<Self> {
        match f {
            PolyFile::Alg { degree, coeffs } => {
                if coeffs.len() != degree + 1 {
                    return Err(Error::Parse(format!(
                        "alg polynomial of degree {degree} needs {} coefficients, got {}",
                        degree + 1,
                        coeffs.len()
                    )));
                }
                Ok(Polynomial::Alg(AlgebraicPoly::new(from_pairs(&coeffs))?))
            }
            PolyFile::Trig { degree, coeffs } => {
                if coeffs.len() != 2 * degree + 1 {
                    return Err(Error::Parse(format!(
                        "trig polynomial of degree {degree} needs {} coefficients, got {}",
                        2 * degree + 1,
                        coeffs.len()
                    )));
                }
                Ok(Polynomial::Trig(TrigPoly::new(from_pairs(&coeffs))?))
            }
            PolyFile::Expsum { bandwidth, terms } => Ok(Polynomial::ExpSum(ExponentialSum::new(
                terms
                    .iter()
                    .map(|&[re, im, l]| (C64::new(re, im), l))
                    .collect(),
                bandwidth,
            )?)),
        }
    }
}

impl Polynomial {
    pub fn from_json(s: &str) -> Result<Self> {
        let f: PolyFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        f.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyFile::from(self)).expect("polynomial serializes")
    }
}
