//! Algebraic and trigonometric polynomials with complex coefficients, plus
//! finite exponential sums.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::roots::{aberth, RootSet};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// `P(z) = a_0 + a_1 z + ... + a_n z^n` with a declared degree `n`.
///
/// The declared degree is an upper bound: trailing coefficients may vanish.
/// Inequality constants use the declared degree, never the effective one.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicPoly {
    coeffs: Vec<C64>,
}

impl AlgebraicPoly {
    /// Builds a polynomial whose declared degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(invalid("coefficient vector is empty"));
        }
        Ok(Self { coeffs })
    }

    /// Pads `coeffs` with zeros up to `degree + 1` entries.
    pub fn with_degree(mut coeffs: Vec<C64>, degree: usize) -> Result<Self> {
        if coeffs.len() > degree + 1 {
            if coeffs[degree + 1..].iter().any(|c| *c != ZERO) {
                return Err(invalid(format!(
                    "nonzero coefficient beyond declared degree {degree}"
                )));
            }
            coeffs.truncate(degree + 1);
        }
        coeffs.resize(degree + 1, ZERO);
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    /// `c z^n`.
    pub fn monomial(n: usize, c: C64) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = c;
        Self { coeffs }
    }

    /// `leading * prod (z - r)`.
    pub fn from_roots(leading: C64, roots: &[C64]) -> Self {
        let mut coeffs = vec![leading];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Largest `k` with `a_k != 0`; `None` for the zero polynomial.
    pub fn effective_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.effective_degree().is_none()
    }

    /// Coefficient of the effective degree (zero for the zero polynomial).
    pub fn leading(&self) -> C64 {
        self.effective_degree().map_or(ZERO, |k| self.coeffs[k])
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(P(z), P'(z))` in a single Horner pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Coefficient `k` is `(k+1) a_{k+1}`; declared degree `max(0, n-1)`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![ZERO] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self { coeffs }
    }

    /// `Q(z) = z^n conj(P(1/conj z))`, i.e. `q_k = conj(a_{n-k})` with `n`
    /// the declared degree. `|Q| = |P|` on the unit circle.
    pub fn reciprocal(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// `z -> P(r z)`, coefficients `a_k r^k`.
    pub fn dilate(&self, r: f64) -> Self {
        let mut rk = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| {
                let out = a * rk;
                rk *= r;
                out
            })
            .collect();
        Self { coeffs }
    }

    /// Product; declared degree is the sum of declared degrees.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// `x -> P(e^{ix})` as an analytic trigonometric polynomial of the same
    /// declared degree.
    pub fn to_trig(&self) -> TrigPoly {
        let n = self.degree();
        let mut coeffs = vec![ZERO; 2 * n + 1];
        coeffs[n..].copy_from_slice(&self.coeffs);
        TrigPoly { coeffs }
    }

    /// All roots of the effective-degree polynomial (Aberth–Ehrlich).
    pub fn roots(&self) -> Result<RootSet> {
        let eff = self.effective_degree().ok_or(Error::ZeroPolynomial)?;
        aberth(&self.coeffs[..=eff])
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `T(x) = sum_{k=-n}^{n} a_k e^{ikx}`, stored as `a_{-n}, ..., a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    coeffs: Vec<C64>,
}

impl TrigPoly {
    /// `coeffs` lists `a_{-n}..a_n`; its length must be odd.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(invalid(format!(
                "trigonometric coefficient vector has even length {}",
                coeffs.len()
            )));
        }
        Ok(Self { coeffs })
    }

    /// Builds from `(k, a_k)` pairs with declared degree `n`.
    pub fn from_terms(n: usize, terms: &[(i64, C64)]) -> Result<Self> {
        let mut coeffs = vec![ZERO; 2 * n + 1];
        for &(k, a) in terms {
            if k.unsigned_abs() as usize > n {
                return Err(invalid(format!("frequency {k} exceeds degree {n}")));
            }
            coeffs[(k + n as i64) as usize] += a;
        }
        Ok(Self { coeffs })
    }

    /// `e^{inx}`, the extremal polynomial for Bernstein's inequality.
    pub fn exponential(n: usize) -> Self {
        let mut coeffs = vec![ZERO; 2 * n + 1];
        coeffs[2 * n] = C64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// `cos(nx)`.
    pub fn cosine(n: usize) -> Self {
        let mut coeffs = vec![ZERO; 2 * n + 1];
        coeffs[0] += C64::new(0.5, 0.0);
        coeffs[2 * n] += C64::new(0.5, 0.0);
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// `a_k`, zero outside `-n..=n`.
    pub fn coeff(&self, k: i64) -> C64 {
        let n = self.degree() as i64;
        if k.abs() > n {
            ZERO
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Laurent evaluation `sum a_k z^k`, `z != 0`.
    pub fn eval_laurent(&self, z: C64) -> C64 {
        let n = self.degree() as i32;
        let lifted = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        lifted * z.powi(-n)
    }

    pub fn eval(&self, x: f64) -> C64 {
        let n = self.degree() as f64;
        let z = C64::cis(x);
        let lifted = self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c);
        lifted * C64::cis(-n * x)
    }

    /// Derivative in the real variable: coefficient `k` becomes `i k a_k`.
    pub fn derivative(&self) -> Self {
        let n = self.degree() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| a * C64::new(0.0, (j as i64 - n) as f64))
            .collect();
        Self { coeffs }
    }

    /// Complex derivative `sum k a_k z^{k-1}` of the Laurent polynomial.
    pub fn z_derivative_at(&self, z: C64) -> C64 {
        let n = self.degree() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, &a)| {
                let k = j as i64 - n;
                a * (k as f64) * z.powi((k - 1) as i32)
            })
            .sum()
    }

    /// `Q(z) = z^n T(z)`, an algebraic polynomial of declared degree `2n`.
    pub fn to_algebraic(&self) -> AlgebraicPoly {
        AlgebraicPoly {
            coeffs: self.coeffs.clone(),
        }
    }

    /// Inverse of [`AlgebraicPoly::to_trig`] for polynomials of odd length.
    pub fn from_algebraic_lift(q: &AlgebraicPoly) -> Result<Self> {
        Self::new(q.coeffs.clone())
    }

    /// Nonnegative-frequency part `a_0 + a_1 z + ... + a_n z^n`.
    pub fn analytic_part(&self) -> AlgebraicPoly {
        let n = self.degree();
        AlgebraicPoly {
            coeffs: self.coeffs[n..].to_vec(),
        }
    }

    /// `x -> T(x + a)`.
    pub fn shift(&self, a: f64) -> Self {
        let n = self.degree() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * C64::cis((j as i64 - n) as f64 * a))
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// `max_k |a_{-k} - conj(a_k)|`; zero exactly when `T` is real-valued.
    pub fn real_asymmetry(&self) -> f64 {
        let n = self.degree() as i64;
        (0..=n)
            .map(|k| (self.coeff(-k) - self.coeff(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// `f(x) = sum_j a_j e^{i lambda_j x}` with every `|lambda_j| <= bandwidth`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<(C64, f64)>,
    bandwidth: f64,
}

impl ExponentialSum {
    pub fn new(terms: Vec<(C64, f64)>, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(invalid(format!(
                "bandwidth must be positive, got {bandwidth}"
            )));
        }
        for (i, &(_, li)) in terms.iter().enumerate() {
            if !li.is_finite() {
                return Err(invalid("non-finite frequency"));
            }
            if li.abs() > bandwidth {
                return Err(Error::BandwidthExceeded {
                    frequency: li,
                    bandwidth,
                });
            }
            if terms[..i].iter().any(|&(_, lj)| lj == li) {
                return Err(invalid(format!("repeated frequency {li}")));
            }
        }
        Ok(Self { terms, bandwidth })
    }

    /// Bandwidth set to the largest `|lambda_j|` (or 1 for an empty or
    /// constant sum).
    pub fn with_tight_bandwidth(terms: Vec<(C64, f64)>) -> Result<Self> {
        let lam = terms.iter().map(|t| t.1.abs()).fold(0.0, f64::max);
        Self::new(terms, if lam > 0.0 { lam } else { 1.0 })
    }

    pub fn terms(&self) -> &[(C64, f64)] {
        &self.terms
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn eval(&self, x: f64) -> C64 {
        self.terms.iter().map(|&(a, l)| a * C64::cis(l * x)).sum()
    }

    pub fn derivative_at(&self, x: f64) -> C64 {
        self.terms
            .iter()
            .map(|&(a, l)| a * C64::new(0.0, l) * C64::cis(l * x))
            .sum()
    }

    /// `sum |a_j|`, an upper bound for `sup |f|`.
    pub fn coefficient_l1(&self) -> f64 {
        self.terms.iter().map(|t| t.0.norm()).sum()
    }
}
