//! Differentiation as convolution with a discrete measure.
//!
//! For trigonometric polynomials of degree `n` the Riesz measure has `2n`
//! atoms at `(2r - 1) pi / (2n)` and total variation exactly `n`, and
//! `T' = T * mu_n` holds identically. For exponential sums of bandwidth
//! `lambda` the Boas measure has atoms at odd multiples of `pi / (2 lambda)`
//! and total variation `lambda`; it is infinite, so it is stored truncated
//! together with the variation of the omitted atoms.

use std::f64::consts::PI;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::poly::{ExponentialSum, TrigPoly, C64};

/// Default odd truncation order for the Boas series.
pub const DEFAULT_BOAS_TRUNCATION: usize = 401;

/// A finite list of weighted point masses `sum c_r delta_{t_r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<(C64, f64)>,
    total_variation: f64,
    truncation_tail: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(C64, f64)>, truncation_tail: f64) -> Result<Self> {
        if !(truncation_tail >= 0.0 && truncation_tail.is_finite()) {
            return Err(invalid("truncation tail must be finite and nonnegative"));
        }
        let total_variation = atoms.iter().map(|a| a.0.norm()).sum();
        Ok(Self {
            atoms,
            total_variation,
            truncation_tail,
        })
    }

    pub fn atoms(&self) -> &[(C64, f64)] {
        &self.atoms
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.1).collect()
    }

    pub fn total_variation(&self) -> f64 {
        self.total_variation
    }

    /// Bound on the total variation of the atoms that were not stored.
    pub fn truncation_tail(&self) -> f64 {
        self.truncation_tail
    }

    /// `(T * mu)(x) = sum c_r T(x + t_r)`.
    pub fn convolve(&self, t: &TrigPoly, x: f64) -> C64 {
        self.atoms.iter().map(|&(c, s)| c * t.eval(x + s)).sum()
    }

    /// Same convolution applied to an arbitrary function of a real variable.
    pub fn convolve_fn<F: Fn(f64) -> C64>(&self, f: F, x: f64) -> C64 {
        self.atoms.iter().map(|&(c, s)| c * f(x + s)).sum()
    }
}

/// `{"atoms": [[re, im, t], ...], "tail": tau}`.
impl Serialize for DiscreteMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            atoms: Vec<[f64; 3]>,
            tail: f64,
        }
        Repr {
            atoms: self.atoms.iter().map(|&(c, t)| [c.re, c.im, t]).collect(),
            tail: self.truncation_tail,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteMeasure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            atoms: Vec<[f64; 3]>,
            #[serde(default)]
            tail: f64,
        }
        let r = Repr::deserialize(d)?;
        let atoms = r
            .atoms
            .into_iter()
            .map(|[re, im, t]| (C64::new(re, im), t))
            .collect();
        DiscreteMeasure::new(atoms, r.tail).map_err(D::Error::custom)
    }
}

/// The node set `E_n = {(2r - 1) pi / (2n) : 1 <= r <= 2n}`.
pub fn riesz_nodes(n: usize) -> Vec<f64> {
    (1..=2 * n)
        .map(|r| (2 * r - 1) as f64 * PI / (2 * n) as f64)
        .collect()
}

/// The `2n`-atom measure with `T' = T * mu_n` for every trigonometric
/// polynomial of degree at most `n`:
/// `c_r = (-1)^{r+1} / (4n sin^2(x_r / 2))`.
pub fn riesz_measure(n: usize) -> Result<DiscreteMeasure> {
    if n < 1 {
        return Err(invalid("Riesz measure needs n >= 1"));
    }
    let atoms = riesz_nodes(n)
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let s = half_node_sin(n, i + 1);
            (C64::new(sign / (4.0 * n as f64 * s * s), 0.0), x)
        })
        .collect();
    DiscreteMeasure::new(atoms, 0.0)
}

/// `(1 / (4 n^2)) sum_{r=1}^{2n} 1 / sin^2((2r - 1) pi / (4n))`, which
/// equals one for every `n` (the total variation of `mu_n` divided by `n`).
///
/// The relation is also quoted with prefactor `1 / (2 n^2)`. That form gives
/// two, not one, and contradicts `sum |c_r| = n`.
pub fn riesz_weight_identity(n: usize) -> f64 {
    let s: f64 = (1..=2 * n)
        .map(|r| {
            let v = half_node_sin(n, r);
            1.0 / (v * v)
        })
        .sum();
    s / (4.0 * (n * n) as f64)
}

/// `sin((2r - 1) pi / (4n))`, reflected into `[0, pi/2]` so that nodes near
/// `2 pi` keep full relative accuracy.
fn half_node_sin(n: usize, r: usize) -> f64 {
    let m = (2 * r - 1).min(4 * n - (2 * r - 1));
    (m as f64 * PI / (4 * n) as f64).sin()
}

/// `(8 / pi^2) sum_{r=1}^{terms} (2r - 1)^{-2}`, tending to one.
pub fn odd_reciprocal_square_sum(terms: usize) -> f64 {
    // Summed from the small end to keep the rounding error flat.
    let s: f64 = (1..=terms)
        .rev()
        .map(|r| {
            let k = (2 * r - 1) as f64;
            1.0 / (k * k)
        })
        .sum();
    8.0 / (PI * PI) * s
}

/// Boas weights `d_k = 4 lambda (chi_hat(k))^2` for `k != 0`, with
/// `chi_hat(k) = sin(k pi / 2) / (k pi)`: `4 lambda / (k^2 pi^2)` for odd `k`
/// and zero for even `k`.
pub fn boas_weight(lambda: f64, k: i64) -> f64 {
    if k == 0 {
        lambda
    } else if k % 2 == 0 {
        0.0
    } else {
        4.0 * lambda / ((k * k) as f64 * PI * PI)
    }
}

/// The Boas measure of bandwidth `lambda`, truncated to odd `|k| <= k_max`:
/// atoms `c_k = i d_k i^{-k}` at `t_k = k pi / (2 lambda)`.
pub fn boas_measure(lambda: f64, k_max: usize) -> Result<DiscreteMeasure> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(invalid(format!("bandwidth must be positive, got {lambda}")));
    }
    if k_max.is_multiple_of(2) {
        return Err(invalid(format!(
            "truncation order must be odd, got {k_max}"
        )));
    }
    let mut atoms = Vec::with_capacity(k_max + 1);
    for k in (-(k_max as i64)..=k_max as i64).filter(|k| k % 2 != 0) {
        // i * i^{-k}: i^{-k} cycles 1, -i, -1, i as k mod 4 = 0, 1, 2, 3.
        let i_pow = match k.rem_euclid(4) {
            1 => C64::new(0.0, -1.0),
            _ => C64::new(0.0, 1.0),
        };
        let c = C64::new(0.0, 1.0) * i_pow * boas_weight(lambda, k);
        atoms.push((c, k as f64 * PI / (2.0 * lambda)));
    }
    let mut m = DiscreteMeasure::new(atoms, 0.0)?;
    // The full series has total variation exactly lambda.
    let tv = m.total_variation;
    let mut tail = (lambda - tv).max(0.0);
    while tv + tail < lambda {
        tail = f64::from_bits(tail.to_bits() + 1);
    }
    m.truncation_tail = tail;
    Ok(m)
}

/// Derivative of an exponential sum by the truncated Boas series.
#[derive(Debug, Clone)]
pub struct BoasDerivative {
    f: ExponentialSum,
    measure: DiscreteMeasure,
    error_bound: f64,
}

impl BoasDerivative {
    /// Approximation of `f'(x)`.
    pub fn eval(&self, x: f64) -> C64 {
        self.measure.convolve_fn(|s| self.f.eval(s), x)
    }

    /// Uniform bound on `|eval(x) - f'(x)|`: the truncated variation times
    /// `sum |a_j|`, plus a rounding allowance.
    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }
}

/// Builds the Boas approximation of `f'` for `f` of bandwidth at most
/// `f.bandwidth()`.
pub fn boas_derivative(f: &ExponentialSum, k_max: usize) -> Result<BoasDerivative> {
    let lambda = f.bandwidth();
    if let Some(&(_, l)) = f.terms().iter().find(|t| t.1.abs() > lambda) {
        return Err(Error::BandwidthExceeded {
            frequency: l,
            bandwidth: lambda,
        });
    }
    let measure = boas_measure(lambda, k_max)?;
    let sup_estimate = f.coefficient_l1();
    let rounding =
        16.0 * f64::EPSILON * (k_max as f64 + 1.0) * measure.total_variation() * sup_estimate;
    Ok(BoasDerivative {
        error_bound: measure.truncation_tail() * sup_estimate + rounding,
        f: f.clone(),
        measure,
    })
}
