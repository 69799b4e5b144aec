//! Seeded generators for structured and random polynomials.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::poly::{AlgebraicPoly, ExponentialSum, TrigPoly, C64};

/// Polynomial families used by the checks and the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PolyKind {
    /// Algebraic, i.i.d. standard complex Gaussian coefficients.
    GaussianRandom,
    /// Algebraic, coefficients `e^{i theta_k}` with uniform phases.
    UnimodularRandom,
    /// Trigonometric `e^{inx}`.
    ExtremalExp,
    /// Algebraic `((z + rho) / (1 + rho))^n`.
    LaxExtremal { rho: f64 },
    /// Algebraic with `n` sampled roots of modulus in `[rho, 2.5 rho]`.
    RootsOutside { rho: f64 },
}

/// Output of [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Alg(AlgebraicPoly),
    Trig(TrigPoly),
}

impl Generated {
    pub fn into_alg(self) -> Option<AlgebraicPoly> {
        match self {
            Generated::Alg(p) => Some(p),
            Generated::Trig(_) => None,
        }
    }

    pub fn into_trig(self) -> Option<TrigPoly> {
        match self {
            Generated::Trig(t) => Some(t),
            Generated::Alg(_) => None,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho.is_finite() && rho >= 1.0) {
        return Err(invalid(format!("rho must be >= 1, got {rho}")));
    }
    Ok(())
}

/// Deterministic for fixed `(kind, n, seed)`.
pub fn generate(kind: PolyKind, n: usize, seed: u64) -> Result<Generated> {
    let mut rng = rng_from_seed(seed);
    Ok(match kind {
        PolyKind::GaussianRandom => Generated::Alg(random_alg(n, &mut rng)),
        PolyKind::UnimodularRandom => Generated::Alg(random_unimodular(n, &mut rng)),
        PolyKind::ExtremalExp => Generated::Trig(TrigPoly::exponential(n)),
        PolyKind::LaxExtremal { rho } => Generated::Alg(lax_extremal(n, rho)?),
        PolyKind::RootsOutside { rho } => Generated::Alg(roots_outside(n, rho, &mut rng)?),
    })
}

pub fn random_alg<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraicPoly {
    AlgebraicPoly::new((0..=n).map(|_| gaussian_c64(rng)).collect())
        .expect("nonempty coefficient vector")
}

pub fn random_unimodular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> AlgebraicPoly {
    AlgebraicPoly::new(
        (0..=n)
            .map(|_| C64::cis(rng.random_range(0.0..2.0 * PI)))
            .collect(),
    )
    .expect("nonempty coefficient vector")
}

/// Complex Gaussian coefficients `a_{-n}..a_n`.
pub fn random_trig<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TrigPoly {
    TrigPoly::new((0..2 * n + 1).map(|_| gaussian_c64(rng)).collect())
        .expect("odd coefficient vector")
}

/// Real-valued trigonometric polynomial (`a_{-k} = conj(a_k)`).
pub fn random_real_trig<R: Rng + ?Sized>(n: usize, rng: &mut R) -> TrigPoly {
    let mut coeffs = vec![C64::new(0.0, 0.0); 2 * n + 1];
    coeffs[n] = C64::new(StandardNormal.sample(rng), 0.0);
    for k in 1..=n {
        let a = gaussian_c64(rng);
        coeffs[n + k] = a;
        coeffs[n - k] = a.conj();
    }
    TrigPoly::new(coeffs).expect("odd coefficient vector")
}

pub fn lax_extremal(n: usize, rho: f64) -> Result<AlgebraicPoly> {
    check_rho(rho)?;
    let base = AlgebraicPoly::from_real(&[rho / (1.0 + rho), 1.0 / (1.0 + rho)])?;
    let mut p = AlgebraicPoly::from_real(&[1.0])?;
    for _ in 0..n {
        p = p.mul(&base);
    }
    Ok(p)
}

/// Random leading coefficient times `prod (z - z_j)` with
/// `|z_j| = rho (1 + 1.5 u_j)`, `u_j` uniform in `[0, 1)`.
pub fn roots_outside<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Result<AlgebraicPoly> {
    check_rho(rho)?;
    let roots: Vec<C64> = (0..n)
        .map(|_| {
            let r = rho * (1.0 + 1.5 * rng.random::<f64>());
            C64::from_polar(r, rng.random_range(0.0..2.0 * PI))
        })
        .collect();
    let lead = gaussian_c64(rng);
    Ok(AlgebraicPoly::from_roots(lead, &roots))
}

/// Random roots at distance at least `gap` from the unit circle, moduli in
/// `[0.2, 2.5]`.
pub fn roots_off_circle<R: Rng + ?Sized>(n: usize, gap: f64, rng: &mut R) -> AlgebraicPoly {
    let roots: Vec<C64> = (0..n)
        .map(|_| loop {
            let r = rng.random_range(0.2..2.5);
            if (r - 1.0f64).abs() >= gap {
                break C64::from_polar(r, rng.random_range(0.0..2.0 * PI));
            }
        })
        .collect();
    AlgebraicPoly::from_roots(gaussian_c64(rng), &roots)
}

/// `count` random frequencies in `[-lambda, lambda]` with Gaussian amplitudes.
pub fn random_exponential_sum<R: Rng + ?Sized>(
    count: usize,
    lambda: f64,
    rng: &mut R,
) -> Result<ExponentialSum> {
    let mut terms: Vec<(C64, f64)> = Vec::with_capacity(count);
    while terms.len() < count {
        let l = rng.random_range(-lambda..=lambda);
        if terms.iter().all(|t| t.1 != l) {
            terms.push((gaussian_c64(rng), l));
        }
    }
    ExponentialSum::new(terms, lambda)
}
