//! Simultaneous root finding by the Aberth–Ehrlich iteration.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{AlgebraicPoly, C64};

const MAX_ITERATIONS: usize = 200;
const CORRECTION_TOL: f64 = 1e-14;
/// Aberth sweeps with double-double evaluation after the plain iteration
/// stalls.
const POLISH_ITERATIONS: usize = 40;
/// Roots closer than this (relative) are reported as one multiple root.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Roots of a polynomial together with the reconstruction residual
/// `max_k |lead * prod(z - z_j) - P|_k / max_k |a_k|`.
#[derive(Debug, Clone, Serialize)]
pub struct RootSet {
    roots: Vec<C64>,
    #[serde(skip)]
    coeffs: Vec<C64>,
    leading: C64,
    residual: f64,
    iterations: usize,
    converged: bool,
}

/// A group of numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootCluster {
    pub center: C64,
    pub multiplicity: usize,
}

impl RootSet {
    pub fn roots(&self) -> &[C64] {
        &self.roots
    }

    pub fn leading(&self) -> C64 {
        self.leading
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn min_modulus(&self) -> Option<f64> {
        self.roots.iter().map(|z| z.norm()).reduce(f64::min)
    }

    /// Smallest distance from a root to the unit circle.
    pub fn min_circle_distance(&self) -> Option<f64> {
        self.roots
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .reduce(f64::min)
    }

    /// Single-linkage grouping of roots within `tol * (1 + |z|)`.
    pub fn clusters(&self, tol: f64) -> Vec<RootCluster> {
        let n = self.roots.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(label: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while label[r] != r {
                r = label[r];
            }
            label[i] = r;
            r
        }
        for i in 0..n {
            for j in 0..i {
                let zi = self.roots[i];
                let zj = self.roots[j];
                if (zi - zj).norm() <= tol * (1.0 + zi.norm().max(zj.norm())) {
                    let a = find(&mut label, i);
                    let b = find(&mut label, j);
                    label[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<(usize, C64, usize)> = Vec::new();
        for i in 0..n {
            let r = find(&mut label, i);
            match out.iter_mut().find(|c| c.0 == r) {
                Some(c) => {
                    c.1 += self.roots[i];
                    c.2 += 1;
                }
                None => out.push((r, self.roots[i], 1)),
            }
        }
        out.into_iter()
            .map(|(_, sum, m)| {
                let mean = sum / m as f64;
                RootCluster {
                    center: refine_multiple(&self.coeffs, mean, m, tol * (1.0 + mean.norm())),
                    multiplicity: m,
                }
            })
            .collect()
    }

    /// Verifies that no root lies in the open disk of radius
    /// `rho * (1 - margin)`.
    ///
    /// A root of multiplicity `m` is only resolved to about `eps^(1/m)`, so a
    /// root inside the disk is still accepted when it belongs to a tight
    /// group of `m` roots (spread within the perturbation radius of an
    /// `m`-fold root) whose center, refined as a simple root of `P^(m-1)`,
    /// lies outside.
    pub fn ensure_outside(&self, rho: f64, margin: f64) -> Result<()> {
        let threshold = rho * (1.0 - margin);
        for &z in &self.roots {
            if z.norm() >= threshold {
                continue;
            }
            if !self.is_outside_cluster(z, threshold) {
                return Err(Error::RootInForbiddenRegion {
                    root_modulus: z.norm(),
                    rho,
                });
            }
        }
        Ok(())
    }

    fn is_outside_cluster(&self, z: C64, threshold: f64) -> bool {
        let mut by_distance: Vec<C64> = self.roots.clone();
        by_distance.sort_by(|a, b| (*a - z).norm().total_cmp(&(*b - z).norm()));
        (2..=by_distance.len()).any(|m| {
            let group = &by_distance[..m];
            let center = group.iter().sum::<C64>() / m as f64;
            let radius = 4.0 * 1e-13f64.powf(1.0 / m as f64) * (1.0 + center.norm());
            if group.iter().any(|w| (*w - center).norm() > radius) {
                return false;
            }
            refine_multiple(&self.coeffs, center, m, radius).norm() >= threshold
        })
    }
}

/// Polishes the center of an `m`-fold root cluster by Newton's method on
/// `P^(m-1)`, for which it is a simple root. Falls back to `center` if the
/// iteration leaves the disk of radius `radius`.
fn refine_multiple(coeffs: &[C64], center: C64, m: usize, radius: f64) -> C64 {
    if m < 2 || coeffs.len() <= m {
        return center;
    }
    let mut d = AlgebraicPoly::new(coeffs.to_vec()).expect("nonempty");
    for _ in 1..m {
        d = d.derivative();
    }
    let mut z = center;
    for _ in 0..50 {
        let (p, dp) = d.eval_with_derivative(z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    if (z - center).norm() <= radius && z.is_finite() {
        z
    } else {
        center
    }
}

/// Double-double value `hi + lo`.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn from(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn add(self, b: Dd) -> Dd {
        let s = self.0 + b.0;
        let bb = s - self.0;
        let e = (self.0 - (s - bb)) + (b.0 - bb) + self.1 + b.1;
        let hi = s + e;
        Dd(hi, e - (hi - s))
    }

    fn mul(self, b: f64) -> Dd {
        let p = self.0 * b;
        let e = self.0.mul_add(b, -p) + self.1 * b;
        let hi = p + e;
        Dd(hi, e - (hi - p))
    }

    fn value(self) -> f64 {
        self.0 + self.1
    }
}

/// Horner in double-double for `P(z)` and plain double for `P'(z)`.
fn horner_accurate(coeffs: &[C64], z: C64) -> (C64, C64) {
    let (mut re, mut im) = (Dd::from(0.0), Dd::from(0.0));
    let mut dp = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + C64::new(re.value(), im.value());
        let nre = re.mul(z.re).add(im.mul(-z.im)).add(Dd::from(c.re));
        let nim = re.mul(z.im).add(im.mul(z.re)).add(Dd::from(c.im));
        re = nre;
        im = nim;
    }
    (C64::new(re.value(), im.value()), dp)
}

/// `P(z) / P'(z)` with the value of `P` computed in double-double, which
/// resolves roots of ill-conditioned polynomials far below the rounding
/// level of plain Horner.
fn newton_ratio_accurate(coeffs: &[C64], z: C64) -> C64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let (p, dp) = horner_accurate(coeffs, z);
        p / dp
    } else {
        let w = z.inv();
        let rev: Vec<C64> = coeffs.iter().rev().copied().collect();
        let (r, dr) = horner_accurate(&rev, w);
        z * r / (r * n as f64 - w * dr)
    }
}

/// `P(z) / P'(z)`, evaluated through the reversed polynomial when `|z| > 1`
/// so that high degrees do not overflow.
fn newton_ratio(coeffs: &[C64], z: C64) -> C64 {
    let n = coeffs.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        p / dp
    } else {
        let w = z.inv();
        let mut r = C64::new(0.0, 0.0);
        let mut dr = C64::new(0.0, 0.0);
        for &c in coeffs.iter() {
            dr = dr * w + r;
            r = r * w + c;
        }
        // P(z) = z^n R(w), P'(z) = z^{n-1} (n R(w) - w R'(w)).
        z * r / (r * n as f64 - w * dr)
    }
}

/// Roots of `coeffs[0] + ... + coeffs[d] z^d` with `coeffs[d] != 0`.
pub(crate) fn aberth(coeffs: &[C64]) -> Result<RootSet> {
    let leading = *coeffs.last().ok_or(Error::ZeroPolynomial)?;
    if leading == C64::new(0.0, 0.0) {
        return Err(Error::ZeroPolynomial);
    }
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let d = reduced.len() - 1;

    let mut roots = vec![C64::new(0.0, 0.0); zeros];
    let mut iterations = 0;
    let mut converged = true;
    match d {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        _ => {
            let (found, iters, ok) = aberth_iterate(reduced);
            roots.extend(found);
            iterations = iters;
            converged = ok;
        }
    }

    let recon = AlgebraicPoly::from_roots(leading, &roots);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let residual = recon
        .coeffs()
        .iter()
        .zip(coeffs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / scale;

    Ok(RootSet {
        roots,
        coeffs: coeffs.to_vec(),
        leading,
        residual,
        iterations,
        converged,
    })
}

fn aberth_iterate(coeffs: &[C64]) -> (Vec<C64>, usize, bool) {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    // Fujiwara-type radius max_k |a_{d-k} / a_d|^{1/k}.
    let radius = (1..=d)
        .map(|k| (coeffs[d - k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let center = -coeffs[d - 1] / (coeffs[d] * d as f64);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * (k as f64 * 1.7).sin());
            center + C64::from_polar(r, theta)
        })
        .collect();

    for iter in 1..=MAX_ITERATIONS {
        if aberth_sweep(coeffs, &mut z, newton_ratio) <= CORRECTION_TOL {
            return (z, iter, true);
        }
    }
    // Plain evaluation stalled at its noise floor; continue with accurate
    // values until corrections reach rounding level or stop shrinking.
    let mut best = f64::INFINITY;
    for iter in 1..=POLISH_ITERATIONS {
        let corr = aberth_sweep(coeffs, &mut z, newton_ratio_accurate);
        if corr <= CORRECTION_TOL {
            return (z, MAX_ITERATIONS + iter, true);
        }
        if corr >= best && iter > 5 {
            break;
        }
        best = best.min(corr);
    }
    (z, MAX_ITERATIONS + POLISH_ITERATIONS, false)
}

/// One Gauss-Seidel Aberth sweep; returns the largest relative correction.
fn aberth_sweep(coeffs: &[C64], z: &mut [C64], ratio_fn: fn(&[C64], C64) -> C64) -> f64 {
    let d = z.len();
    let mut max_corr: f64 = 0.0;
    for k in 0..d {
        let zk = z[k];
        let ratio = ratio_fn(coeffs, zk);
        if !ratio.is_finite() {
            // Stationary point of P: nudge off it.
            z[k] = zk + C64::new(1e-8, 1e-8) * (1.0 + zk.norm());
            max_corr = f64::INFINITY;
            continue;
        }
        let repulsion: C64 = z
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &zj)| (zk - zj).inv())
            .sum();
        let denom = C64::new(1.0, 0.0) - ratio * repulsion;
        let w = if denom.norm() > 0.0 && denom.is_finite() {
            ratio / denom
        } else {
            ratio
        };
        if w.is_finite() {
            z[k] = zk - w;
            max_corr = max_corr.max(w.norm() / (1.0 + zk.norm()));
        }
    }
    max_corr
}
