//! The norm ladder on the circle: sup, `L^p` (`0 < p < inf`), the Mahler
//! measure (by Jensen's formula and by quadrature), the Wiener norm and two
//! Besov seminorms. All circle integrals use normalized Haar measure and all
//! disk integrals use normalized area measure (total mass one).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poly::{AlgebraicPoly, TrigPoly, C64};
use crate::quadrature::{circle_maxima, circle_values, gauss_legendre_on, tanh_sinh, LocalMax};

/// Grid and tolerance settings shared by the quadrature-based norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Initial circle grid points per unit of degree.
    pub grid_multiplier: usize,
    /// Maximum number of grid doublings.
    pub doubling_limit: u32,
    /// Relative stopping tolerance for circle integrals.
    pub rel_tol: f64,
    /// Relative stopping tolerance for the angular part of disk integrals.
    pub area_rel_tol: f64,
    /// Gauss–Legendre nodes in the radial direction.
    pub radial_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            grid_multiplier: 16,
            doubling_limit: 6,
            rel_tol: 1e-10,
            area_rel_tol: 1e-8,
            radial_nodes: 64,
        }
    }
}

impl QuadratureConfig {
    /// Starting grid for a polynomial of the given degree; never below
    /// `4 degree + 8`.
    pub fn initial_grid(&self, degree: usize) -> usize {
        (self.grid_multiplier * degree).max(4 * degree + 8)
    }
}

/// Which norm to compute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "snake_case")]
pub enum NormKind {
    Sup,
    Lp(f64),
    Mahler,
    Wiener,
    Besov111,
    BesovInf1,
}

impl NormKind {
    pub fn validate(self) -> Result<Self> {
        match self {
            NormKind::Lp(p) if !(p.is_finite() && p > 0.0) => {
                Err(invalid(format!("L^p requires finite p > 0, got {p}")))
            }
            k => Ok(k),
        }
    }
}

/// `sup_x |T(x)|` together with a maximizing point.
///
/// `|T|^2` is sampled on `32 (n + 1)` points and every competitive grid
/// maximum is refined by parabolic-interpolation search.
pub fn sup_norm_with_arg(t: &TrigPoly) -> LocalMax {
    if t.is_zero() {
        return LocalMax { x: 0.0, value: 0.0 };
    }
    let n = t.degree();
    let m = circle_maxima(|x| t.eval(x).norm_sqr(), 32 * (n + 1), 0.05)[0];
    LocalMax {
        x: m.x,
        value: m.value.sqrt(),
    }
}

pub fn sup_norm(t: &TrigPoly) -> f64 {
    sup_norm_with_arg(t).value
}

/// `sup_{|z| = 1} |P(z)|`, which equals the sup over the closed disk.
pub fn sup_norm_alg(p: &AlgebraicPoly) -> f64 {
    sup_norm(&p.to_trig())
}

fn trig_grid_values(t: &TrigPoly, grid: usize) -> Vec<C64> {
    circle_values(-(t.degree() as i64), t.coeffs(), grid)
}

/// `(int |T|^p dm)^{1/p}` for finite `p > 0`.
///
/// Even integer `p` is exact on a grid finer than `p n`. Otherwise the
/// uniform rule is doubled; if it has not settled (zeros on or very near
/// the circle make `|T|^p` nonsmooth), the circle is split at the arguments
/// of those zeros and each arc is integrated by tanh-sinh quadrature.
pub fn lp_norm(t: &TrigPoly, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(p.is_finite() && p > 0.0) {
        return Err(invalid(format!("L^p requires finite p > 0, got {p}")));
    }
    if t.is_zero() {
        return Ok(0.0);
    }
    let n = t.degree();
    let mean_pow = |grid: usize| -> f64 {
        let vals = trig_grid_values(t, grid);
        vals.iter().map(|v| v.norm().powf(p)).sum::<f64>() / grid as f64
    };
    let is_even_integer = p.fract() == 0.0 && (p as u64).is_multiple_of(2);
    if is_even_integer {
        // |T|^p is a trigonometric polynomial of degree p n.
        let grid = cfg.initial_grid(n).max((p as usize) * n + 1);
        return Ok(mean_pow(grid).powf(1.0 / p));
    }
    let mut grid = cfg.initial_grid(n);
    let mut prev = mean_pow(grid).powf(1.0 / p);
    for _ in 0..cfg.doubling_limit {
        grid *= 2;
        let cur = mean_pow(grid).powf(1.0 / p);
        if (cur - prev).abs() <= cfg.rel_tol * cur.abs() {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(split_mean_pow(t, p, cfg)?.powf(1.0 / p))
}

/// Roots of the lift this close to the circle become arc breakpoints.
const BREAKPOINT_BAND: f64 = 0.1;

fn split_mean_pow(t: &TrigPoly, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    use std::f64::consts::TAU;
    let lift = t.to_algebraic();
    let mut cuts: Vec<f64> = if lift.effective_degree().is_some_and(|d| d > 0) {
        lift.roots()?
            .roots()
            .iter()
            .filter(|z| (z.norm() - 1.0).abs() < BREAKPOINT_BAND)
            .map(|z| z.arg().rem_euclid(TAU))
            .collect()
    } else {
        Vec::new()
    };
    // Short arcs keep the integrand free of oscillation between breakpoints.
    let pieces = 2 * t.degree() + 2;
    cuts.extend((0..pieces).map(|j| TAU * j as f64 / pieces as f64));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let first = cuts[0];
    cuts.push(first + TAU);
    let total: f64 = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| tanh_sinh(|x| t.eval(x).norm().powf(p), w[0], w[1], cfg.rel_tol))
        .sum();
    Ok(total / TAU)
}

/// Mahler measure by Jensen's formula: `|a| prod max(1, |z_j|)` over the
/// roots of the effective-degree polynomial.
pub fn mahler_jensen(p: &AlgebraicPoly) -> Result<f64> {
    let roots = p.roots()?;
    let log_sum: f64 = roots.roots().iter().map(|z| z.norm().max(1.0).ln()).sum();
    Ok(roots.leading().norm() * log_sum.exp())
}

/// Mahler measure of a trigonometric polynomial, `||z^n T||_0`.
pub fn mahler_trig(t: &TrigPoly) -> Result<f64> {
    mahler_jensen(&t.to_algebraic())
}

/// Closest approach of a root of the algebraic lift to the unit circle that
/// the quadrature path accepts.
pub const MAHLER_QUADRATURE_MIN_DISTANCE: f64 = 1e-3;

/// Mahler measure as `exp(int log |T| dm)` by uniform quadrature.
///
/// Refuses with [`Error::NearCircleRoot`] when the algebraic lift has a root
/// within [`MAHLER_QUADRATURE_MIN_DISTANCE`] of the circle. The starting grid
/// is at least `40 / distance` so the aliasing error of the logarithmic
/// singularity is below double precision before doubling starts.
pub fn mahler_quadrature(t: &TrigPoly, cfg: &QuadratureConfig) -> Result<f64> {
    let lift = t.to_algebraic();
    let roots = lift.roots()?;
    let distance = roots.min_circle_distance().unwrap_or(f64::INFINITY);
    if distance < MAHLER_QUADRATURE_MIN_DISTANCE {
        return Err(Error::NearCircleRoot { distance });
    }
    let n = t.degree();
    let mean_log = |grid: usize| -> f64 {
        let vals = trig_grid_values(t, grid);
        vals.iter().map(|v| v.norm().ln()).sum::<f64>() / grid as f64
    };
    let from_distance = if distance.is_finite() {
        (40.0 / distance).ceil() as usize
    } else {
        0
    };
    let mut grid = cfg.initial_grid(n).max(from_distance).next_power_of_two();
    let mut prev = mean_log(grid);
    for _ in 0..cfg.doubling_limit {
        grid *= 2;
        let cur = mean_log(grid);
        let done = (cur - prev).abs() <= cfg.rel_tol;
        prev = cur;
        if done {
            break;
        }
    }
    Ok(prev.exp())
}

/// `sum |a_k|`.
pub fn wiener_norm(p: &AlgebraicPoly) -> f64 {
    p.coeffs().iter().map(|c| c.norm()).sum()
}

/// Mean of `|P(r e^{i theta})|` over `theta`, doubling the grid until the
/// relative change drops below `tol`.
fn circle_abs_mean(p: &AlgebraicPoly, r: f64, start: usize, limit: u32, tol: f64) -> f64 {
    let dil = p.dilate(r);
    let mean = |grid: usize| -> f64 {
        circle_values(0, dil.coeffs(), grid)
            .iter()
            .map(|v| v.norm())
            .sum::<f64>()
            / grid as f64
    };
    let mut grid = start;
    let mut prev = mean(grid);
    for _ in 0..limit {
        grid *= 2;
        let cur = mean(grid);
        let done = (cur - prev).abs() <= tol * cur.abs();
        prev = cur;
        if done {
            break;
        }
    }
    prev
}

/// `int_D |P''| dA` with `dA` the normalized area measure, in polar form
/// `2 int_0^1 r [mean_theta |P''(r e^{i theta})|] dr`.
pub fn besov_111_seminorm(p: &AlgebraicPoly, cfg: &QuadratureConfig) -> f64 {
    let second = p.derivative().derivative();
    if second.is_zero() {
        return 0.0;
    }
    let start = cfg.initial_grid(second.degree());
    gauss_legendre_on(cfg.radial_nodes, 0.0, 1.0)
        .into_iter()
        .map(|(r, w)| {
            w * 2.0 * r * circle_abs_mean(&second, r, start, cfg.doubling_limit, cfg.area_rel_tol)
        })
        .sum()
}

/// `int_0^1 sup_{|z|=1} |P'(r z)| dr`.
pub fn besov_inf1_seminorm(p: &AlgebraicPoly, cfg: &QuadratureConfig) -> f64 {
    let first = p.derivative();
    if first.is_zero() {
        return 0.0;
    }
    gauss_legendre_on(cfg.radial_nodes, 0.0, 1.0)
        .into_iter()
        .map(|(r, w)| w * sup_norm_alg(&first.dilate(r)))
        .sum()
}

/// `int_D f dA` for normalized area measure, with `f` evaluated pointwise.
///
/// The angular mean on each Gauss–Legendre radius starts from
/// `cfg.initial_grid(degree_hint)` points and doubles until the relative
/// change is below `cfg.area_rel_tol`.
pub fn area_integral<F: Fn(C64) -> f64>(f: F, degree_hint: usize, cfg: &QuadratureConfig) -> f64 {
    let start = cfg.initial_grid(degree_hint);
    gauss_legendre_on(cfg.radial_nodes, 0.0, 1.0)
        .into_iter()
        .map(|(r, w)| {
            let mean = |grid: usize| -> f64 {
                let h = 2.0 * std::f64::consts::PI / grid as f64;
                (0..grid)
                    .map(|j| f(C64::from_polar(r, j as f64 * h)))
                    .sum::<f64>()
                    / grid as f64
            };
            let mut grid = start;
            let mut prev = mean(grid);
            for _ in 0..cfg.doubling_limit {
                grid *= 2;
                let cur = mean(grid);
                let done = (cur - prev).abs() <= cfg.area_rel_tol * cur.abs();
                prev = cur;
                if done {
                    break;
                }
            }
            w * 2.0 * r * prev
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, SQRT_2};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn two_cos() -> TrigPoly {
        TrigPoly::from_terms(1, &[(1, c(1.0)), (-1, c(1.0))]).unwrap()
    }

    #[test]
    fn sup_norm_examples() {
        assert!((sup_norm(&TrigPoly::exponential(5)) - 1.0).abs() < 1e-15);
        assert!((sup_norm(&two_cos()) - 2.0).abs() < 1e-15);
        let p = AlgebraicPoly::from_real(&[1.0, 1.0, 1.0]).unwrap();
        assert!((sup_norm_alg(&p) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sup_norm_off_grid_maximum() {
        // |1 + e^{i(x - a)}| peaks at x = a, generally off the grid.
        let a = 0.123_456_789;
        let t = TrigPoly::from_terms(1, &[(0, c(1.0)), (1, C64::cis(-a))]).unwrap();
        let m = sup_norm_with_arg(&t);
        assert!((m.value - 2.0).abs() < 1e-12);
        assert!((m.x - a).abs() < 1e-5);
    }

    #[test]
    fn lp_norm_examples() {
        let cfg = QuadratureConfig::default();
        for p in [0.3, 1.0, 2.0, 3.5] {
            assert!((lp_norm(&TrigPoly::exponential(4), p, &cfg).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((lp_norm(&two_cos(), 2.0, &cfg).unwrap() - SQRT_2).abs() < 1e-14);
        // (1/2pi) int |2 cos x| dx = 4/pi.
        let l1 = lp_norm(&two_cos(), 1.0, &cfg).unwrap();
        assert!((l1 - 4.0 / PI).abs() < 1e-9, "{l1}");
        assert!(lp_norm(&two_cos(), 0.0, &cfg).is_err());
        assert!(lp_norm(&two_cos(), -1.0, &cfg).is_err());
    }

    #[test]
    fn mahler_examples() {
        let p = AlgebraicPoly::from_real(&[-1.0, 0.0, 2.0]).unwrap();
        assert!((mahler_jensen(&p).unwrap() - 2.0).abs() < 1e-14);
        let q = AlgebraicPoly::from_real(&[-2.0, 1.0]).unwrap();
        assert!((mahler_jensen(&q).unwrap() - 2.0).abs() < 1e-14);
        // (z - 2)(z - 1/2) = z^2 - 5/2 z + 1.
        let r = AlgebraicPoly::from_real(&[1.0, -2.5, 1.0]).unwrap();
        assert!((mahler_jensen(&r).unwrap() - 2.0).abs() < 1e-13);
        assert_eq!(
            mahler_jensen(&AlgebraicPoly::from_real(&[0.0]).unwrap()).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn mahler_quadrature_examples() {
        let cfg = QuadratureConfig::default();
        let e = mahler_quadrature(&TrigPoly::exponential(3), &cfg).unwrap();
        assert!((e - 1.0).abs() < 1e-14);
        // lift 2 z^2 - 1, i.e. T = 2 e^{ix} - e^{-ix}.
        let t = TrigPoly::new(vec![c(-1.0), c(0.0), c(2.0)]).unwrap();
        let q = mahler_quadrature(&t, &cfg).unwrap();
        assert!((q - 2.0).abs() < 1e-10, "{q}");
        assert!((q - mahler_trig(&t).unwrap()).abs() < 1e-10);
        let k = TrigPoly::new(vec![C64::new(3.0, 4.0)]).unwrap();
        assert!((mahler_quadrature(&k, &cfg).unwrap() - 5.0).abs() < 1e-14);
        let on_circle = TrigPoly::new(vec![c(-1.0), c(0.0), c(1.0)]).unwrap();
        assert!(matches!(
            mahler_quadrature(&on_circle, &cfg),
            Err(Error::NearCircleRoot { .. })
        ));
    }

    #[test]
    fn wiener_examples() {
        let p = AlgebraicPoly::from_real(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(wiener_norm(&p), 3.0);
        assert_eq!(
            wiener_norm(&AlgebraicPoly::monomial(7, C64::new(0.0, 1.0))),
            1.0
        );
    }

    #[test]
    fn besov_examples() {
        let cfg = QuadratureConfig::default();
        let lin = AlgebraicPoly::from_real(&[3.0, -1.0]).unwrap();
        assert_eq!(besov_111_seminorm(&lin, &cfg), 0.0);
        let z2 = AlgebraicPoly::monomial(2, c(1.0));
        assert!((besov_111_seminorm(&z2, &cfg) - 2.0).abs() < 1e-13);
        let z3 = AlgebraicPoly::monomial(3, c(1.0));
        assert!((besov_111_seminorm(&z3, &cfg) - 4.0).abs() < 1e-13);

        let k = AlgebraicPoly::from_real(&[2.0]).unwrap();
        assert_eq!(besov_inf1_seminorm(&k, &cfg), 0.0);
        let z = AlgebraicPoly::monomial(1, c(1.0));
        assert!((besov_inf1_seminorm(&z, &cfg) - 1.0).abs() < 1e-13);
        assert!((besov_inf1_seminorm(&z2, &cfg) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn config_json_round_trip() {
        let cfg: QuadratureConfig = serde_json::from_str(r#"{"radial_nodes": 32}"#).unwrap();
        assert_eq!(cfg.radial_nodes, 32);
        assert_eq!(cfg.grid_multiplier, 16);
        let back: QuadratureConfig =
            serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(cfg.initial_grid(1), 16);
        assert_eq!(cfg.initial_grid(0), 8);
    }
}
