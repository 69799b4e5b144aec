//! Numerical verification of the Bernstein-type inequalities and the
//! identities behind them. Every check returns a [`VerificationReport`].

use std::f64::consts::{E, PI, TAU};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::format::PolyFile;
use crate::kernels::{
    besov_111_bound_constant, besov_inf1_bound_constant, besov_inf1_bound_constant_from_one,
    wiener_bound_constant,
};
use crate::norms::{
    besov_111_seminorm, besov_inf1_seminorm, lp_norm, mahler_trig, sup_norm, sup_norm_alg,
    wiener_norm, QuadratureConfig,
};
use crate::poly::{AlgebraicPoly, TrigPoly, C64};
use crate::quadrature::{circle_maxima, gauss_legendre_on};
use crate::report::{digest, VerificationReport, Witness};

/// Relative tolerance for norm comparisons.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Tolerance for convex-hull distances, scaled by `1 + max |root|`.
pub const HULL_TOL: f64 = 1e-7;
/// Roots may sit this far (relatively) inside `rho D` and still count as
/// outside; anything deeper is rejected.
pub const ROOT_MARGIN: f64 = 1e-6;

const WITNESS_COUNT: usize = 5;

/// Exponent of an `L^p` quasi-norm: `0` means the Mahler measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PValue", into = "PValue")]
pub enum PExponent {
    Zero,
    Finite(f64),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PValue {
    Num(f64),
    Text(String),
}

impl PExponent {
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == 0.0 {
            Ok(PExponent::Zero)
        } else if p == f64::INFINITY {
            Ok(PExponent::Infinity)
        } else if p.is_finite() && p > 0.0 {
            Ok(PExponent::Finite(p))
        } else {
            Err(invalid(format!("p must be in [0, inf], got {p}")))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            PExponent::Zero => 0.0,
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Infinity => write!(f, "inf"),
            p => write!(f, "{}", p.as_f64()),
        }
    }
}

impl std::str::FromStr for PExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" => Ok(PExponent::Infinity),
            t => Self::from_f64(
                t.parse()
                    .map_err(|_| invalid(format!("bad exponent {t:?}")))?,
            ),
        }
    }
}

impl TryFrom<PValue> for PExponent {
    type Error = Error;

    fn try_from(v: PValue) -> Result<Self> {
        match v {
            PValue::Num(p) => Self::from_f64(p),
            PValue::Text(s) => s.parse(),
        }
    }
}

impl From<PExponent> for PValue {
    fn from(p: PExponent) -> Self {
        match p {
            PExponent::Infinity => PValue::Text("inf".into()),
            p => PValue::Num(p.as_f64()),
        }
    }
}

/// `chi` in the integrated form `int chi(|T'|) dm <= int chi(|n T|) dm`.
///
/// The inequality is claimed for increasing, differentiable `chi` with
/// `x chi'(x)` increasing; custom functions must assert this.
#[derive(Clone)]
pub enum ChiFunction {
    Power(f64),
    Log,
    Custom {
        name: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        hypothesis: bool,
    },
}

impl fmt::Debug for ChiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl ChiFunction {
    pub fn custom<F>(name: &str, eval: F, hypothesis: bool) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ChiFunction::Custom {
            name: name.to_string(),
            eval: Arc::new(eval),
            hypothesis,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ChiFunction::Power(p) => format!("x^{p}"),
            ChiFunction::Log => "log".to_string(),
            ChiFunction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ChiFunction::Power(p) => x.powf(*p),
            ChiFunction::Log => x.ln(),
            ChiFunction::Custom { eval, .. } => eval(x),
        }
    }
}

/// Which embedding of the analytic polynomials is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingKind {
    Wiener,
    BesovInf1,
    Besov111,
}

fn poly_digest<P: Serialize>(check: &str, input: &PolyFile, params: &P) -> String {
    digest(&(check, input, params))
}

fn trig_digest<P: Serialize>(check: &str, t: &TrigPoly, params: &P) -> String {
    poly_digest(check, &PolyFile::from(t), params)
}

fn alg_digest<P: Serialize>(check: &str, p: &AlgebraicPoly, params: &P) -> String {
    poly_digest(check, &PolyFile::from(p), params)
}

fn circle_grid(n: usize) -> usize {
    32 * (n + 1)
}

/// Largest refined value of `f` on the circle of radius `radius` and the
/// tightest points as witnesses against `bound`.
fn maximize<F: Fn(f64) -> f64>(f: F, n: usize, radius: f64, bound: f64) -> (f64, Vec<Witness>) {
    let maxima = circle_maxima(f, circle_grid(n), 0.05);
    let top = maxima[0].value;
    let witnesses = maxima
        .iter()
        .take(WITNESS_COUNT)
        .map(|m| Witness::new(C64::from_polar(radius, m.x), m.value, bound))
        .collect();
    (top, witnesses)
}

fn ensure_nonzero_trig(t: &TrigPoly) -> Result<()> {
    if t.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    Ok(())
}

fn ensure_nonzero_alg(p: &AlgebraicPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    Ok(())
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho.is_finite() && rho >= 1.0) {
        return Err(invalid(format!("rho must be >= 1, got {rho}")));
    }
    Ok(())
}

fn ensure_roots_outside(p: &AlgebraicPoly, rho: f64) -> Result<()> {
    if p.effective_degree().is_some_and(|d| d > 0) {
        p.roots()?.ensure_outside(rho, ROOT_MARGIN)?;
    }
    Ok(())
}

/// Mahler measure, with the zero polynomial mapped to `0`.
fn mahler_or_zero(t: &TrigPoly) -> Result<f64> {
    if t.is_zero() {
        Ok(0.0)
    } else {
        mahler_trig(t)
    }
}

/// `||T'||_p <= n ||T||_p` with `n` the declared degree.
pub fn check_bernstein(t: &TrigPoly, p: PExponent, tol: f64) -> Result<VerificationReport> {
    check_bernstein_with(t, p, tol, &QuadratureConfig::default())
}

pub fn check_bernstein_with(
    t: &TrigPoly,
    p: PExponent,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    ensure_nonzero_trig(t)?;
    let n = t.degree();
    let d = t.derivative();
    let id = "bernstein";
    let dg = trig_digest(id, t, &p);
    Ok(match p {
        PExponent::Infinity => {
            let bound = n as f64 * sup_norm(t);
            let (top, w) = maximize(|x| d.eval(x).norm_sqr(), n, 1.0, bound * bound);
            let witnesses = w
                .into_iter()
                .map(|w| Witness::new(C64::new(w.point[0], w.point[1]), w.value.sqrt(), bound))
                .collect();
            VerificationReport::relative(id, dg, top.sqrt(), bound, tol).with_witnesses(witnesses)
        }
        PExponent::Finite(q) => {
            let measured = if d.is_zero() {
                0.0
            } else {
                lp_norm(&d, q, cfg)?
            };
            let bound = n as f64 * lp_norm(t, q, cfg)?;
            VerificationReport::relative(id, dg, measured, bound, tol)
        }
        PExponent::Zero => {
            let measured = mahler_or_zero(&d)?;
            let bound = n as f64 * mahler_trig(t)?;
            VerificationReport::relative(id, dg, measured, bound, tol)
        }
    }
    .with_extra("p", p.as_f64().min(f64::MAX)))
}

/// `|P'(z)| + |Q'(z)| <= n` on the circle for `||P||_inf = 1`; the input is
/// normalized first.
pub fn check_malik(p: &AlgebraicPoly, tol: f64) -> Result<VerificationReport> {
    ensure_nonzero_alg(p)?;
    let n = p.degree();
    let norm = sup_norm_alg(p);
    let p1 = p.scale(C64::new(1.0 / norm, 0.0));
    let dp = p1.derivative();
    let dq = p1.reciprocal().derivative();
    let bound = n as f64;
    let (top, w) = maximize(
        |x| {
            let z = C64::cis(x);
            dp.eval(z).norm() + dq.eval(z).norm()
        },
        n,
        1.0,
        bound,
    );
    Ok(
        VerificationReport::relative("malik", alg_digest("malik", p, &()), top, bound, tol)
            .with_witnesses(w),
    )
}

/// `rho |P'(z)| <= |Q'(z)|` on the circle when no root of `P` lies in
/// `rho D`. Additive form: bound `0`, tolerance scaled by `n ||P||_inf`.
pub fn check_laguerre(p: &AlgebraicPoly, rho: f64, tol: f64) -> Result<VerificationReport> {
    ensure_nonzero_alg(p)?;
    check_rho(rho)?;
    ensure_roots_outside(p, rho)?;
    let n = p.degree();
    let dp = p.derivative();
    let dq = p.reciprocal().derivative();
    let (top, w) = maximize(
        |x| {
            let z = C64::cis(x);
            rho * dp.eval(z).norm() - dq.eval(z).norm()
        },
        n,
        1.0,
        0.0,
    );
    let scale = n.max(1) as f64 * sup_norm_alg(p);
    Ok(VerificationReport::new(
        "laguerre",
        alg_digest("laguerre", p, &rho),
        top,
        0.0,
        tol,
        scale,
    )
    .with_witnesses(w)
    .with_extra("rho", rho))
}

/// `||P'||_inf <= n / (1 + rho) ||P||_inf` when no root lies in `rho D`.
pub fn check_lax_malik(p: &AlgebraicPoly, rho: f64, tol: f64) -> Result<VerificationReport> {
    ensure_nonzero_alg(p)?;
    check_rho(rho)?;
    ensure_roots_outside(p, rho)?;
    let n = p.degree();
    let bound = n as f64 / (1.0 + rho) * sup_norm_alg(p);
    let dp = p.derivative();
    let (top, w) = maximize(|x| dp.eval(C64::cis(x)).norm_sqr(), n, 1.0, bound * bound);
    let witnesses = w
        .into_iter()
        .map(|w| Witness::new(C64::new(w.point[0], w.point[1]), w.value.sqrt(), bound))
        .collect();
    Ok(VerificationReport::relative(
        "lax_malik",
        alg_digest("lax_malik", p, &rho),
        top.sqrt(),
        bound,
        tol,
    )
    .with_witnesses(witnesses)
    .with_extra("rho", rho))
}

/// `max_{|z| = R} |P(z)| <= (R^n + rho) / (1 + rho) ||P||_inf` when no root
/// lies in `rho D`.
pub fn check_ankeny_rivlin(
    p: &AlgebraicPoly,
    rho: f64,
    r: f64,
    tol: f64,
) -> Result<VerificationReport> {
    ensure_nonzero_alg(p)?;
    check_rho(rho)?;
    if !(r.is_finite() && r > 1.0) {
        return Err(invalid(format!("R must be > 1, got {r}")));
    }
    ensure_roots_outside(p, rho)?;
    let n = p.degree();
    let bound = (r.powi(n as i32) + rho) / (1.0 + rho) * sup_norm_alg(p);
    let dil = p.dilate(r);
    let (top, w) = maximize(|x| dil.eval(C64::cis(x)).norm_sqr(), n, r, bound * bound);
    let witnesses = w
        .into_iter()
        .map(|w| Witness::new(C64::new(w.point[0], w.point[1]), w.value.sqrt(), bound))
        .collect();
    Ok(VerificationReport::relative(
        "ankeny_rivlin",
        alg_digest("ankeny_rivlin", p, &(rho, r)),
        top.sqrt(),
        bound,
        tol,
    )
    .with_witnesses(witnesses)
    .with_extra("rho", rho)
    .with_extra("R", r))
}

/// `T'(x)^2 + n^2 T(x)^2 <= n^2` for real `T` with `||T||_inf = 1`; the
/// input is normalized first.
pub fn check_svdc(t: &TrigPoly, tol: f64) -> Result<VerificationReport> {
    ensure_nonzero_trig(t)?;
    let asymmetry = t.real_asymmetry();
    if asymmetry > 1e-12 * t.max_abs_coeff() {
        return Err(Error::NotRealValued { asymmetry });
    }
    let n = t.degree() as f64;
    let t1 = t.scale(C64::new(1.0 / sup_norm(t), 0.0));
    let d = t1.derivative();
    let bound = n * n;
    let (top, w) = maximize(
        |x| {
            let v = t1.eval(x).re;
            let dv = d.eval(x).re;
            dv * dv + n * n * v * v
        },
        t.degree(),
        1.0,
        bound,
    );
    Ok(
        VerificationReport::relative("svdc", trig_digest("svdc", t, &()), top, bound, tol)
            .with_witnesses(w),
    )
}

/// Andrew's monotone chain; counter-clockwise, without collinear points.
fn convex_hull(points: &[C64]) -> Vec<C64> {
    let mut pts: Vec<C64> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: C64, a: C64, b: C64| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut hull: Vec<C64> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &C64>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Distance from `p` to the convex polygon `hull` (zero inside).
fn hull_distance(p: C64, hull: &[C64]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p - hull[0]).norm(),
        2 => segment_distance(p, hull[0], hull[1]),
        m => {
            let inside = (0..m).all(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % m];
                (b - a).re * (p - a).im - (b - a).im * (p - a).re >= 0.0
            });
            if inside {
                0.0
            } else {
                (0..m)
                    .map(|i| segment_distance(p, hull[i], hull[(i + 1) % m]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Roots of `P'` lie in the convex hull of the roots of `P`. Measured is the
/// largest distance of a critical point to the hull; bound `0`, tolerance
/// scaled by `1 + max |root|`.
pub fn check_gauss_lucas(p: &AlgebraicPoly, tol: f64) -> Result<VerificationReport> {
    let eff = p.effective_degree().unwrap_or(0);
    if eff < 2 {
        return Err(Error::Degenerate(format!(
            "effective degree {eff} has no critical points to test"
        )));
    }
    let roots = p.roots()?;
    let crit = p.derivative().roots()?;
    let hull = convex_hull(roots.roots());
    let scale = 1.0 + roots.roots().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let witnesses: Vec<Witness> = crit
        .roots()
        .iter()
        .map(|&w| Witness::new(w, hull_distance(w, &hull), 0.0))
        .collect();
    let measured = witnesses.iter().map(|w| w.value).fold(0.0, f64::max);
    let mut report = VerificationReport::new(
        "gauss_lucas",
        alg_digest("gauss_lucas", p, &()),
        measured,
        0.0,
        tol,
        scale,
    )
    .with_witnesses(witnesses);
    report.witnesses.truncate(WITNESS_COUNT);
    Ok(report)
}

/// The embeddings `||P||_W <= sqrt(n+1) ||P||_inf`,
/// `int_0^1 ||P'_r||_inf dr <= (sum_{k<n} 1/(2k+1)) ||P||_inf` and
/// `int_D |P''| dA <= (8/pi) sum_{k<n} Gamma(k+3/2)^2/(k!(k+1)!) ||P||_inf`.
pub fn check_embedding(
    p: &AlgebraicPoly,
    kind: EmbeddingKind,
    tol: f64,
) -> Result<VerificationReport> {
    check_embedding_with(p, kind, tol, &QuadratureConfig::default())
}

pub fn check_embedding_with(
    p: &AlgebraicPoly,
    kind: EmbeddingKind,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    ensure_nonzero_alg(p)?;
    let n = p.degree();
    let sup = sup_norm_alg(p);
    let dg = alg_digest("embedding", p, &kind);
    Ok(match kind {
        EmbeddingKind::Wiener => {
            let measured = wiener_norm(p);
            let bound = wiener_bound_constant(n) * sup;
            VerificationReport::relative("embedding_wiener", dg, measured, bound, tol)
                .with_extra("sharpness", measured / bound)
        }
        EmbeddingKind::BesovInf1 => {
            let measured = besov_inf1_seminorm(p, cfg);
            let bound = besov_inf1_bound_constant(n) * sup;
            VerificationReport::relative("embedding_besov_inf1", dg, measured, bound, tol)
                .with_extra(
                    "bound_sum_from_one",
                    besov_inf1_bound_constant_from_one(n) * sup,
                )
        }
        EmbeddingKind::Besov111 => {
            let measured = besov_111_seminorm(p, cfg);
            let bound = besov_111_bound_constant(n) * sup;
            VerificationReport::relative("embedding_besov_111", dg, measured, bound, tol)
                .with_extra("bound_8n_over_pi", 8.0 * n as f64 / PI * sup)
        }
    })
}

/// `log+ |v| = int log |v + w| dm(w)`, by the uniform rule. Measured is the
/// absolute error; tolerance scaled by `1 + log+ |v|`.
pub fn check_identity_logplus(v: C64, tol: f64) -> Result<VerificationReport> {
    let gap = v.norm().ln().abs();
    if gap < 1e-12 {
        return Err(Error::OnUnitCircle);
    }
    if !v.is_finite() {
        return Err(invalid("v must be finite"));
    }
    let exact = v.norm().ln().max(0.0);
    // The N-point rule errs by about |v|^{-N} or |v|^N.
    let mean = |grid: usize| -> f64 {
        (0..grid)
            .map(|j| (v + C64::cis(TAU * j as f64 / grid as f64)).norm().ln())
            .sum::<f64>()
            / grid as f64
    };
    let mut grid = ((40.0 / gap).ceil() as usize).clamp(16, 1 << 24);
    let mut value = mean(grid);
    for _ in 0..4 {
        grid *= 2;
        let next = mean(grid);
        let done = (next - value).abs() <= 1e-15 * (1.0 + exact);
        value = next;
        if done {
            break;
        }
    }
    Ok(VerificationReport::new(
        "identity_logplus",
        digest(&("identity_logplus", [v.re, v.im])),
        (value - exact).abs(),
        0.0,
        tol,
        1.0 + exact,
    )
    .with_extra("quadrature", value)
    .with_extra("exact", exact))
}

/// `u^p = int_0^inf log+(u/a) p^2 a^{p-1} da`. The integrand vanishes for
/// `a >= u`; with `a = u e^{-s}` the rest is integrated by composite
/// Gauss–Legendre on `[0, S]`, `pS = 48`, so the dropped tail is below
/// `1e-19` relative. Measured is the absolute error, scaled by `u^p`.
pub fn check_identity_power(u: f64, p: f64, tol: f64) -> Result<VerificationReport> {
    if !(u.is_finite() && u >= 0.0) {
        return Err(invalid(format!("u must be >= 0, got {u}")));
    }
    if !(p.is_finite() && p > 0.0) {
        return Err(invalid(format!("p must be > 0, got {p}")));
    }
    let exact = u.powf(p);
    let value = if u == 0.0 {
        0.0
    } else {
        // After a = u e^{-s}: log(u/a) = s and a^{p-1} da = -u^p e^{-ps} ds.
        // The tail beyond S is (1 + pS) e^{-pS}.
        let s_max = 48.0 / p;
        let up = u.powf(p);
        let integrand = |s: f64| s * p * p * up * (-p * s).exp();
        let panels = 64;
        let w = s_max / panels as f64;
        (0..panels)
            .map(|j| {
                gauss_legendre_on(24, j as f64 * w, (j + 1) as f64 * w)
                    .into_iter()
                    .map(|(s, wt)| wt * integrand(s))
                    .sum::<f64>()
            })
            .sum()
    };
    let scale = if exact > 0.0 { exact } else { 1.0 };
    Ok(VerificationReport::new(
        "identity_power",
        digest(&("identity_power", u, p)),
        (value - exact).abs(),
        0.0,
        tol,
        scale,
    )
    .with_extra("quadrature", value)
    .with_extra("exact", exact))
}

/// `int chi(|T'|) dm <= int chi(|n T|) dm`. For `chi = log` both sides are
/// compared in exponentiated form (Mahler measures), which stays finite when
/// `T'` vanishes on the circle.
pub fn check_chi_version(t: &TrigPoly, chi: &ChiFunction, tol: f64) -> Result<VerificationReport> {
    check_chi_version_with(t, chi, tol, &QuadratureConfig::default())
}

pub fn check_chi_version_with(
    t: &TrigPoly,
    chi: &ChiFunction,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    ensure_nonzero_trig(t)?;
    let n = t.degree() as f64;
    let d = t.derivative();
    let dg = trig_digest("chi_version", t, &chi.label());
    let (lhs, rhs) = match chi {
        ChiFunction::Power(p) => {
            if !(p.is_finite() && *p > 0.0) {
                return Err(invalid(format!("chi exponent must be > 0, got {p}")));
            }
            let lhs = if d.is_zero() {
                0.0
            } else {
                lp_norm(&d, *p, cfg)?.powf(*p)
            };
            let rhs = (n * lp_norm(t, *p, cfg)?).powf(*p);
            (lhs, rhs)
        }
        ChiFunction::Log => (mahler_or_zero(&d)?, n * mahler_trig(t)?),
        ChiFunction::Custom { hypothesis, .. } => {
            if !hypothesis {
                return Err(invalid(
                    "custom chi must be asserted increasing with x chi'(x) increasing",
                ));
            }
            let mean = |grid: usize| -> (f64, f64) {
                let (mut l, mut r) = (0.0, 0.0);
                for j in 0..grid {
                    let x = TAU * j as f64 / grid as f64;
                    l += chi.eval(d.eval(x).norm());
                    r += chi.eval(n * t.eval(x).norm());
                }
                (l / grid as f64, r / grid as f64)
            };
            let mut grid = cfg.initial_grid(t.degree());
            let mut prev = mean(grid);
            for _ in 0..cfg.doubling_limit {
                grid *= 2;
                let cur = mean(grid);
                let done = (cur.0 - prev.0).abs() <= cfg.rel_tol * cur.0.abs()
                    && (cur.1 - prev.1).abs() <= cfg.rel_tol * cur.1.abs();
                prev = cur;
                if done {
                    break;
                }
            }
            prev
        }
    };
    Ok(VerificationReport::relative(
        "chi_version",
        dg,
        lhs,
        rhs,
        tol,
    ))
}

/// `||T'||_p` against the earlier bound `n (4e)^{1/p} ||T||_p` and the sharp
/// bound `n ||T||_p`, for `0 < p < 1`. The report's bound is the former;
/// `arestov_bound` and `factor` are in the extras.
pub fn mate_nevai_compare(t: &TrigPoly, p: f64) -> Result<VerificationReport> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("p must be in (0, 1), got {p}")));
    }
    ensure_nonzero_trig(t)?;
    let cfg = QuadratureConfig::default();
    let d = t.derivative();
    let measured = if d.is_zero() {
        0.0
    } else {
        lp_norm(&d, p, &cfg)?
    };
    let arestov = t.degree() as f64 * lp_norm(t, p, &cfg)?;
    let factor = (4.0 * E).powf(1.0 / p);
    Ok(VerificationReport::relative(
        "mate_nevai",
        trig_digest("mate_nevai", t, &p),
        measured,
        factor * arestov,
        DEFAULT_TOL,
    )
    .with_extra("arestov_bound", arestov)
    .with_extra("factor", factor)
    .with_extra("p", p))
}

/// Term-by-term differentiation with the pairing `F = ||f||_inf z^n`: since
/// `|f| <= |F|` on the circle and `F` has its roots in the closed disk,
/// `|f'| <= |F'| = n ||f||_inf` there.
pub fn check_term_by_term(f: &AlgebraicPoly, tol: f64) -> Result<VerificationReport> {
    ensure_nonzero_alg(f)?;
    let n = f.degree();
    let bound = n as f64 * sup_norm_alg(f);
    let d = f.derivative();
    let (top, w) = maximize(|x| d.eval(C64::cis(x)).norm_sqr(), n, 1.0, bound * bound);
    let witnesses = w
        .into_iter()
        .map(|w| Witness::new(C64::new(w.point[0], w.point[1]), w.value.sqrt(), bound))
        .collect();
    Ok(VerificationReport::relative(
        "term_by_term",
        alg_digest("term_by_term", f, &()),
        top.sqrt(),
        bound,
        tol,
    )
    .with_witnesses(witnesses))
}
