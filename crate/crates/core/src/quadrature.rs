//! Uniform circle grids, Gauss–Legendre rules and a local maximizer for
//! smooth periodic functions.

use std::cell::RefCell;
use std::f64::consts::PI;

use rustfft::FftPlanner;

use crate::poly::C64;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Values of `sum_k c_k e^{i k x}` at `x_j = 2 pi j / grid`, where
/// `coeffs[i]` multiplies `e^{i (lowest + i) x}`.
///
/// Frequencies are folded modulo `grid`, which leaves the sampled values
/// exact for any grid size.
pub fn circle_values(lowest: i64, coeffs: &[C64], grid: usize) -> Vec<C64> {
    assert!(grid > 0, "grid must be nonempty");
    let mut buf = vec![C64::new(0.0, 0.0); grid];
    for (i, &c) in coeffs.iter().enumerate() {
        let k = (lowest + i as i64).rem_euclid(grid as i64) as usize;
        buf[k] += c;
    }
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(grid).process(&mut buf));
    buf
}

/// Mean of `f` over `grid` equispaced points of the circle.
pub fn circle_mean<F: Fn(f64) -> f64>(f: F, grid: usize) -> f64 {
    let h = 2.0 * PI / grid as f64;
    (0..grid).map(|j| f(j as f64 * h)).sum::<f64>() / grid as f64
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let (p, pm1) = if n == 0 { (1.0, 0.0) } else { (p1, p0) };
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.into_iter()
        .zip(w)
        .map(|(xi, wi)| (mid + half * xi, half * wi))
        .collect()
}

/// `int_a^b f` by double-exponential (tanh-sinh) quadrature, halving the
/// step until the relative change is below `rel_tol`. Integrable endpoint
/// singularities such as `|x - a|^p` are handled to full precision.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    const T_MAX: f64 = 3.5;
    const LEVELS: u32 = 10;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let node = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        if w == 0.0 {
            return 0.0;
        }
        w * f(mid + half * u.tanh())
    };
    let mut h = 1.0;
    let steps = (T_MAX / h) as i64;
    let mut sum: f64 = (-steps..=steps).map(|j| node(j as f64 * h)).sum();
    let mut prev = h * sum * half;
    for level in 1..=LEVELS {
        h *= 0.5;
        let steps = (T_MAX / h) as i64;
        sum += (-steps..=steps)
            .filter(|j| j % 2 != 0)
            .map(|j| node(j as f64 * h))
            .sum::<f64>();
        let cur = h * sum * half;
        let done = level >= 3 && (cur - prev).abs() <= rel_tol * cur.abs();
        prev = cur;
        if done {
            break;
        }
    }
    prev
}

/// A refined local maximum of a periodic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalMax {
    pub x: f64,
    pub value: f64,
}

/// Local maxima of a `2 pi`-periodic function sampled on `grid` points and
/// refined by Brent's parabolic-interpolation search.
///
/// Only grid maxima within `keep` (relative) of the largest grid value are
/// refined. Results are sorted by decreasing value.
pub fn circle_maxima<F: Fn(f64) -> f64>(f: F, grid: usize, keep: f64) -> Vec<LocalMax> {
    let grid = grid.max(8);
    let h = 2.0 * PI / grid as f64;
    let vals: Vec<f64> = (0..grid).map(|j| f(j as f64 * h)).collect();
    let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cutoff = top - keep * top.abs();
    let mut out: Vec<LocalMax> = Vec::new();
    for j in 0..grid {
        let prev = vals[(j + grid - 1) % grid];
        let next = vals[(j + 1) % grid];
        let v = vals[j];
        if v < prev || v < next || v < cutoff {
            continue;
        }
        // Plateaus: keep only the first point of a run of equal values.
        if v == prev && j > 0 {
            continue;
        }
        let x0 = j as f64 * h;
        let (x, value) = brent_max(&f, x0 - h, x0, x0 + h, v);
        out.push(LocalMax {
            x: x.rem_euclid(2.0 * PI),
            value: value.max(v),
        });
    }
    if out.is_empty() {
        // Constant function.
        out.push(LocalMax { x: 0.0, value: top });
    }
    out.sort_by(|a, b| b.value.total_cmp(&a.value));
    out
}

/// Maximum of `f` over the circle: the largest refined local maximum.
pub fn circle_max<F: Fn(f64) -> f64>(f: F, grid: usize) -> LocalMax {
    circle_maxima(f, grid, 0.05)[0]
}

/// Brent's method on `[a, b]` for a maximum bracketed by `x` (with
/// `f(x) = fx`).
fn brent_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, x0: f64, mut b: f64, fx0: f64) -> (f64, f64) {
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let g = |t: f64| -f(t);
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (-fx0, -fx0, -fx0);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..100 {
        let xm = 0.5 * (a + b);
        let tol1 = 1e-12 * x.abs().max(1.0);
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = g(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, -fx)
}
