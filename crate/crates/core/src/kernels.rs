//! Dirichlet-kernel integral representations of derivatives, evaluated by
//! the uniform circle rule, and the embedding constants that follow from
//! them.
//!
//! With `<f, g> = int f conj(g) dm` and `D_n(z) = 1 + z + ... + z^{n-1}`:
//!
//! * `P'(xi)  = <P, u D_n(conj(xi) u)^2>` for `deg P <= n`, `|xi| <= 1`;
//! * `P''(xi) = 2 <P, u^2 D_n(conj(xi) u)^3>`;
//! * `T'(xi)  = <T, u D_n^2 - xi^2 conj(u) conj(D_n^2)>` for trigonometric
//!   `T` of degree `n` and `|xi| = 1`.
//!
//! Every integrand is a Laurent polynomial in `u` of degree below `3n`, so an
//! `N`-point rule with `N >= 4n + 8` is exact by discrete orthogonality.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::poly::{AlgebraicPoly, TrigPoly, C64};

/// Tolerance on `|xi| = 1` for the trigonometric kernel.
pub const UNIT_CIRCLE_TOL: f64 = 1e-12;

/// `D_n(z) = sum_{k=0}^{n-1} z^k`.
pub fn dirichlet(n: usize, z: C64) -> C64 {
    (0..n).fold(C64::new(0.0, 0.0), |acc, _| acc * z + 1.0)
}

/// Smallest grid on which every kernel integrand of degree parameter `n`
/// is integrated exactly.
pub fn exact_grid(n: usize) -> usize {
    4 * n + 8
}

fn grid_points(grid: usize) -> impl Iterator<Item = C64> {
    (0..grid).map(move |j| C64::cis(2.0 * PI * j as f64 / grid as f64))
}

fn check_closed_disk(xi: C64) -> Result<()> {
    if xi.norm() > 1.0 + UNIT_CIRCLE_TOL {
        return Err(invalid(format!("|xi| = {} exceeds 1", xi.norm())));
    }
    Ok(())
}

/// `P'(xi)` from the first-derivative kernel on the default exact grid.
pub fn deriv_via_kernel(p: &AlgebraicPoly, xi: C64) -> Result<C64> {
    deriv_via_kernel_on(p, xi, exact_grid(p.degree().max(1)))
}

pub fn deriv_via_kernel_on(p: &AlgebraicPoly, xi: C64, grid: usize) -> Result<C64> {
    check_closed_disk(xi)?;
    let n = p.degree().max(1);
    let xc = xi.conj();
    let sum: C64 = grid_points(grid)
        .map(|u| {
            let d = dirichlet(n, xc * u);
            p.eval(u) * (u * d * d).conj()
        })
        .sum();
    Ok(sum / grid as f64)
}

/// `P''(xi)` from the second-derivative kernel on the default exact grid.
pub fn second_deriv_via_kernel(p: &AlgebraicPoly, xi: C64) -> Result<C64> {
    second_deriv_via_kernel_on(p, xi, exact_grid(p.degree().max(1)))
}

pub fn second_deriv_via_kernel_on(p: &AlgebraicPoly, xi: C64, grid: usize) -> Result<C64> {
    check_closed_disk(xi)?;
    let n = p.degree().max(1);
    let xc = xi.conj();
    let sum: C64 = grid_points(grid)
        .map(|u| {
            let d = dirichlet(n, xc * u);
            p.eval(u) * (u * u * d * d * d).conj()
        })
        .sum();
    Ok(2.0 * sum / grid as f64)
}

/// `K_xi(u) = u D_n(conj(xi) u)^2 - xi^2 conj(u) conj(D_n(conj(xi) u)^2)`.
pub fn trig_kernel(n: usize, xi: C64, u: C64) -> C64 {
    let d = dirichlet(n, xi.conj() * u);
    let d2 = d * d;
    u * d2 - xi * xi * u.conj() * d2.conj()
}

/// `T'(xi) = sum k a_k xi^{k-1}` (the derivative in `z`) as `<T, K_xi>`.
pub fn trig_deriv_via_kernel(t: &TrigPoly, xi: C64) -> Result<C64> {
    trig_deriv_via_kernel_on(t, xi, exact_grid(t.degree().max(1)))
}

pub fn trig_deriv_via_kernel_on(t: &TrigPoly, xi: C64, grid: usize) -> Result<C64> {
    if (xi.norm() - 1.0).abs() > UNIT_CIRCLE_TOL {
        return Err(invalid(format!(
            "trigonometric kernel needs |xi| = 1, got {}",
            xi.norm()
        )));
    }
    let n = t.degree().max(1);
    let sum: C64 = grid_points(grid)
        .map(|u| t.eval_laurent(u) * trig_kernel(n, xi, u).conj())
        .sum();
    Ok(sum / grid as f64)
}

/// `sqrt(n + 1)`: `||P||_W <= sqrt(n + 1) ||P||_inf`.
pub fn wiener_bound_constant(n: usize) -> f64 {
    ((n + 1) as f64).sqrt()
}

/// `sum_{k=0}^{n-1} 1 / (2k + 1)`, the constant in
/// `int_0^1 ||P'_r||_inf dr <= C ||P||_inf`.
pub fn besov_inf1_bound_constant(n: usize) -> f64 {
    (0..n).map(|k| 1.0 / (2 * k + 1) as f64).sum()
}

/// The same sum started at `k = 1`, as the inequality is sometimes quoted.
/// It is smaller by exactly one and is not a valid bound in general (see
/// `P = z`).
pub fn besov_inf1_bound_constant_from_one(n: usize) -> f64 {
    (1..n).map(|k| 1.0 / (2 * k + 1) as f64).sum()
}

/// Terms `Gamma(k + 3/2)^2 / (k! (k+1)!)` for `k = 0..n`, by the recurrence
/// `t_{k+1} = t_k (k + 3/2)^2 / ((k + 1)(k + 2))` from `t_0 = pi / 4`.
pub fn gamma_ratio_terms(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut t = PI / 4.0;
    for k in 0..n {
        out.push(t);
        let kf = k as f64;
        t *= (kf + 1.5) * (kf + 1.5) / ((kf + 1.0) * (kf + 2.0));
    }
    out
}

/// `(8 / pi) sum_{k=0}^{n-1} Gamma(k + 3/2)^2 / (k! (k+1)!)`, the constant in
/// `int_D |P''| dA <= C ||P||_inf`; strictly below `8n / pi`.
pub fn besov_111_bound_constant(n: usize) -> f64 {
    8.0 / PI * gamma_ratio_terms(n).iter().sum::<f64>()
}

/// The kernel polynomial `S_n^xi(u) = sum_{k<n} Gamma(k + 3/2) / k! (conj(xi) u)^k`.
pub fn gamma_kernel(n: usize, xi: C64, u: C64) -> C64 {
    // c_k = Gamma(k + 3/2) / k!, c_0 = sqrt(pi) / 2.
    let w = xi.conj() * u;
    let mut c = PI.sqrt() / 2.0;
    let mut pow = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..n {
        sum += pow * c;
        pow *= w;
        c *= (k as f64 + 1.5) / (k as f64 + 1.0);
    }
    sum
}
