//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::{PI, TAU};
use std::process::{Command, ExitCode};
use std::time::Instant;

use polynorm::generate::{
    random_alg, random_exponential_sum, random_trig, rng_from_seed, roots_off_circle, roots_outside,
};
use polynorm::inequalities::{
    check_bernstein, check_chi_version, check_identity_logplus, check_identity_power, ChiFunction,
    PExponent, DEFAULT_TOL,
};
use polynorm::interp::{
    boas_derivative, odd_reciprocal_square_sum, riesz_measure, riesz_weight_identity,
};
use polynorm::kernels::{
    besov_111_bound_constant, deriv_via_kernel_on, exact_grid, gamma_kernel, gamma_ratio_terms,
    second_deriv_via_kernel_on, trig_deriv_via_kernel_on,
};
use polynorm::norms::{area_integral, mahler_quadrature, mahler_trig, sup_norm, QuadratureConfig};
use polynorm::sweep::{run_sweep, CheckId, Family, SweepConfig};
use polynorm::{TrigPoly, C64};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn riesz_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(1);
    let mut worst: f64 = 0.0;
    for n in 1..=64 {
        let mu = riesz_measure(n).unwrap();
        for _ in 0..200 {
            let t = random_trig(n, &mut rng);
            let d = t.derivative();
            let scale = n as f64 * sup_norm(&t);
            for j in 0..64 {
                let x = TAU * (j as f64 + 0.37) / 64.0;
                let r = (mu.convolve(&t, x) - d.eval(x)).norm() / scale;
                worst = worst.max(r);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs < 30.0,
        format!("max residual / (n ||T||) = {worst:.2e}, {secs:.1} s"),
    )
}

fn riesz_weights() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut printed_ok = true;
    for n in 1..=128 {
        let tv = riesz_measure(n).unwrap().total_variation();
        worst = worst.max((tv - n as f64).abs());
        printed_ok &= format!("{:.12}", riesz_weight_identity(n)) == "1.000000000000";
    }
    outcome(
        worst <= 1e-12 && printed_ok,
        format!("max |sum |c_r| - n| = {worst:.2e} for n <= 128, identity prints 1.000000000000: {printed_ok}"),
    )
}

fn euler_limit() -> Outcome {
    let ratio = odd_reciprocal_square_sum(10_000);
    let zeta2 = 4.0 / 3.0 * ratio * PI * PI / 8.0;
    let four_digits = (zeta2 * 1e4).round() == (PI * PI / 6.0 * 1e4).round();
    outcome(
        (ratio - 1.0).abs() <= 2e-4 && four_digits,
        format!("8/pi^2 sum = {ratio:.8}, derived pi^2/6 = {zeta2:.6}"),
    )
}

fn kernel_representations() -> Outcome {
    let mut rng = rng_from_seed(4);
    let (mut first, mut second, mut trig, mut doubling): (f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0);
    for i in 0..200 {
        let n = 1 + i % 32;
        let p = random_alg(n, &mut rng);
        // Points in the closed disk, a quarter of them on the circle.
        let r = if i % 4 == 0 {
            1.0
        } else {
            rng.random::<f64>().sqrt()
        };
        let xi = C64::from_polar(r, rng.random_range(0.0..TAU));
        let c = p.coeffs();
        let s1: f64 = (1..=n).map(|k| k as f64 * c[k].norm()).sum();
        let s2: f64 = (2..=n)
            .map(|k| (k * (k - 1)) as f64 * c[k].norm())
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        let g = exact_grid(n);
        let d1 = p.derivative().eval(xi);
        let k1 = deriv_via_kernel_on(&p, xi, g).unwrap();
        let k1b = deriv_via_kernel_on(&p, xi, 2 * g).unwrap();
        first = first.max((k1 - d1).norm() / s1);
        doubling = doubling.max((k1 - k1b).norm() / s1);
        let d2 = p.derivative().derivative().eval(xi);
        let k2 = second_deriv_via_kernel_on(&p, xi, g).unwrap();
        let k2b = second_deriv_via_kernel_on(&p, xi, 2 * g).unwrap();
        if n >= 2 {
            second = second.max((k2 - d2).norm() / s2);
            doubling = doubling.max((k2 - k2b).norm() / s2);
        } else {
            second = second.max(k2.norm());
        }

        let t = random_trig(n, &mut rng);
        let z = C64::cis(rng.random_range(0.0..TAU));
        let st: f64 = (-(n as i64)..=n as i64)
            .map(|k| k.unsigned_abs() as f64 * t.coeff(k).norm())
            .sum();
        let kt = trig_deriv_via_kernel_on(&t, z, g).unwrap();
        let ktb = trig_deriv_via_kernel_on(&t, z, 2 * g).unwrap();
        trig = trig.max((kt - t.z_derivative_at(z)).norm() / st);
        doubling = doubling.max((kt - ktb).norm() / st);
    }
    outcome(
        first <= 1e-9 && second <= 1e-9 && trig <= 1e-9 && doubling <= 1e-12,
        format!(
            "relative errors P' {first:.1e}, P'' {second:.1e}, T' {trig:.1e}; grid doubling {doubling:.1e}"
        ),
    )
}

const P_LADDER: [PExponent; 7] = [
    PExponent::Zero,
    PExponent::Finite(0.25),
    PExponent::Finite(0.5),
    PExponent::Finite(1.0),
    PExponent::Finite(2.0),
    PExponent::Finite(4.0),
    PExponent::Infinity,
];

fn bernstein_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = rng_from_seed(5);
    let mut worst_ratio: f64 = 0.0;
    let mut failures = 0;
    for i in 0..10_000 {
        let n = 1 + i % 16;
        let t = random_trig(n, &mut rng);
        for p in P_LADDER {
            let r = check_bernstein(&t, p, DEFAULT_TOL).unwrap();
            worst_ratio = worst_ratio.max(r.measured / r.bound);
            failures += usize::from(!r.pass);
        }
    }
    let mut worst_equality: f64 = 0.0;
    for n in 1..=16 {
        for p in P_LADDER {
            let r = check_bernstein(&TrigPoly::exponential(n), p, DEFAULT_TOL).unwrap();
            worst_equality = worst_equality.max((r.measured / r.bound - 1.0).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst_ratio <= 1.0 + 1e-8 && failures == 0 && worst_equality <= 1e-8 && secs < 300.0,
        format!(
            "max ratio {worst_ratio:.12}, {failures} failures over 70000 checks, e^(inx) deviation {worst_equality:.1e}, {secs:.1} s"
        ),
    )
}

fn mahler() -> Outcome {
    let mut rng = rng_from_seed(6);
    let cfg = QuadratureConfig::default();
    let (mut agree, mut ratio, mut equality): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut equality_cases = 0;
    for i in 0..500 {
        let n = 1 + i % 16;
        // Lifts of degree 2n: mixed roots for even i, all roots outside for odd i.
        let q = if i % 2 == 0 {
            roots_off_circle(2 * n, 1e-3, &mut rng)
        } else {
            roots_outside(2 * n, 1.0 + 1e-3, &mut rng).unwrap()
        };
        let t = TrigPoly::from_algebraic_lift(&q).unwrap();
        let jensen = mahler_trig(&t).unwrap();
        let quad = mahler_quadrature(&t, &cfg).unwrap();
        agree = agree.max((jensen - quad).abs() / jensen);
        let r = check_bernstein(&t, PExponent::Zero, DEFAULT_TOL).unwrap();
        ratio = ratio.max(r.measured / r.bound);
        if q.roots().unwrap().min_modulus().unwrap() >= 1.0 {
            equality_cases += 1;
            equality = equality.max((r.measured / r.bound - 1.0).abs());
        }
    }
    outcome(
        agree <= 1e-6 && ratio <= 1.0 + 1e-8 && equality <= 1e-6 && equality_cases >= 250,
        format!(
            "Jensen vs quadrature {agree:.1e}, max ratio {ratio:.10}, equality deviation {equality:.1e} over {equality_cases} cases"
        ),
    )
}

fn classical_suite() -> Outcome {
    let cfg = SweepConfig {
        checks: vec![
            CheckId::Malik,
            CheckId::Laguerre,
            CheckId::LaxMalik,
            CheckId::AnkenyRivlin,
            CheckId::Svdc,
            CheckId::GaussLucas,
        ],
        trials: 35,
        rho_list: vec![1.0, 1.5, 2.0],
        r_list: vec![1.5, 2.0, 3.0],
        ..SweepConfig::default()
    };
    let out = run_sweep(&cfg).unwrap();
    let random = out
        .records
        .iter()
        .filter(|r| r.family == Family::Random)
        .count();
    let failures = out.failures().count();
    let equality_ids = ["malik", "lax_malik", "svdc"];
    let worst_equality = out
        .records
        .iter()
        .filter(|r| r.family == Family::Extremal && equality_ids.contains(&r.check_id.as_str()))
        .map(|r| {
            r.report
                .as_ref()
                .map_or(f64::INFINITY, |x| x.relative_margin().abs())
        })
        .fold(0.0, f64::max);
    outcome(
        random >= 10_000 && failures == 0 && worst_equality <= 1e-8,
        format!(
            "{random} random trials, {failures} failures, equality margins <= {worst_equality:.1e}"
        ),
    )
}

fn embeddings() -> Outcome {
    let cfg = SweepConfig {
        checks: vec![
            CheckId::EmbeddingWiener,
            CheckId::EmbeddingBesovInf1,
            CheckId::EmbeddingBesov111,
        ],
        trials: 1000,
        ..SweepConfig::default()
    };
    let out = run_sweep(&cfg).unwrap();
    let failures = out.failures().count();
    let below = (1..=1000).all(|n| besov_111_bound_constant(n) < 8.0 * n as f64 / PI);

    let qcfg = QuadratureConfig::default();
    let mut bergman: f64 = 0.0;
    for n in [1, 2, 5, 9, 16] {
        let want: f64 = gamma_ratio_terms(n).iter().sum();
        for theta in [0.0, 1.1, 4.0] {
            let xi = C64::cis(theta);
            let got = area_integral(|u| gamma_kernel(n, xi, u).norm_sqr(), 2 * n, &qcfg);
            bergman = bergman.max((got - want).abs() / want);
        }
    }
    outcome(
        failures == 0 && below && bergman <= 1e-8,
        format!(
            "{} trials, {failures} failures; B1 constant < 8n/pi for n <= 1000: {below}; Bergman check {bergman:.1e}",
            out.records.len()
        ),
    )
}

fn boas() -> Outcome {
    let mut rng = rng_from_seed(9);
    let mut within = true;
    let mut worst_use: f64 = 0.0;
    let mut worst_halving: f64 = 0.0;
    for _ in 0..50 {
        let lambda = rng.random_range(0.5..5.0);
        let f = random_exponential_sum(5, lambda, &mut rng).unwrap();
        let full = boas_derivative(&f, 401).unwrap();
        let half = boas_derivative(&f, 201).unwrap();
        let stated = 8.0 * lambda / (PI * PI * 401.0) * f.coefficient_l1();
        for j in 0..100 {
            let x = -20.0 + 40.0 * j as f64 / 99.0;
            let r = (full.eval(x) - f.derivative_at(x)).norm();
            within &= r <= stated && r <= full.error_bound();
            worst_use = worst_use.max(r / stated);
        }
        worst_halving = worst_halving.max(half.error_bound() / full.error_bound());
    }
    outcome(
        within && worst_halving <= 2.0,
        format!("max residual / bound {worst_use:.3}, bound ratio K=201 vs 401 {worst_halving:.4}"),
    )
}

fn identities() -> Outcome {
    let mut rng = rng_from_seed(10);
    let mut logplus_ok = true;
    let mut worst_log: f64 = 0.0;
    for _ in 0..100 {
        let modulus = loop {
            let l: f64 = rng.random_range(-3.0..3.0);
            if l.abs() >= 1e-3 {
                break l.exp();
            }
        };
        let v = C64::from_polar(modulus, rng.random_range(0.0..TAU));
        let r = check_identity_logplus(v, 1e-8).unwrap();
        logplus_ok &= r.pass;
        worst_log = worst_log.max(r.measured / r.tol_scale);
    }
    let mut power_ok = true;
    let mut worst_pow: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let u = 5.0 * i as f64 / 9.0;
            let p = 0.1 * 100f64.powf(j as f64 / 9.0);
            let r = check_identity_power(u, p, 1e-8).unwrap();
            power_ok &= r.pass;
            worst_pow = worst_pow.max(r.measured / r.tol_scale);
        }
    }
    let mut chi_failures = 0;
    for (k, chi) in [
        ChiFunction::Power(0.3),
        ChiFunction::Power(2.0),
        ChiFunction::Log,
    ]
    .iter()
    .enumerate()
    {
        let mut rng = rng_from_seed(100 + k as u64);
        for i in 0..1000 {
            let t = random_trig(1 + i % 16, &mut rng);
            chi_failures += usize::from(!check_chi_version(&t, chi, DEFAULT_TOL).unwrap().pass);
        }
    }
    outcome(
        logplus_ok && power_ok && chi_failures == 0,
        format!(
            "log+ error {worst_log:.1e}, power error {worst_pow:.1e}, chi failures {chi_failures}/3000"
        ),
    )
}

fn negative_control() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    std::fs::write(
        &config,
        r#"{"checks":["bernstein"],"degree_max":4,"trials":3,"p_list":["inf"]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_polynorm"))
        .arg("verify")
        .arg(&config)
        .arg("--debug-shrink-bound")
        .arg("--out")
        .arg(dir.path().join("run"))
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&out.stderr);
    let code = out.status.code();
    let witness = stderr
        .lines()
        .any(|l| l.starts_with("witness: ") && l.contains("witness_input"));
    outcome(
        code == Some(1) && witness,
        format!("exit code {code:?}, witness emitted: {witness}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("riesz exactness", riesz_exactness),
        ("riesz weights", riesz_weights),
        ("euler limit", euler_limit),
        ("kernel representations", kernel_representations),
        ("bernstein-arestov sweep", bernstein_sweep),
        ("mahler measure", mahler),
        (
            "malik, laguerre, lax-malik, ankeny-rivlin, svdc, gauss-lucas",
            classical_suite,
        ),
        ("embedding constants", embeddings),
        ("boas series", boas),
        ("identities and chi-version", identities),
        ("negative control", negative_control),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.pass;
        println!(
            "{:>2} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
