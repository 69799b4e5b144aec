//! Browser demo: three operations on a trigonometric polynomial, each taking
//! the polynomial as JSON (`{"type":"trig","degree":n,"coeffs":[[re,im],...]}`
//! or the `alg` form) and returning a JSON string for the page to draw.

use std::f64::consts::TAU;

use polynorm::inequalities::PExponent;
use polynorm::interp::riesz_measure;
use polynorm::norms::{lp_norm, mahler_trig, sup_norm, QuadratureConfig};
use polynorm::{Polynomial, TrigPoly};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse_trig(json: &str) -> Result<TrigPoly, String> {
    match Polynomial::from_json(json).map_err(|e| e.to_string())? {
        Polynomial::Trig(t) => Ok(t),
        Polynomial::Alg(p) => Ok(p.to_trig()),
        Polynomial::ExpSum(_) => Err("expected a trig or alg polynomial".into()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo output serializes")
}

#[derive(Serialize)]
struct Profile {
    degree: usize,
    x: Vec<f64>,
    modulus: Vec<f64>,
    derivative_over_n: Vec<f64>,
    sup: f64,
    sup_derivative: f64,
    ratio: f64,
}

/// `|T(x)|` and `|T'(x)| / n` on `samples` points, with the Bernstein ratio
/// `||T'||_inf / (n ||T||_inf)`.
pub fn circle_profile_json(poly: &str, samples: usize) -> Result<String, String> {
    let t = parse_trig(poly)?;
    if t.is_zero() {
        return Err("zero polynomial".into());
    }
    let n = t.degree().max(1) as f64;
    let d = t.derivative();
    let samples = samples.clamp(8, 8192);
    let x: Vec<f64> = (0..=samples)
        .map(|j| TAU * j as f64 / samples as f64)
        .collect();
    let sup = sup_norm(&t);
    let sup_derivative = sup_norm(&d);
    Ok(to_json(&Profile {
        degree: t.degree(),
        modulus: x.iter().map(|&x| t.eval(x).norm()).collect(),
        derivative_over_n: x.iter().map(|&x| d.eval(x).norm() / n).collect(),
        x,
        sup,
        sup_derivative,
        ratio: sup_derivative / (n * sup),
    }))
}

#[derive(Serialize)]
struct RieszDemo {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    total_variation: f64,
    convolution: [f64; 2],
    direct: [f64; 2],
    residual: f64,
}

/// The Riesz measure of the polynomial's degree and `T'(x)` computed both
/// as `T * mu_n` and directly.
pub fn riesz_json(poly: &str, x: f64) -> Result<String, String> {
    let t = parse_trig(poly)?;
    let mu = riesz_measure(t.degree().max(1)).map_err(|e| e.to_string())?;
    let conv = mu.convolve(&t, x);
    let direct = t.derivative().eval(x);
    Ok(to_json(&RieszDemo {
        nodes: mu.nodes(),
        weights: mu.atoms().iter().map(|a| a.0.re).collect(),
        total_variation: mu.total_variation(),
        convolution: [conv.re, conv.im],
        direct: [direct.re, direct.im],
        residual: (conv - direct).norm(),
    }))
}

#[derive(Serialize)]
struct Rung {
    p: String,
    norm: f64,
    derivative_norm: f64,
    ratio: f64,
}

/// `||T||_p`, `||T'||_p` and `||T'||_p / (n ||T||_p)` for
/// `p = 0, 1/4, 1/2, 1, 2, 4, inf`.
pub fn norm_ladder_json(poly: &str) -> Result<String, String> {
    let t = parse_trig(poly)?;
    if t.is_zero() {
        return Err("zero polynomial".into());
    }
    let cfg = QuadratureConfig::default();
    let n = t.degree() as f64;
    let d = t.derivative();
    let norm = |f: &TrigPoly, p: PExponent| -> Result<f64, String> {
        if f.is_zero() {
            return Ok(0.0);
        }
        match p {
            PExponent::Zero => mahler_trig(f),
            PExponent::Finite(q) => lp_norm(f, q, &cfg),
            PExponent::Infinity => Ok(sup_norm(f)),
        }
        .map_err(|e| e.to_string())
    };
    let mut rungs = Vec::new();
    for p in ["0", "0.25", "0.5", "1", "2", "4", "inf"] {
        let e: PExponent = p.parse().map_err(|e: polynorm::Error| e.to_string())?;
        let a = norm(&t, e)?;
        let b = norm(&d, e)?;
        rungs.push(Rung {
            p: p.to_string(),
            norm: a,
            derivative_norm: b,
            ratio: if n > 0.0 { b / (n * a) } else { 0.0 },
        });
    }
    Ok(to_json(&rungs))
}

#[wasm_bindgen]
pub fn circle_profile(poly: &str, samples: usize) -> Result<String, JsValue> {
    circle_profile_json(poly, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn riesz(poly: &str, x: f64) -> Result<String, JsValue> {
    riesz_json(poly, x).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn norm_ladder(poly: &str) -> Result<String, JsValue> {
    norm_ladder_json(poly).map_err(|e| JsValue::from_str(&e))
}
