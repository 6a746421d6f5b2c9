//! Browser bindings. Every export returns a JSON string; errors surface as
//! JS exceptions carrying the library error message.

use ballerg::dynamics::{CesaroTrace, LimitCandidate};
use ballerg::experiments::z_points;
use ballerg::functions::{Dictionary, PolyFn, SeminormSpec};
use ballerg::moebius::{alpha, rho_bound, AutomorphismParam};
use ballerg::spaces::{SpaceKind, Vector};
use ballerg::symbols::{iterate, Symbol};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn js(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_json(v: &impl Serialize) -> Result<String, JsValue> {
    serde_json::to_string(v).map_err(js)
}

fn plane(x: f64, y: f64) -> Vector {
    Vector::from_real(SpaceKind::L2, &[x, y])
}

fn xy(v: &Vector) -> [f64; 2] {
    [v.coord(1).re, v.coord(2).re]
}

#[derive(Serialize)]
struct Grid {
    /// Images of the circles `|x| = r·j/rings` and of the spokes.
    curves: Vec<Vec<[f64; 2]>>,
    rho: f64,
    max_norm: f64,
}

/// Image under `α_a`, `a = (ax, ay)`, of a polar grid of the disc of radius
/// `r` in the real plane spanned by `e₁, e₂`.
#[wasm_bindgen]
pub fn moebius_grid(ax: f64, ay: f64, r: f64, rings: u32, spokes: u32) -> Result<String, JsValue> {
    let p = AutomorphismParam::new(plane(ax, ay)).map_err(js)?;
    let rho = rho_bound(r).map_err(js)?;
    let samples = 96;
    let mut curves = Vec::new();
    let mut max_norm: f64 = 0.0;
    let mut push = |pts: Vec<Vector>| -> Result<(), JsValue> {
        let mut curve = Vec::with_capacity(pts.len());
        for x in &pts {
            let y = alpha(&p, x).map_err(js)?;
            max_norm = max_norm.max(y.norm());
            curve.push(xy(&y));
        }
        curves.push(curve);
        Ok(())
    };
    for j in 1..=rings.max(1) {
        let s = r * j as f64 / rings.max(1) as f64;
        push(
            (0..=samples)
                .map(|i| polar(s, i as f64 / samples as f64))
                .collect(),
        )?;
    }
    for k in 0..spokes {
        let turn = k as f64 / spokes as f64;
        push(
            (0..=samples / 2)
                .map(|i| polar(r * i as f64 / (samples / 2) as f64, turn))
                .collect(),
        )?;
    }
    to_json(&Grid {
        curves,
        rho,
        max_norm,
    })
}

fn polar(s: f64, turn: f64) -> Vector {
    let t = std::f64::consts::TAU * turn;
    plane(s * t.cos(), s * t.sin())
}

#[derive(Serialize)]
struct OrbitView {
    label: String,
    points: Vec<[f64; 2]>,
    norms: Vec<f64>,
}

/// Orbit of `(x, y)` under a symbol given in its JSON form, projected on
/// the first two coordinates.
#[wasm_bindgen]
pub fn orbit(symbol_json: &str, x: f64, y: f64, n: usize) -> Result<String, JsValue> {
    let s: Symbol = serde_json::from_str(symbol_json).map_err(js)?;
    let o = iterate(&s, &plane(x, y), n).map_err(js)?;
    to_json(&OrbitView {
        label: s.label(),
        points: o.points.iter().map(xy).collect(),
        norms: o.norms,
    })
}

#[derive(Serialize)]
struct TraceView {
    label: String,
    n: Vec<usize>,
    power: Vec<f64>,
    cesaro: Vec<f64>,
}

fn view(label: String, t: &CesaroTrace) -> TraceView {
    TraceView {
        label,
        n: t.values.iter().map(|v| v.n).collect(),
        power: t.values.iter().map(|v| v.dist_power).collect(),
        cesaro: t.values.iter().map(|v| v.dist_cesaro).collect(),
    }
}

/// Distance traces of `C_Pⁿ` and its Cesàro means to `C₀` for `P(x) = (x_n²)`
/// on the points `(1 − 10⁻ᵉ)e₁`, `e = 1..=max_exp`, with `f = x₁`.
#[wasm_bindgen]
pub fn square_trace(max_exp: u32, n_max: usize) -> Result<String, JsValue> {
    let exps: Vec<u32> = (1..=max_exp.clamp(1, 15)).collect();
    let spec = z_points(&exps).map_err(js)?;
    let dict = Dictionary::single("x1", PolyFn::coordinate(1), 1.0);
    let t = CesaroTrace::compute(
        &Symbol::CoordinateSquare,
        "x1",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::L2),
        n_max,
    )
    .map_err(js)?;
    to_json(&view(format!("square map, m ≤ 1e{}", exps.len()), &t))
}

/// Distance traces of `C_αⁿ` and its Cesàro means to `½(C_α + id)` for
/// `a = (ax, ay)`, over linear and quadratic monomials on a sampled sphere.
#[wasm_bindgen]
pub fn alpha_trace(
    ax: f64,
    ay: f64,
    t: f64,
    count: usize,
    seed: u32,
    n_max: usize,
) -> Result<String, JsValue> {
    let a = plane(ax, ay);
    let dict = Dictionary::monomials(SpaceKind::L2, 2, 1, 2);
    let spec = SeminormSpec::sphere(SpaceKind::L2, 2, t, count.max(1), u64::from(seed));
    let tr = CesaroTrace::compute(
        &Symbol::moebius(&a),
        "monomials",
        &dict,
        &spec,
        &LimitCandidate::HalfSumWithIdentity(a.clone()),
        n_max,
    )
    .map_err(js)?;
    to_json(&view(format!("α_a, a = ({ax}, {ay})"), &tr))
}
