//! Powers and Cesàro means of composition operators `C_φ f = f ∘ φ`,
//! measured against candidate limit operators on finite seminorms.
//!
//! The Cesàro mean is `T_[n] = (1/n) Σ_{k=0}^{n-1} T^k`, so `T_[1] = id`.
//! Distances are computed over a finite dictionary and a finite point set;
//! they are lower bounds of the corresponding operator seminorms and every
//! report calls them "dictionary operator distance".

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::{compose_exact, eval, Dictionary, PolyFn, SeminormSpec};
use crate::moebius::{alpha, AutomorphismParam};
use crate::par;
use crate::spaces::{SpaceKind, Vector};
use crate::symbols::{Symbol, DEFAULT_DIM_CAP};

/// Distances at or below this are treated as exact zeros by rate fits.
pub const CONVERGED_FLOOR: f64 = 1e-14;

/// Slack on the recorded sup estimates of a normalized dictionary.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Compensated (Neumaier) summation of complex values.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier_step(self.sum.re, v.re, &mut self.comp.re);
        self.sum.im = neumaier_step(self.sum.im, v.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: f64, v: f64, comp: &mut f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}

type CustomLimit = Arc<dyn Fn(&PolyFn, &Vector) -> Complex64 + Send + Sync>;

/// The operator a sequence of powers or Cesàro means is compared against.
#[derive(Clone)]
pub enum LimitCandidate {
    /// `C_a : f ↦ f(a)` (a constant function).
    EvalAtPoint(Vector),
    /// `½(C_{α_a} + id)`.
    HalfSumWithIdentity(Vector),
    Custom {
        label: String,
        map: CustomLimit,
    },
}

impl LimitCandidate {
    /// The zero operator; distances against it are plain seminorm growth.
    pub fn zero() -> Self {
        LimitCandidate::Custom {
            label: "zero".into(),
            map: Arc::new(|_, _| Complex64::new(0.0, 0.0)),
        }
    }

    /// `C₀` in the given space.
    pub fn at_origin(space: SpaceKind) -> Self {
        LimitCandidate::EvalAtPoint(Vector::zeros(space, 1))
    }

    pub fn label(&self) -> String {
        match self {
            LimitCandidate::EvalAtPoint(a) if a.norm() == 0.0 => "C_0".into(),
            LimitCandidate::EvalAtPoint(_) => "C_a".into(),
            LimitCandidate::HalfSumWithIdentity(_) => "(C_alpha_a + id)/2".into(),
            LimitCandidate::Custom { label, .. } => label.clone(),
        }
    }

    fn bind(&self) -> Result<BoundLimit<'_>> {
        Ok(match self {
            LimitCandidate::EvalAtPoint(a) => BoundLimit::Point(a),
            LimitCandidate::HalfSumWithIdentity(a) => {
                BoundLimit::Half(AutomorphismParam::new(a.clone())?)
            }
            LimitCandidate::Custom { map, .. } => BoundLimit::Custom(map),
        })
    }

    /// `(L f)(x)`.
    pub fn value(&self, f: &PolyFn, x: &Vector) -> Result<Complex64> {
        self.bind()?.value(f, x)
    }
}

impl fmt::Debug for LimitCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitCandidate::EvalAtPoint(a) => f.debug_tuple("EvalAtPoint").field(a).finish(),
            LimitCandidate::HalfSumWithIdentity(a) => {
                f.debug_tuple("HalfSumWithIdentity").field(a).finish()
            }
            LimitCandidate::Custom { label, .. } => {
                f.debug_struct("Custom").field("label", label).finish()
            }
        }
    }
}

enum BoundLimit<'a> {
    Point(&'a Vector),
    Half(AutomorphismParam),
    Custom(&'a CustomLimit),
}

impl BoundLimit<'_> {
    fn value(&self, f: &PolyFn, x: &Vector) -> Result<Complex64> {
        Ok(match self {
            BoundLimit::Point(a) => eval(f, a),
            BoundLimit::Half(p) => (eval(f, &alpha(p, x)?) + eval(f, x)) * 0.5,
            BoundLimit::Custom(map) => map(f, x),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Power,
    Cesaro,
}

fn check_power_inputs(s: &Symbol, spec: &SeminormSpec) -> Result<Vec<Vector>> {
    let pts = spec.realize()?;
    if let Some(space) = spec.space() {
        s.validate(space)?;
    }
    Ok(pts)
}

fn compose_iterated(f: &PolyFn, s: &Symbol, n: usize) -> Result<PolyFn> {
    let mut g = f.clone();
    for _ in 0..n {
        if g.is_zero() {
            break;
        }
        g = compose_exact(&g, s)?;
    }
    Ok(g)
}

fn orbit_point(s: &Symbol, x: &Vector, n: usize) -> Result<Vector> {
    let mut y = x.clone();
    for _ in 0..n {
        y = s.apply_unchecked(&y, DEFAULT_DIM_CAP)?;
    }
    Ok(y)
}

/// Values of `C_φⁿ f = f ∘ φⁿ` on the realized points of `spec`.
///
/// Polynomial symbols go through exact composition; everything else (and
/// polynomial compositions whose exponents overflow) is evaluated along
/// the orbit of each point.
pub fn power_apply(
    f: &PolyFn,
    s: &Symbol,
    n: usize,
    spec: &SeminormSpec,
) -> Result<Vec<Complex64>> {
    let pts = check_power_inputs(s, spec)?;
    if s.is_polynomial() {
        if let Ok(g) = compose_iterated(f, s, n) {
            return Ok(par::map_slice(&pts, |x| eval(&g, x)));
        }
    }
    par::map_slice(&pts, |x| orbit_point(s, x, n).map(|y| eval(f, &y)))
        .into_iter()
        .collect()
}

/// Values of `(C_φ)_[n] f` on the realized points of `spec`.
pub fn cesaro_apply(
    f: &PolyFn,
    s: &Symbol,
    n: usize,
    spec: &SeminormSpec,
) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("Cesàro mean needs n ≥ 1".into()));
    }
    let pts = check_power_inputs(s, spec)?;
    par::map_slice(&pts, |x| {
        let mut sum = CompensatedSum::default();
        let mut y = x.clone();
        for k in 0..n {
            sum.add(eval(f, &y));
            if k + 1 < n {
                y = s.apply_unchecked(&y, DEFAULT_DIM_CAP)?;
            }
        }
        Ok(sum.value() / n as f64)
    })
    .into_iter()
    .collect()
}

/// Per-point deviations `(max_f |f(φⁿx) − Lf(x)|, max_f |T_[n]f(x) − Lf(x)|)`
/// for `n = 1..=n_max`.
fn point_series(
    s: &Symbol,
    polys: &[&PolyFn],
    limit: &BoundLimit<'_>,
    x: &Vector,
    n_max: usize,
    dim_cap: usize,
) -> Result<Vec<(f64, f64)>> {
    let targets: Vec<Complex64> = polys
        .iter()
        .map(|f| limit.value(f, x))
        .collect::<Result<_>>()?;
    let mut sums = vec![CompensatedSum::default(); polys.len()];
    let mut cur = x.clone();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        for (sum, f) in sums.iter_mut().zip(polys) {
            sum.add(eval(f, &cur));
        }
        cur = s.apply_unchecked(&cur, dim_cap)?;
        let mut dp: f64 = 0.0;
        let mut dc: f64 = 0.0;
        for ((f, sum), target) in polys.iter().zip(&sums).zip(&targets) {
            dp = dp.max((eval(f, &cur) - target).norm());
            dc = dc.max((sum.value() / n as f64 - target).norm());
        }
        out.push((dp, dc));
    }
    Ok(out)
}

fn series_over_points(
    s: &Symbol,
    dict: &Dictionary,
    spec: &SeminormSpec,
    limit: &LimitCandidate,
    n_max: usize,
    dim_cap: usize,
) -> Result<Vec<(f64, f64)>> {
    if dict.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    let pts = check_power_inputs(s, spec)?;
    let bound = limit.bind()?;
    let polys: Vec<&PolyFn> = dict.polys().collect();
    let per_point: Vec<Vec<(f64, f64)>> =
        par::map_slice(&pts, |x| point_series(s, &polys, &bound, x, n_max, dim_cap))
            .into_iter()
            .collect::<Result<_>>()?;
    let mut out = vec![(0.0f64, 0.0f64); n_max];
    for series in &per_point {
        for (acc, (p, c)) in out.iter_mut().zip(series) {
            acc.0 = acc.0.max(*p);
            acc.1 = acc.1.max(*c);
        }
    }
    Ok(out)
}

/// Dictionary operator distance between `C_φⁿ` (or `(C_φ)_[n]`) and `limit`:
/// the max over dictionary entries of the seminorm of the difference.
pub fn operator_distance(
    s: &Symbol,
    n: usize,
    mode: Mode,
    dict: &Dictionary,
    spec: &SeminormSpec,
    limit: &LimitCandidate,
) -> Result<f64> {
    if dict.is_empty() {
        return Err(Error::EmptyDictionary);
    }
    dict.check_normalized(NORMALIZATION_TOL)?;
    match (mode, n) {
        (Mode::Cesaro, 0) => Err(Error::InvalidParameter("Cesàro mean needs n ≥ 1".into())),
        (Mode::Power, 0) => {
            let pts = check_power_inputs(s, spec)?;
            let bound = limit.bind()?;
            let devs: Vec<f64> = par::map_slice(&pts, |x| {
                dict.polys().try_fold(0.0f64, |m, f| {
                    Ok(m.max((eval(f, x) - bound.value(f, x)?).norm()))
                })
            })
            .into_iter()
            .collect::<Result<_>>()?;
            Ok(devs.into_iter().fold(0.0, f64::max))
        }
        _ => {
            let series = series_over_points(s, dict, spec, limit, n, DEFAULT_DIM_CAP)?;
            let (p, c) = series[n - 1];
            Ok(if mode == Mode::Power { p } else { c })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub n: usize,
    pub dist_power: f64,
    pub dist_cesaro: f64,
}

/// Per-`n` dictionary operator distances of powers and Cesàro means to a
/// limit candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroTrace {
    pub symbol: Symbol,
    pub f_label: String,
    pub dictionary_labels: Vec<String>,
    pub limit: String,
    pub spec: SeminormSpec,
    pub values: Vec<TracePoint>,
}

impl CesaroTrace {
    pub fn compute(
        s: &Symbol,
        f_label: impl Into<String>,
        dict: &Dictionary,
        spec: &SeminormSpec,
        limit: &LimitCandidate,
        n_max: usize,
    ) -> Result<CesaroTrace> {
        let series = series_over_points(s, dict, spec, limit, n_max, DEFAULT_DIM_CAP)?;
        Ok(CesaroTrace {
            symbol: s.clone(),
            f_label: f_label.into(),
            dictionary_labels: dict.labels(),
            limit: limit.label(),
            spec: spec.clone(),
            values: series
                .into_iter()
                .enumerate()
                .map(|(i, (p, c))| TracePoint {
                    n: i + 1,
                    dist_power: p,
                    dist_cesaro: c,
                })
                .collect(),
        })
    }

    pub fn column(&self, column: Mode) -> Vec<(usize, f64)> {
        self.values
            .iter()
            .map(|v| {
                (
                    v.n,
                    if column == Mode::Power {
                        v.dist_power
                    } else {
                        v.dist_cesaro
                    },
                )
            })
            .collect()
    }

    /// CSV with header `n,dist_power,dist_cesaro`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for v in &self.values {
            w.serialize(v).map_err(|e| Error::Io(e.to_string()))?;
        }
        if self.values.is_empty() {
            w.write_record(["n", "dist_power", "dist_cesaro"])
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

/// `(1/N) ‖Σ_{j=0}^{N-1} Bʲ(e_N)‖_{ℓ₁}` for the backward shift `B`.
pub fn backward_shift_cesaro_l1_norm(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut sum = vec![CompensatedSum::default(); n];
    let mut v = Vector::basis(SpaceKind::L1, n, n);
    for _ in 0..n {
        for (acc, z) in sum.iter_mut().zip(v.coords()) {
            acc.add(*z);
        }
        // B is linear, so it acts on e_N even though e_N sits on the sphere
        v = Symbol::BackwardShift
            .apply_unchecked(&v, usize::MAX)
            .expect("backward shift is total");
    }
    let total: Vec<Complex64> = sum.iter().map(CompensatedSum::value).collect();
    SpaceKind::L1.norm_of(&total) / n as f64
}

/// Coefficients `(c_id, c_α)` with `(C_{α_a})_[n] = c_id·id + c_α·C_{α_a}`.
/// Even powers of an involution are the identity, so among `k = 0..n−1`
/// there are `⌈n/2⌉` identities and `⌊n/2⌋` copies of `C_{α_a}`.
pub fn involution_cesaro_coefficients(n: usize) -> (f64, f64) {
    assert!(n >= 1, "Cesàro mean needs n ≥ 1");
    let n_id = n.div_ceil(2) as f64;
    let n_alpha = (n / 2) as f64;
    (n_id / n as f64, n_alpha / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    /// Fitted geometric ratio `e^{slope}`.
    pub rate: f64,
    /// Fitted prefactor `e^{intercept}`.
    pub constant: f64,
    /// RMS residual of the log-linear fit.
    pub residual: f64,
    pub window: (usize, usize),
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum RateFitOutcome {
    Fitted(RateFit),
    /// Every distance in the window is below [`CONVERGED_FLOOR`].
    AlreadyConverged,
}

impl RateFitOutcome {
    pub fn rate(&self) -> Option<f64> {
        match self {
            RateFitOutcome::Fitted(f) => Some(f.rate),
            RateFitOutcome::AlreadyConverged => None,
        }
    }
}

/// Least-squares fit of `log(dist)` against `n` over the inclusive window,
/// ignoring distances below [`CONVERGED_FLOOR`].
pub fn rate_fit(
    trace: &CesaroTrace,
    column: Mode,
    window: (usize, usize),
) -> Result<RateFitOutcome> {
    let in_window: Vec<(usize, f64)> = trace
        .column(column)
        .into_iter()
        .filter(|(n, _)| *n >= window.0 && *n <= window.1)
        .collect();
    if in_window.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no trace entries in window {window:?}"
        )));
    }
    let pts: Vec<(f64, f64)> = in_window
        .iter()
        .filter(|(_, d)| *d > CONVERGED_FLOOR)
        .map(|(n, d)| (*n as f64, d.ln()))
        .collect();
    if pts.is_empty() {
        return Ok(RateFitOutcome::AlreadyConverged);
    }
    if pts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} positive distances in window, need 3",
            pts.len()
        )));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(RateFitOutcome::Fitted(RateFit {
        rate: slope.exp(),
        constant: intercept.exp(),
        residual,
        window,
        points: pts.len(),
    }))
}

/// `max n·dist_n` over the window: the smallest `C` with `dist_n ≤ C/n` there.
pub fn harmonic_constant(trace: &CesaroTrace, column: Mode, window: (usize, usize)) -> f64 {
    trace
        .column(column)
        .into_iter()
        .filter(|(n, _)| *n >= window.0 && *n <= window.1)
        .map(|(n, d)| n as f64 * d)
        .fold(0.0, f64::max)
}

pub const DEFAULT_VERDICT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Converges,
    Persists,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Cesàro distances in the window are below `tol`.
    CesaroBelowTol,
    /// Power distances in the window are below `tol`; Cesàro means of a
    /// convergent sequence converge to the same limit.
    PowerBelowTol,
    /// Cesàro distances stay above `10·tol`.
    BoundedAway,
    Mixed,
    TooShort,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub evidence: Evidence,
    pub window: (usize, usize),
    pub tol: f64,
    pub cesaro_min: f64,
    pub cesaro_max: f64,
    pub power_max: f64,
}

/// Desk-scale ergodicity evidence from the last third of a trace.
pub fn ergodicity_verdict(trace: &CesaroTrace, tol: f64) -> Verdict {
    let vals = &trace.values;
    let first_n = vals.first().map_or(0, |v| v.n);
    let last_n = vals.last().map_or(0, |v| v.n);
    if vals.len() < 10 {
        return Verdict {
            kind: VerdictKind::Inconclusive,
            evidence: Evidence::TooShort,
            window: (first_n, last_n),
            tol,
            cesaro_min: f64::NAN,
            cesaro_max: f64::NAN,
            power_max: f64::NAN,
        };
    }
    let start = vals.len() - vals.len().div_ceil(3);
    let w = &vals[start..];
    let cesaro_max = w.iter().map(|v| v.dist_cesaro).fold(0.0, f64::max);
    let cesaro_min = w
        .iter()
        .map(|v| v.dist_cesaro)
        .fold(f64::INFINITY, f64::min);
    let power_max = w.iter().map(|v| v.dist_power).fold(0.0, f64::max);
    let settled = w.last().unwrap().dist_cesaro <= w[0].dist_cesaro + tol;
    let (kind, evidence) = if cesaro_max < tol && settled {
        (VerdictKind::Converges, Evidence::CesaroBelowTol)
    } else if power_max < tol {
        (VerdictKind::Converges, Evidence::PowerBelowTol)
    } else if cesaro_min > 10.0 * tol {
        (VerdictKind::Persists, Evidence::BoundedAway)
    } else {
        (VerdictKind::Inconclusive, Evidence::Mixed)
    };
    Verdict {
        kind,
        evidence,
        window: (w[0].n, last_n),
        tol,
        cesaro_min,
        cesaro_max,
        power_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::MultiIndex;
    use crate::spaces::PointSet;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn explicit(space: SpaceKind, pts: &[&[f64]]) -> SeminormSpec {
        let points = pts.iter().map(|p| Vector::from_real(space, p)).collect();
        SeminormSpec::ExplicitPoints {
            points: PointSet::new("pts", points).unwrap(),
        }
    }

    #[test]
    fn power_zero_is_identity() {
        let spec = SeminormSpec::sphere(SpaceKind::L2, 3, 0.5, 20, 1);
        let f = PolyFn::coordinate(2).add(&PolyFn::monomial(MultiIndex::new([(1, 2)]), c(0.5)));
        let direct: Vec<Complex64> = spec
            .realize()
            .unwrap()
            .iter()
            .map(|x| eval(&f, x))
            .collect();
        assert_eq!(
            power_apply(&f, &Symbol::ForwardShift, 0, &spec).unwrap(),
            direct
        );
        assert_eq!(
            power_apply(
                &f,
                &Symbol::moebius(&Vector::from_real(SpaceKind::L2, &[0.3])),
                0,
                &spec
            )
            .unwrap(),
            direct
        );
    }

    #[test]
    fn square_powers_at_z_m() {
        let m = 10.0;
        let spec = explicit(SpaceKind::L2, &[&[1.0 - 1.0 / m]]);
        for k in 0..6 {
            let v = power_apply(&PolyFn::coordinate(1), &Symbol::CoordinateSquare, k, &spec)
                .unwrap()[0];
            let expected = (1.0 - 1.0 / m).powi(1 << k);
            assert!((v.re - expected).abs() < 1e-15, "k={k}");
        }
    }

    #[test]
    fn square_powers_fall_back_to_orbits_on_overflow() {
        let spec = explicit(SpaceKind::L2, &[&[0.999_999]]);
        let v =
            power_apply(&PolyFn::coordinate(1), &Symbol::CoordinateSquare, 40, &spec).unwrap()[0];
        assert_eq!(v, c(0.0));
    }

    #[test]
    fn forward_shift_kills_monomials() {
        let spec = SeminormSpec::sphere(SpaceKind::C0, 6, 0.9, 30, 2);
        let h = PolyFn::monomial(MultiIndex::new([(2, 1), (4, 2)]), c(1.0));
        assert!(power_apply(&h, &Symbol::ForwardShift, 4, &spec)
            .unwrap()
            .iter()
            .all(|v| *v == c(0.0)));
        assert!(power_apply(&h, &Symbol::ForwardShift, 1, &spec)
            .unwrap()
            .iter()
            .any(|v| *v != c(0.0)));
    }

    #[test]
    fn cesaro_of_constant_is_constant() {
        let spec = SeminormSpec::sphere(SpaceKind::L2, 4, 0.6, 10, 9);
        let one = PolyFn::constant(c(1.0));
        for n in [1, 2, 7] {
            for v in cesaro_apply(&one, &Symbol::CoordinateSquare, n, &spec).unwrap() {
                assert!((v - c(1.0)).norm() < 1e-15);
            }
        }
        assert!(cesaro_apply(&one, &Symbol::CoordinateSquare, 0, &spec).is_err());
    }

    #[test]
    fn cesaro_square_closed_form() {
        let m = 100.0;
        let spec = explicit(SpaceKind::L2, &[&[1.0 - 1.0 / m]]);
        for n in 1..=12 {
            let v = cesaro_apply(&PolyFn::coordinate(1), &Symbol::CoordinateSquare, n, &spec)
                .unwrap()[0];
            let expected: f64 =
                (0..n).map(|k| (1.0 - 1.0 / m).powi(1 << k)).sum::<f64>() / n as f64;
            assert!((v.re - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn compensated_sum_is_exact_on_ones() {
        let mut s = CompensatedSum::default();
        for _ in 0..10_000 {
            s.add(c(1.0));
        }
        assert_eq!(s.value(), c(10_000.0));
        let mut s = CompensatedSum::default();
        for v in [1e16, 1.0, -1e16] {
            s.add(c(v));
        }
        assert_eq!(s.value(), c(1.0));
    }

    #[test]
    fn backward_shift_norm_values() {
        assert_eq!(backward_shift_cesaro_l1_norm(1), 1.0);
        assert_eq!(backward_shift_cesaro_l1_norm(10), 1.0);
        assert_eq!(backward_shift_cesaro_l1_norm(100), 1.0);
    }

    #[test]
    fn involution_coefficients() {
        assert_eq!(involution_cesaro_coefficients(1), (1.0, 0.0));
        assert_eq!(involution_cesaro_coefficients(4), (0.5, 0.5));
        assert_eq!(involution_cesaro_coefficients(5), (0.6, 0.4));
    }

    fn trace_from(dists: &[f64]) -> CesaroTrace {
        CesaroTrace {
            symbol: Symbol::identity(),
            f_label: "test".into(),
            dictionary_labels: vec![],
            limit: "C_0".into(),
            spec: SeminormSpec::sphere(SpaceKind::L2, 1, 0.5, 1, 0),
            values: dists
                .iter()
                .enumerate()
                .map(|(i, d)| TracePoint {
                    n: i + 1,
                    dist_power: *d,
                    dist_cesaro: *d,
                })
                .collect(),
        }
    }

    #[test]
    fn rate_fit_recovers_geometric_decay() {
        let dists: Vec<f64> = (1..=30).map(|n| 3.0 * 0.7f64.powi(n)).collect();
        let fit = rate_fit(&trace_from(&dists), Mode::Power, (1, 30)).unwrap();
        let RateFitOutcome::Fitted(fit) = fit else {
            panic!("expected a fit")
        };
        assert!((fit.rate - 0.7).abs() < 1e-12);
        assert!((fit.constant - 3.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn rate_fit_edge_cases() {
        let zeros = trace_from(&[0.0; 12]);
        assert_eq!(
            rate_fit(&zeros, Mode::Cesaro, (1, 12)).unwrap(),
            RateFitOutcome::AlreadyConverged
        );
        let short = trace_from(&[0.5, 0.25, 0.0, 0.0]);
        assert!(matches!(
            rate_fit(&short, Mode::Power, (1, 4)),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            rate_fit(&short, Mode::Power, (10, 20)),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn verdicts() {
        let conv = trace_from(&[1.0, 0.5, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(ergodicity_verdict(&conv, 1e-6).kind, VerdictKind::Converges);
        let stuck = trace_from(&[0.99; 20]);
        let v = ergodicity_verdict(&stuck, 1e-6);
        assert_eq!(v.kind, VerdictKind::Persists);
        assert_eq!(v.window, (14, 20));
        assert_eq!(
            ergodicity_verdict(&trace_from(&[0.0; 5]), 1e-6).evidence,
            Evidence::TooShort
        );
    }

    #[test]
    fn operator_distance_checks_dictionary() {
        let spec = SeminormSpec::sphere(SpaceKind::L2, 2, 0.5, 5, 0);
        let empty = Dictionary::new(vec![]).unwrap();
        let lim = LimitCandidate::at_origin(SpaceKind::L2);
        assert_eq!(
            operator_distance(&Symbol::scalar(0.5), 1, Mode::Power, &empty, &spec, &lim),
            Err(Error::EmptyDictionary)
        );
        let big = Dictionary::single("2x1", PolyFn::coordinate(1).scale(c(2.0)), 2.0);
        assert!(
            operator_distance(&Symbol::scalar(0.5), 1, Mode::Power, &big, &spec, &lim).is_err()
        );
    }

    #[test]
    fn operator_distance_for_scalar_map() {
        let spec = explicit(SpaceKind::L2, &[&[0.8, 0.0]]);
        let dict = Dictionary::single("x1", PolyFn::coordinate(1), 1.0);
        let lim = LimitCandidate::at_origin(SpaceKind::L2);
        let s = Symbol::scalar(0.5);
        assert_eq!(
            operator_distance(&s, 0, Mode::Power, &dict, &spec, &lim).unwrap(),
            0.8
        );
        assert_eq!(
            operator_distance(&s, 3, Mode::Power, &dict, &spec, &lim).unwrap(),
            0.1
        );
        // (0.8 + 0.4 + 0.2)/3
        let d = operator_distance(&s, 3, Mode::Cesaro, &dict, &spec, &lim).unwrap();
        assert!((d - 1.4 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn constant_symbol_powers_hit_the_limit_immediately() {
        let x0 = Vector::from_real(SpaceKind::L2, &[0.3, -0.2]);
        let spec = SeminormSpec::sphere(SpaceKind::L2, 2, 0.7, 50, 4);
        let dict = Dictionary::monomials(SpaceKind::L2, 2, 1, 2);
        let trace = CesaroTrace::compute(
            &Symbol::constant(&x0),
            "monomials",
            &dict,
            &spec,
            &LimitCandidate::EvalAtPoint(x0),
            12,
        )
        .unwrap();
        assert!(trace.values.iter().all(|v| v.dist_power == 0.0));
        let v = ergodicity_verdict(&trace, 1e-6);
        assert_eq!(v.kind, VerdictKind::Converges);
        assert_eq!(v.evidence, Evidence::PowerBelowTol);
    }

    #[test]
    fn csv_header() {
        let csv = trace_from(&[0.5, 0.25]).to_csv().unwrap();
        assert!(csv.starts_with("n,dist_power,dist_cesaro\n1,0.5,0.5\n"));
        assert_eq!(
            trace_from(&[]).to_csv().unwrap(),
            "n,dist_power,dist_cesaro\n"
        );
    }
}
