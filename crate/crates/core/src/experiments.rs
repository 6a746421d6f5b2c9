//! The experiment catalog: each entry reproduces one quantitative statement
//! end to end and produces a trace, a JSON report with pass/fail bound
//! checks, a text summary and two-column plot files.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config;
use crate::dynamics::{
    backward_shift_cesaro_l1_norm, cesaro_apply, ergodicity_verdict, harmonic_constant,
    involution_cesaro_coefficients, rate_fit, CesaroTrace, LimitCandidate, Mode, RateFitOutcome,
    Verdict,
};
use crate::error::{Error, Result};
use crate::functions::{
    ball_point, compose_exact, eval, hull_membership, Dictionary, MultiIndex, PolyFn, SeminormSpec,
};
use crate::moebius::{alpha, disc_identity_residual, rho_bound, AutomorphismParam};
use crate::spaces::{PointSet, SpaceKind, Vector};
use crate::symbols::{
    conjugate, fixed_point, iterate, schwarz_profile, stability_probe, Symbol,
    DEFAULT_STABILITY_DELTA,
};

pub struct ExperimentInfo {
    pub id: &'static str,
    /// The statement the experiment checks.
    pub checks: &'static str,
}

pub const CATALOG: &[ExperimentInfo] = &[
    ExperimentInfo {
        id: "moebius-identities",
        checks: "α_a(0)=a, α_a(a)=0, α_a∘α_a=id, 1−‖α_a(x)‖² = (1−‖a‖²)(1−‖x‖²)/|1−⟨x,a⟩|², α_a(rB) ⊆ √(1−(1−r)²)B",
    },
    ExperimentInfo { id: "schwarz-sweep", checks: "φ(0)=0 implies ‖φ(x)‖ ≤ ‖x‖ for every symbol in the zoo" },
    ExperimentInfo {
        id: "orbit-affine-escape",
        checks: "φ(x)=((x₁+1)/2,0,…) has ‖φⁿ(0)‖ = 1−2⁻ⁿ → 1: neither stable nor ball-stable orbits",
    },
    ExperimentInfo {
        id: "shift-separation",
        checks: "forward-shift orbit {e_n/2} is ball-bounded but 1/2-separated, hence not relatively compact",
    },
    ExperimentInfo {
        id: "beethoven-l1",
        checks: "(1/N)‖Σ_{j<N} Bʲ(e_N)‖_ℓ₁ = 1 for every N: backward-shift Cesàro means are not uniformly small",
    },
    ExperimentInfo { id: "monomial-kill", checks: "C_Fⁿ(x^α) = 0 for n ≥ max support index of α (forward shift F)" },
    ExperimentInfo {
        id: "servicio-rate",
        checks: "φ(B) ⊆ rB and φ(0)=0 give ‖C_φⁿ − C₀‖ ≤ 2rⁿ on bounded holomorphic functions",
    },
    ExperimentInfo {
        id: "janacek-rate",
        checks: "φ(tB) ⊆ ρB with ρ<t gives sup_tB |f∘φⁿ − f(0)| ≤ 2‖f‖_tB (ρ/t)^{n−1}",
    },
    ExperimentInfo {
        id: "square-counterexample",
        checks: "P(x)=(x_n²): (1/n)Σ_{k<n}(1−1/m)^{2^k} stays near 1, so Cesàro means of C_P do not converge in sup norm",
    },
    ExperimentInfo {
        id: "alpha-cesaro-limit",
        checks: "(C_{α_a})_[n] → ½(C_{α_a}+id) at rate O(1/n), with exact even/odd closed forms",
    },
    ExperimentInfo {
        id: "conjugate-fixed-point",
        checks: "ψ = α_a∘φ∘α_a with φ(B) ⊆ rB, φ(0)=0 has fixed point a and C_ψⁿ → C_a",
    },
    ExperimentInfo { id: "hull-demo", checks: "finite-dictionary F-hull {x : |f(x)| ≤ sup_A |f| for all f}" },
];

pub fn info(id: &str) -> Option<&'static ExperimentInfo> {
    CATALOG.iter().find(|e| e.id == id)
}

/// JSON experiment configuration. Every field is optional; experiment
/// defaults fill the gaps. Fields an experiment does not use are ignored.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub symbol: Option<Symbol>,
    pub dim_cap: Option<usize>,
    /// Sampled seminorm sphere radius.
    pub t: Option<f64>,
    /// Sampled seminorm point count.
    pub count: Option<usize>,
    /// Ambient dimension of sampled points.
    pub dim: Option<usize>,
    /// JSON dictionary file replacing the default monomial dictionary.
    pub dictionary: Option<PathBuf>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    /// Random samples for identity sweeps and random multi-indices.
    pub samples: Option<usize>,
    /// Contraction ratios for `servicio-rate`.
    pub rates: Option<Vec<f64>>,
    /// Decimal exponents `e` of the points `z_m`, `m = 10^e`.
    pub m_exponents: Option<Vec<u32>>,
    /// Values of `N` for `beethoven-l1`.
    pub n_list: Option<Vec<usize>>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Applies the `BALLERG_SEED` override when it is set.
    pub fn with_env_seed(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(config::SEED_ENV) {
            let seed = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "{} must be an unsigned integer, got {v:?}",
                    config::SEED_ENV
                ))
            })?;
            self.seed = Some(seed);
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.t {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "t must lie in (0, 1), got {t}"
                )));
            }
        }
        if self.count == Some(0) || self.dim == Some(0) || self.dim_cap == Some(0) {
            return Err(Error::InvalidParameter(
                "count, dim and dim_cap must be positive".into(),
            ));
        }
        if let Some(p) = &self.dictionary {
            if !p.exists() {
                return Err(Error::Io(format!(
                    "dictionary file {} does not exist",
                    p.display()
                )));
            }
        }
        if let Some(tol) = self.tol {
            if tol.is_nan() || tol <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "tol must be positive, got {tol}"
                )));
            }
        }
        Ok(())
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(config::SEED)
    }

    fn load_dictionary(&self) -> Result<Option<Dictionary>> {
        let Some(path) = &self.dictionary else {
            return Ok(None);
        };
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let dict: Dictionary = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidParameter(format!("dictionary: {e}")))?;
        Ok(Some(Dictionary::new(dict.entries().to_vec())?))
    }

    fn dictionary_or(&self, default: impl FnOnce() -> Dictionary) -> Result<Dictionary> {
        Ok(self.load_dictionary()?.unwrap_or_else(default))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Observed value (worst case over the sweep).
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    /// Passes when `value ≤ threshold`.
    fn at_most(name: &str, value: f64, threshold: f64, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: value <= threshold,
            value,
            threshold,
            detail: detail.into(),
        }
    }

    /// Passes when `value ≥ threshold`.
    fn at_least(name: &str, value: f64, threshold: f64, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: value >= threshold,
            value,
            threshold,
            detail: detail.into(),
        }
    }

    fn holds(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        let v = if passed { 1.0 } else { 0.0 };
        Check {
            name: name.into(),
            passed,
            value: v,
            threshold: 1.0,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedVerdict {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFit {
    pub name: String,
    pub fit: RateFitOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub checks_statement: String,
    pub seed: u64,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    pub verdicts: Vec<NamedVerdict>,
    pub rate_fits: Vec<NamedFit>,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Two-column plot data.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub columns: (String, String),
    pub rows: Vec<(f64, f64)>,
}

impl Series {
    fn new(name: &str, x: &str, y: &str, rows: Vec<(f64, f64)>) -> Self {
        Series {
            name: name.into(),
            columns: (x.into(), y.into()),
            rows,
        }
    }

    pub fn to_dat(&self) -> String {
        let mut s = format!("# {} {}\n", self.columns.0, self.columns.1);
        for (x, y) in &self.rows {
            let _ = writeln!(s, "{x} {y}");
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    /// The first trace is written to `trace.csv`, the rest to `trace_<name>.csv`.
    pub traces: Vec<(String, CesaroTrace)>,
    pub series: Vec<Series>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed
    }

    pub fn trace_csv(&self) -> Result<String> {
        match self.traces.first() {
            Some((_, t)) => t.to_csv(),
            None => Ok("n,dist_power,dist_cesaro\n".into()),
        }
    }

    pub fn summary(&self) -> String {
        let r = &self.report;
        let mut s = format!(
            "experiment: {}\nchecks: {}\nseed: {}\n\n",
            r.experiment, r.checks_statement, r.seed
        );
        for c in &r.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "[{tag}] {}: value {:e}, threshold {:e}. {}",
                c.name, c.value, c.threshold, c.detail
            );
        }
        for v in &r.verdicts {
            let _ = writeln!(
                s,
                "verdict {}: {:?} ({:?}) on n in {:?}",
                v.name, v.verdict.kind, v.verdict.evidence, v.verdict.window
            );
        }
        for f in &r.rate_fits {
            match f.fit {
                RateFitOutcome::Fitted(fit) => {
                    let _ = writeln!(
                        s,
                        "rate fit {}: rate {:.6}, constant {:.6e}",
                        f.name, fit.rate, fit.constant
                    );
                }
                RateFitOutcome::AlreadyConverged => {
                    let _ = writeln!(s, "rate fit {}: already converged", f.name);
                }
            }
        }
        for n in &r.notes {
            let _ = writeln!(s, "note: {n}");
        }
        let _ = writeln!(s, "\nresult: {}", if r.passed { "PASS" } else { "FAIL" });
        s
    }

    /// Writes `trace.csv`, `report.json`, `summary.txt` and one `.dat` file per series.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("trace.csv"), self.trace_csv()?)?;
        for (name, t) in self.traces.iter().skip(1) {
            fs::write(dir.join(format!("trace_{name}.csv")), t.to_csv()?)?;
        }
        let report =
            serde_json::to_string_pretty(&self.report).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(dir.join("report.json"), report + "\n")?;
        fs::write(dir.join("summary.txt"), self.summary())?;
        for s in &self.series {
            fs::write(dir.join(format!("{}.dat", s.name)), s.to_dat())?;
        }
        Ok(())
    }
}

struct Builder {
    id: &'static str,
    seed: u64,
    params: serde_json::Value,
    checks: Vec<Check>,
    verdicts: Vec<NamedVerdict>,
    fits: Vec<NamedFit>,
    notes: Vec<String>,
    traces: Vec<(String, CesaroTrace)>,
    series: Vec<Series>,
}

impl Builder {
    fn new(id: &'static str, seed: u64) -> Self {
        Builder {
            id,
            seed,
            params: json!({}),
            checks: vec![],
            verdicts: vec![],
            fits: vec![],
            notes: vec![],
            traces: vec![],
            series: vec![],
        }
    }

    fn verdict(&mut self, name: &str, verdict: Verdict) {
        self.verdicts.push(NamedVerdict {
            name: name.into(),
            verdict,
        });
    }

    fn fit(&mut self, name: &str, fit: RateFitOutcome) {
        self.fits.push(NamedFit {
            name: name.into(),
            fit,
        });
    }

    fn finish(self) -> Outcome {
        let passed = self.checks.iter().all(|c| c.passed);
        Outcome {
            report: Report {
                experiment: self.id.into(),
                checks_statement: info(self.id)
                    .map(|i| i.checks.to_string())
                    .unwrap_or_default(),
                seed: self.seed,
                params: self.params,
                checks: self.checks,
                verdicts: self.verdicts,
                rate_fits: self.fits,
                notes: self.notes,
                passed,
            },
            traces: self.traces,
            series: self.series,
        }
    }
}

/// Runs one catalog experiment.
pub fn run(id: &str, cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    match id {
        "moebius-identities" => moebius_identities(cfg),
        "schwarz-sweep" => schwarz_sweep(cfg),
        "orbit-affine-escape" => orbit_affine_escape(cfg),
        "shift-separation" => shift_separation(cfg),
        "beethoven-l1" => beethoven_l1(cfg),
        "monomial-kill" => monomial_kill(cfg),
        "servicio-rate" => servicio_rate(cfg),
        "janacek-rate" => janacek_rate(cfg),
        "square-counterexample" => square_counterexample(cfg),
        "alpha-cesaro-limit" => alpha_cesaro_limit(cfg),
        "conjugate-fixed-point" => conjugate_fixed_point(cfg),
        "hull-demo" => hull_demo(cfg),
        other => Err(Error::UnknownExperiment(other.into())),
    }
}

fn moebius_identities(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("moebius-identities", cfg.seed());
    let samples = cfg.samples.unwrap_or(10_000);
    let dims = [1usize, 2, 8, 32];
    let radius = 0.9;
    b.params = json!({ "samples": samples, "dims": dims, "max_norm": radius });

    let zero = Vector::zeros(SpaceKind::L2, 1);
    let (mut e0, mut ea, mut inv, mut disc) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut disc_by_dim = vec![0.0f64; dims.len()];
    for i in 0..samples {
        let slot = i % dims.len();
        let d = dims[slot];
        let a = ball_point(SpaceKind::L2, d, radius, b.seed, 2 * i as u64);
        let x = ball_point(SpaceKind::L2, d, radius, b.seed, 2 * i as u64 + 1);
        let p = AutomorphismParam::new(a.clone())?;
        e0 = e0.max(alpha(&p, &zero)?.dist(&a));
        ea = ea.max(alpha(&p, &a)?.norm());
        inv = inv.max(alpha(&p, &alpha(&p, &x)?)?.dist(&x));
        let r = disc_identity_residual(&p, &x)?;
        disc = disc.max(r);
        disc_by_dim[slot] = disc_by_dim[slot].max(r);
    }
    let tol = 1e-10;
    b.checks.push(Check::at_most(
        "alpha_a(0) = a",
        e0,
        tol,
        "max ‖α_a(0) − a‖",
    ));
    b.checks
        .push(Check::at_most("alpha_a(a) = 0", ea, tol, "max ‖α_a(a)‖"));
    b.checks.push(Check::at_most(
        "involution",
        inv,
        tol,
        "max ‖α_a(α_a(x)) − x‖",
    ));
    b.checks.push(Check::at_most(
        "disc identity",
        disc,
        tol,
        "max residual of 1−‖y‖² identity",
    ));
    b.series.push(Series::new(
        "disc_residual_by_dim",
        "dim",
        "max_residual",
        dims.iter()
            .zip(&disc_by_dim)
            .map(|(d, r)| (*d as f64, *r))
            .collect(),
    ));

    let pairs = (samples / 10).max(1);
    let mut rows = Vec::new();
    let mut worst_excess = f64::NEG_INFINITY;
    for j in 1..=9 {
        let r = j as f64 / 10.0;
        let rho = rho_bound(r)?;
        let mut max_norm: f64 = 0.0;
        for i in 0..pairs {
            let d = dims[i % dims.len()];
            let idx = 1_000_000 * j as u64 + 2 * i as u64;
            let a = ball_point(SpaceKind::L2, d, r, b.seed, idx);
            let x = ball_point(SpaceKind::L2, d, r, b.seed, idx + 1);
            max_norm = max_norm.max(alpha(&AutomorphismParam::new(a)?, &x)?.norm());
        }
        worst_excess = worst_excess.max(max_norm - rho);
        rows.push((r, max_norm));
    }
    b.checks.push(Check::at_most(
        "radius bound",
        worst_excess,
        1e-12,
        format!("max over r of max‖α_a(x)‖ − √(1−(1−r)²), {pairs} pairs per r"),
    ));
    b.series
        .push(Series::new("radius_bound", "r", "max_norm", rows));
    Ok(b.finish())
}

/// Symbols fixing the origin, per ambient space.
pub fn fix_zero_zoo(space: SpaceKind) -> Vec<Symbol> {
    let mut zoo = vec![
        Symbol::ForwardShift,
        Symbol::BackwardShift,
        Symbol::CoordinateSquare,
        Symbol::CoordinatePower { m: 3 },
        Symbol::identity(),
        Symbol::scalar(0.5),
        Symbol::DiagonalLinear {
            weights: vec![0.9, -0.5, 0.3, 1.0],
        },
        Symbol::AffineContracted { c: 0.7, b: 0.0 },
        Symbol::constant(&Vector::zeros(space, 1)),
        Symbol::Composite {
            maps: vec![
                Symbol::CoordinateSquare,
                Symbol::ForwardShift,
                Symbol::scalar(0.8),
            ],
        },
    ];
    if space.is_hilbert() {
        let a = Vector::from_real(SpaceKind::L2, &[0.3, -0.2, 0.1, 0.4]);
        zoo.push(Symbol::moebius(&Vector::zeros(SpaceKind::L2, 1)));
        zoo.push(Symbol::Composite {
            maps: vec![Symbol::moebius(&a), Symbol::moebius(&a)],
        });
        zoo.push(Symbol::Conjugated {
            a: a.coords().to_vec(),
            inner: Box::new(Symbol::constant(&a)),
        });
        zoo.push(Symbol::Composite {
            maps: vec![
                Symbol::moebius(&a),
                Symbol::CoordinateSquare,
                Symbol::constant(&a),
                Symbol::moebius(&a),
            ],
        });
    }
    zoo
}

fn schwarz_sweep(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("schwarz-sweep", cfg.seed());
    let count = cfg.count.unwrap_or(config::SAMPLE_COUNT);
    let dim = cfg.dim.unwrap_or(8);
    let radii = [0.3, 0.6, 0.9];
    let spaces = [SpaceKind::L2, SpaceKind::C0, SpaceKind::L1];
    b.params = json!({ "count": count, "dim": dim, "radii": radii, "spaces": spaces });
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for t in radii {
        let mut worst_t: f64 = 0.0;
        for space in spaces {
            let pts = SeminormSpec::sphere(space, dim, t, count, b.seed).realize()?;
            let set = PointSet::new(format!("{space} sphere t={t}"), pts)?;
            for s in fix_zero_zoo(space) {
                let p = schwarz_profile(&s, &set)?;
                worst_t = worst_t.max(p);
            }
        }
        worst = worst.max(worst_t);
        rows.push((t, worst_t));
    }
    b.checks.push(Check::at_most(
        "schwarz profile",
        worst,
        1.0 + 1e-10,
        "max over fix-0 symbols, spaces and radii of ‖φ(x)‖/‖x‖",
    ));
    b.series
        .push(Series::new("schwarz_profile", "t", "max_ratio", rows));
    Ok(b.finish())
}

fn orbit_affine_escape(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("orbit-affine-escape", cfg.seed());
    let n_max = cfg.n_max.unwrap_or(config::N_MAX);
    let s = cfg.symbol.clone().unwrap_or(Symbol::AffineHalf);
    b.params = json!({ "n_max": n_max, "symbol": s, "space": SpaceKind::C0 });
    let start = Vector::zeros(SpaceKind::C0, 1);
    let orbit = iterate(&s, &start, n_max)?;
    if s == Symbol::AffineHalf {
        let worst = orbit
            .norms
            .iter()
            .enumerate()
            .map(|(n, v)| (v - (1.0 - 0.5f64.powi(n as i32))).abs())
            .fold(0.0, f64::max);
        b.checks.push(Check::at_most(
            "partial sums",
            worst,
            0.0,
            "max |‖φⁿ(0)‖ − (1 − 2⁻ⁿ)|, exact",
        ));
    } else {
        b.notes
            .push("custom symbol: exact partial-sum check skipped".into());
    }
    let seeds = PointSet::new("origin", vec![start])?;
    let probe = stability_probe(&s, &seeds, n_max, DEFAULT_STABILITY_DELTA)?;
    b.checks.push(Check::holds(
        "escape",
        probe.escape,
        format!("sup norm {} (evidence)", probe.sup_norm),
    ));
    b.checks.push(Check::holds(
        "not ball-bounded",
        !probe.ball_bounded,
        format!("δ = {}", probe.delta),
    ));
    b.series.push(Series::new(
        "orbit_norm",
        "n",
        "norm",
        orbit
            .norms
            .iter()
            .enumerate()
            .map(|(n, v)| (n as f64, *v))
            .collect(),
    ));
    b.params["probe"] = serde_json::to_value(&probe).map_err(|e| Error::Io(e.to_string()))?;
    Ok(b.finish())
}

fn shift_separation(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("shift-separation", cfg.seed());
    let n_max = cfg.n_max.unwrap_or(100);
    let cap = cfg.dim_cap.unwrap_or(config::DIM_CAP);
    b.params = json!({ "n_max": n_max, "space": SpaceKind::C0, "dim_cap": cap });
    let start = Vector::basis(SpaceKind::C0, 1, 1).scale_real(0.5);
    let orbit = crate::symbols::iterate_capped(&Symbol::ForwardShift, &start, n_max, cap)?;
    let sup = orbit.norms.iter().copied().fold(0.0, f64::max);
    let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
    for (i, p) in orbit.points.iter().enumerate() {
        for q in &orbit.points[i + 1..] {
            let d = p.dist(q);
            dmin = dmin.min(d);
            dmax = dmax.max(d);
        }
    }
    b.checks.push(Check::holds(
        "sup norm is 1/2",
        sup == 0.5,
        format!("sup norm {sup}"),
    ));
    b.checks.push(Check::holds(
        "pairwise distance is 1/2",
        dmin == 0.5 && dmax == 0.5,
        format!(
            "min {dmin}, max {dmax} over {} pairs",
            orbit.points.len() * (orbit.points.len() - 1) / 2
        ),
    ));
    let seeds = PointSet::new("e1/2", vec![start])?;
    let probe = stability_probe(
        &Symbol::ForwardShift,
        &seeds,
        n_max.min(cap - 1),
        DEFAULT_STABILITY_DELTA,
    )?;
    b.checks.push(Check::holds(
        "ball-bounded evidence",
        probe.ball_bounded,
        "sup norm ≤ 1 − δ",
    ));
    b.series.push(Series::new(
        "orbit_norm",
        "n",
        "norm",
        orbit
            .norms
            .iter()
            .enumerate()
            .map(|(n, v)| (n as f64, *v))
            .collect(),
    ));
    b.params["probe"] = serde_json::to_value(&probe).map_err(|e| Error::Io(e.to_string()))?;
    Ok(b.finish())
}

fn beethoven_l1(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("beethoven-l1", cfg.seed());
    let list = cfg
        .n_list
        .clone()
        .unwrap_or_else(|| (1..=100).chain([1_000, 10_000]).collect());
    b.params = json!({ "n_list": list });
    let rows: Vec<(f64, f64)> = list
        .iter()
        .map(|&n| (n as f64, backward_shift_cesaro_l1_norm(n)))
        .collect();
    let worst = rows
        .iter()
        .map(|(_, v)| (v - 1.0).abs())
        .fold(0.0, f64::max);
    let exact = rows.iter().filter(|(_, v)| *v == 1.0).count();
    b.checks.push(Check::at_most(
        "cesaro l1 norm is 1",
        worst,
        1e-12,
        format!(
            "max |value − 1| over {} values of N; {exact} exactly 1",
            rows.len()
        ),
    ));
    b.series
        .push(Series::new("backward_shift_cesaro", "N", "l1_norm", rows));
    Ok(b.finish())
}

/// Random multi-indices with support in `1..=max_index`; every other one is a
/// pure power `x_kᵉ`, whose minimal and maximal support index coincide.
pub fn random_multi_indices(count: usize, max_index: usize, seed: u64) -> Vec<MultiIndex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                MultiIndex::new([(rng.random_range(1..=max_index), rng.random_range(1..=4u32))])
            } else {
                let terms = rng.random_range(1..=4usize);
                MultiIndex::new(
                    (0..terms)
                        .map(|_| (rng.random_range(1..=max_index), rng.random_range(1..=3u32))),
                )
            }
        })
        .collect()
}

fn monomial_kill(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("monomial-kill", cfg.seed());
    let samples = cfg.samples.unwrap_or(100);
    let max_index = 10;
    let indices = random_multi_indices(samples, max_index, b.seed);
    let mut killed = true;
    let mut alive_before = true;
    let mut tested_alive = 0;
    for m in &indices {
        let n_h = m.max_index();
        let mut g = PolyFn::monomial(m.clone(), Complex64::new(1.0, 0.0));
        for n in 1..=n_h + 5 {
            g = compose_exact(&g, &Symbol::ForwardShift)?;
            if n >= n_h && !g.is_zero() {
                killed = false;
            }
            if n + 1 == n_h && m.min_index() == n_h {
                tested_alive += 1;
                alive_before &= !g.is_zero();
            }
        }
    }
    b.checks.push(Check::holds(
        "zero for n ≥ n_h",
        killed,
        format!("{samples} random multi-indices, n_h ≤ {max_index}"),
    ));
    b.checks.push(Check::holds(
        "nonzero at n_h − 1",
        alive_before,
        format!("{tested_alive} indices whose minimal support index is n_h"),
    ));

    let n_max = cfg.n_max.unwrap_or(config::N_MAX).max(max_index + 10);
    let dim = cfg.dim.unwrap_or(max_index);
    let spec = SeminormSpec::sphere(
        SpaceKind::C0,
        dim,
        cfg.t.unwrap_or(config::SPHERE_RADIUS),
        cfg.count.unwrap_or(config::SAMPLE_COUNT),
        b.seed,
    );
    let distinct: BTreeSet<MultiIndex> = indices.into_iter().collect();
    let dict = cfg.dictionary_or(|| {
        Dictionary::new(
            distinct
                .iter()
                .map(|m| crate::functions::DictionaryEntry {
                    label: m.to_string(),
                    poly: PolyFn::monomial(m.clone(), Complex64::new(1.0, 0.0)),
                    sup_estimate: 1.0,
                })
                .collect(),
        )
        .expect("multi-index labels are unique")
    })?;
    let trace = CesaroTrace::compute(
        &Symbol::ForwardShift,
        "random monomials",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::C0),
        n_max,
    )?;
    let v = ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL));
    b.checks.push(Check::holds(
        "mean ergodic verdict",
        v.kind == crate::dynamics::VerdictKind::Converges,
        format!("{:?}", v.evidence),
    ));
    b.verdict("forward shift vs C_0", v);
    b.params = json!({ "samples": samples, "max_index": max_index, "n_max": n_max, "spec": spec });
    b.traces.push(("monomials".into(), trace));
    Ok(b.finish())
}

fn monomial_dictionary(cfg: &ExperimentConfig, dim: usize) -> Result<Dictionary> {
    cfg.dictionary_or(|| Dictionary::monomials(SpaceKind::L2, dim, 1, 2))
}

fn servicio_rate(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("servicio-rate", cfg.seed());
    let n_max = cfg.n_max.unwrap_or(config::N_MAX);
    let dim = cfg.dim.unwrap_or(8);
    let t = cfg.t.unwrap_or(0.99);
    let count = cfg.count.unwrap_or(config::SAMPLE_COUNT);
    let symbols: Vec<(f64, Symbol)> = match &cfg.symbol {
        Some(s @ Symbol::DiagonalLinear { weights }) => {
            vec![(
                weights.iter().map(|w| w.abs()).fold(0.0, f64::max),
                s.clone(),
            )]
        }
        Some(_) => {
            return Err(Error::InvalidParameter(
                "servicio-rate needs a diagonal_linear symbol".into(),
            ))
        }
        None => cfg
            .rates
            .clone()
            .unwrap_or_else(|| vec![0.5, 0.3, 0.8])
            .into_iter()
            .map(|r| (r, Symbol::scalar(r)))
            .collect(),
    };
    let dict = monomial_dictionary(cfg, dim)?;
    let spec = SeminormSpec::sphere(SpaceKind::L2, dim, t, count, b.seed);
    b.params = json!({
        "n_max": n_max, "spec": spec, "rates": symbols.iter().map(|(r, _)| *r).collect::<Vec<_>>(),
        "dictionary": dict.labels(),
    });
    b.notes.push(
        "distances are dictionary operator distances (lower bounds of operator norms)".into(),
    );
    for (r, s) in symbols {
        let trace = CesaroTrace::compute(
            &s,
            "monomials deg ≤ 2",
            &dict,
            &spec,
            &LimitCandidate::at_origin(SpaceKind::L2),
            n_max,
        )?;
        let excess = trace
            .values
            .iter()
            .map(|v| v.dist_power - 2.0 * r.powi(v.n as i32))
            .fold(f64::NEG_INFINITY, f64::max);
        b.checks.push(Check::at_most(
            &format!("r={r}: dist ≤ 2rⁿ"),
            excess,
            0.0,
            format!("max over n ≤ {n_max} of dist_n − 2rⁿ"),
        ));
        let fit = rate_fit(&trace, Mode::Power, (1, n_max))?;
        let err = fit.rate().map_or(f64::INFINITY, |q| (q - r).abs());
        b.checks.push(Check::at_most(
            &format!("r={r}: fitted rate"),
            err,
            0.02,
            format!("|rate − r|, fit {:?}", fit.rate()),
        ));
        b.fit(&format!("r={r} power"), fit);
        b.verdict(
            &format!("r={r}"),
            ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL)),
        );
        b.traces.push((format!("r{r}"), trace));
    }
    Ok(b.finish())
}

/// Radius `ρ` with `φ(tB) ⊆ ρB`, exact where a closed form exists.
fn image_radius(s: &Symbol, t: f64, space: SpaceKind, seed: u64) -> Result<(f64, bool)> {
    Ok(match s {
        Symbol::CoordinateSquare => (t * t, true),
        Symbol::CoordinatePower { m } => (t.powi(*m as i32), true),
        Symbol::DiagonalLinear { weights } => (
            t * weights.iter().map(|w| w.abs()).fold(0.0, f64::max),
            true,
        ),
        _ => {
            let pts = SeminormSpec::sphere(space, 8, t, config::SAMPLE_COUNT, seed).realize()?;
            let mut r: f64 = 0.0;
            for x in &pts {
                r = r.max(s.apply(x)?.norm());
            }
            (r, false)
        }
    })
}

fn janacek_rate(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("janacek-rate", cfg.seed());
    let t = cfg.t.unwrap_or(0.5);
    let dim = cfg.dim.unwrap_or(8);
    let n_max = cfg.n_max.unwrap_or(12);
    let count = cfg.count.unwrap_or(config::SAMPLE_COUNT);
    let s = cfg.symbol.clone().unwrap_or(Symbol::CoordinateSquare);
    let dict = monomial_dictionary(cfg, dim)?;
    let spec = SeminormSpec::sphere(SpaceKind::L2, dim, t, count, b.seed);
    let (rho_img, exact) = image_radius(&s, t, SpaceKind::L2, b.seed)?;
    let rho = rho_img + 1e-12;
    b.params = json!({ "t": t, "rho": rho, "rho_exact": exact, "n_max": n_max, "spec": spec, "symbol": s });
    if !exact {
        b.notes
            .push("ρ estimated from samples of φ(tB); the bound check is evidence only".into());
    }
    let trace = CesaroTrace::compute(
        &s,
        "monomials deg ≤ 2",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::L2),
        n_max,
    )?;
    let fit = rate_fit(&trace, Mode::Power, (1, n_max))?;
    let rate = fit.rate().unwrap_or(0.0);
    b.checks.push(Check::at_most(
        "fitted power rate",
        rate,
        0.55,
        "geometric rate of power distances on tB",
    ));
    b.fit("power", fit);
    // ‖f‖_{tB} of a normalized monomial of degree d is t^d
    let f_norm = dict
        .entries()
        .iter()
        .map(|e| {
            let spec_t = SeminormSpec::sphere(SpaceKind::L2, dim, t, count, b.seed);
            let homogeneous = e.poly.terms().all(|(m, _)| m.degree() == e.poly.degree());
            if homogeneous && cfg.dictionary.is_none() {
                Ok(t.powi(e.poly.degree() as i32))
            } else {
                crate::functions::seminorm(&e.poly, &spec_t)
            }
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let excess = trace
        .values
        .iter()
        .map(|v| v.dist_power - 2.0 * f_norm * (rho / t).powi(v.n as i32 - 1))
        .fold(f64::NEG_INFINITY, f64::max);
    b.checks.push(Check::at_most(
        "dist ≤ 2‖f‖(ρ/t)^{n−1}",
        excess,
        0.0,
        format!("ρ/t = {}, ‖f‖_tB ≤ {f_norm}", rho / t),
    ));
    b.verdict(
        "power vs C_0",
        ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL)),
    );
    b.traces.push(("square".into(), trace));
    Ok(b.finish())
}

/// Explicit points `z_m = (1 − 1/m) e₁` in `ℓ₂`.
pub fn z_points(exponents: &[u32]) -> Result<SeminormSpec> {
    let pts = exponents
        .iter()
        .map(|&e| Vector::from_real(SpaceKind::L2, &[1.0 - 1.0 / 10f64.powi(e as i32)]))
        .collect();
    Ok(SeminormSpec::ExplicitPoints {
        points: PointSet::new("z_m", pts)?,
    })
}

fn square_counterexample(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("square-counterexample", cfg.seed());
    let exps = cfg.m_exponents.clone().unwrap_or_else(|| (1..=6).collect());
    let n_max = cfg.n_max.unwrap_or(20);
    let spec = z_points(&exps)?;
    b.params =
        json!({ "m": exps.iter().map(|e| format!("1e{e}")).collect::<Vec<_>>(), "n_max": n_max });
    let f = PolyFn::coordinate(1);
    let dict = Dictionary::single("x1", f.clone(), 1.0);
    let trace = CesaroTrace::compute(
        &Symbol::CoordinateSquare,
        "x1",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::L2),
        n_max,
    )?;
    let (worst_n, worst) = trace.values.iter().map(|v| (v.n, v.dist_cesaro)).fold(
        (0, f64::INFINITY),
        |acc, (n, d)| if d < acc.1 { (n, d) } else { acc },
    );
    let failing: Vec<usize> = trace
        .values
        .iter()
        .filter(|v| v.dist_cesaro < 0.99)
        .map(|v| v.n)
        .collect();
    b.checks.push(Check::at_least(
        "cesaro distance ≥ 0.99 for every n",
        worst,
        0.99,
        format!("min at n = {worst_n}; n below threshold: {failing:?}"),
    ));
    let mut closed_err: f64 = 0.0;
    for n in 1..=n_max {
        let vals = cesaro_apply(&f, &Symbol::CoordinateSquare, n, &spec)?;
        for (v, &e) in vals.iter().zip(&exps) {
            let q = 1.0 - 1.0 / 10f64.powi(e as i32);
            let mut acc = 0.0;
            let mut p = q;
            for _ in 0..n {
                acc += p;
                p *= p;
            }
            closed_err = closed_err.max((v.re - acc / n as f64).abs().max(v.im.abs()));
        }
    }
    b.checks.push(Check::at_most(
        "per-point closed form",
        closed_err,
        1e-12,
        "|T_[n]x₁(z_m) − (1/n)Σ(1−1/m)^{2^k}|",
    ));
    if !failing.is_empty() {
        let need = (1..=18).find(|&e| {
            let q = 1.0 - 1.0 / 10f64.powi(e);
            let mut acc = 0.0;
            let mut p = q;
            for _ in 0..n_max {
                acc += p;
                p *= p;
            }
            acc / n_max as f64 >= 0.99
        });
        b.notes.push(format!(
            "the sup over all m equals 1, but the finite set of z_m only reaches 0.99 up to n = {} here; m = 1e{} suffices for n ≤ {n_max}",
            failing[0] - 1,
            need.map_or("?".into(), |e| e.to_string())
        ));
    }
    let v = ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL));
    b.verdict("cesaro vs C_0", v);
    b.series.push(Series::new(
        "cesaro_distance",
        "n",
        "dist",
        trace
            .values
            .iter()
            .map(|v| (v.n as f64, v.dist_cesaro))
            .collect(),
    ));
    b.traces.push(("z_m".into(), trace));
    Ok(b.finish())
}

fn alpha_cesaro_limit(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("alpha-cesaro-limit", cfg.seed());
    let dim = cfg.dim.unwrap_or(8);
    let n_max = cfg.n_max.unwrap_or(200);
    let t = cfg.t.unwrap_or(config::SPHERE_RADIUS);
    let count = cfg.count.unwrap_or(config::SAMPLE_COUNT);
    let a = ball_point(SpaceKind::L2, dim, 0.8, b.seed, u64::MAX);
    let s = Symbol::moebius(&a);
    let dict = monomial_dictionary(cfg, dim)?;
    let spec = SeminormSpec::sphere(SpaceKind::L2, dim, t, count, b.seed);
    b.params = json!({ "a": a, "n_max": n_max, "spec": spec });
    let trace = CesaroTrace::compute(
        &s,
        "monomials deg ≤ 2",
        &dict,
        &spec,
        &LimitCandidate::HalfSumWithIdentity(a.clone()),
        n_max,
    )?;
    let c = harmonic_constant(&trace, Mode::Cesaro, (1, n_max));
    b.checks.push(Check::at_most(
        "dist ≤ C/n with C ≤ 2",
        c,
        2.0,
        "C = max n·dist_n",
    ));
    let even = trace
        .values
        .iter()
        .filter(|v| v.n % 2 == 0)
        .map(|v| v.dist_cesaro)
        .fold(0.0, f64::max);
    b.checks.push(Check::at_most(
        "even n hit the limit",
        even,
        1e-10,
        "T_[2k] = ½(C_α + id)",
    ));

    let p = AutomorphismParam::new(a.clone())?;
    let pts = spec.realize()?;
    let mut err_def: f64 = 0.0;
    let mut err_display: f64 = 0.0;
    let f = PolyFn::coordinate(1);
    for x in pts.iter().take(50) {
        let fx = eval(&f, x);
        let fa = eval(&f, &alpha(&p, x)?);
        // brute-force sums over the orbit x, α(x), x, …
        let mut orbit_vals = Vec::with_capacity(n_max + 1);
        let mut y = x.clone();
        for _ in 0..=n_max {
            orbit_vals.push(eval(&f, &y));
            y = alpha(&p, &y)?;
        }
        for n in 1..=n_max {
            let mean: Complex64 = orbit_vals[..n].iter().sum::<Complex64>() / n as f64;
            let (ci, ca) = involution_cesaro_coefficients(n);
            err_def = err_def.max((mean - (fx * ci + fa * ca)).norm());
            // the displayed forms sum k = 0..n and divide by n
            let shifted: Complex64 = orbit_vals[..=n].iter().sum::<Complex64>() / n as f64;
            let k = n.div_ceil(2) as f64;
            let display = if n % 2 == 1 {
                (fa + fx) * (k / (2.0 * k - 1.0))
            } else {
                (fa + fx) * 0.5 + fx / (2.0 * k)
            };
            err_display = err_display.max((shifted - display).norm());
        }
    }
    b.checks.push(Check::at_most(
        "closed form, (1/n)Σ_{k<n}",
        err_def,
        1e-10,
        "vs ⌈n/2⌉/n·id + ⌊n/2⌋/n·C_α",
    ));
    b.checks.push(Check::at_most(
        "closed form, (1/n)Σ_{k≤n}",
        err_display,
        1e-10,
        "vs k/(2k−1)(C_α+id) for n=2k−1 and ½(C_α+id)+id/(2k) for n=2k",
    ));
    b.series.push(Series::new(
        "scaled_distance",
        "n",
        "n_times_dist",
        trace
            .values
            .iter()
            .map(|v| (v.n as f64, v.n as f64 * v.dist_cesaro))
            .collect(),
    ));
    b.verdict(
        "cesaro vs (C_alpha + id)/2",
        ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL)),
    );
    b.traces.push(("alpha".into(), trace));
    Ok(b.finish())
}

fn conjugate_fixed_point(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("conjugate-fixed-point", cfg.seed());
    let dim = cfg.dim.unwrap_or(8);
    let n_max = cfg.n_max.unwrap_or(100);
    let t = cfg.t.unwrap_or(config::SPHERE_RADIUS);
    let count = cfg.count.unwrap_or(config::SAMPLE_COUNT);
    let tol = 1e-6;
    let inner = cfg.symbol.clone().unwrap_or(Symbol::scalar(0.5));
    let a = ball_point(SpaceKind::L2, dim, 0.8, b.seed, u64::MAX - 1);
    let psi = conjugate(&a, inner.clone())?;
    let dict = monomial_dictionary(cfg, dim)?;
    let spec = SeminormSpec::sphere(SpaceKind::L2, dim, t, count, b.seed);
    b.params = json!({ "a": a, "inner": inner, "n_max": n_max, "spec": spec, "tol": tol });

    let fp = fixed_point(&psi, SpaceKind::L2, 1e-12, 10_000)?;
    b.checks.push(Check::at_most(
        "fixed point is a",
        fp.dist(&a),
        1e-8,
        "Picard iteration from 0",
    ));

    let trace = CesaroTrace::compute(
        &psi,
        "monomials deg ≤ 2",
        &dict,
        &spec,
        &LimitCandidate::EvalAtPoint(a.clone()),
        n_max,
    )?;
    let first_below = |col: Mode| {
        trace
            .column(col)
            .into_iter()
            .find(|(_, d)| *d < tol)
            .map(|(n, _)| n)
    };
    let min_of = |col: Mode| {
        trace
            .column(col)
            .into_iter()
            .map(|(_, d)| d)
            .fold(f64::INFINITY, f64::min)
    };
    let p_n = first_below(Mode::Power);
    b.checks.push(Check::at_most(
        "power distance < 1e-6 within n_max",
        min_of(Mode::Power),
        tol,
        format!("first n below tol: {p_n:?}"),
    ));
    let c_n = first_below(Mode::Cesaro);
    let c_last = trace.values.last().map_or(f64::NAN, |v| v.dist_cesaro);
    b.checks.push(Check {
        name: "cesaro distance < 1e-6 within n_max".into(),
        passed: c_n.is_some(),
        value: min_of(Mode::Cesaro),
        threshold: tol,
        detail: format!(
            "first n below tol: {c_n:?}; n·dist at n = {n_max} is {:.4}, the k = 0 term alone contributes |f(x) − f(a)|/n",
            c_last * n_max as f64
        ),
    });
    b.fit("power", rate_fit(&trace, Mode::Power, (1, n_max))?);
    b.verdict(
        "powers and means vs C_a",
        ergodicity_verdict(&trace, cfg.tol.unwrap_or(config::TOL)),
    );
    b.traces.push(("conjugated".into(), trace));
    Ok(b.finish())
}

fn hull_demo(cfg: &ExperimentConfig) -> Result<Outcome> {
    let mut b = Builder::new("hull-demo", cfg.seed());
    let l2 = |c: &[f64]| Vector::from_real(SpaceKind::L2, c);
    let z = Dictionary::single("z", PolyFn::coordinate(1), 1.0);
    let a1 = PointSet::new("A", vec![l2(&[0.5])])?;
    b.checks.push(Check::holds(
        "0.4 ∈ hull",
        hull_membership(&l2(&[0.4]), &a1, &z)?,
        "d = 1, F = {z}, A = {0.5}",
    ));
    b.checks.push(Check::holds(
        "0.6 ∉ hull",
        !hull_membership(&l2(&[0.6]), &a1, &z)?,
        "d = 1, F = {z}, A = {0.5}",
    ));

    let base = Dictionary::monomials(SpaceKind::L2, 2, 1, 1);
    let rich = Dictionary::monomials(SpaceKind::L2, 2, 1, 3);
    let a = PointSet::new(
        "A",
        vec![l2(&[0.6, 0.0]), l2(&[0.0, 0.4]), l2(&[-0.3, -0.3])],
    )?;
    let a_big = PointSet::new(
        "A'",
        a.points()
            .iter()
            .cloned()
            .chain([l2(&[0.5, 0.5])])
            .collect(),
    )?;
    let a_in = a
        .points()
        .iter()
        .map(|x| hull_membership(x, &a, &rich))
        .collect::<Result<Vec<_>>>()?;
    b.checks.push(Check::holds(
        "A ⊆ hull",
        a_in.iter().all(|m| *m),
        "every point witnesses itself",
    ));

    let steps = 41;
    let mut members = Vec::new();
    let (mut n_base, mut n_rich, mut n_big, mut monotone) = (0, 0, 0, true);
    for i in 0..steps {
        for j in 0..steps {
            let x = l2(&[
                -1.0 + 2.0 * i as f64 / (steps - 1) as f64,
                -1.0 + 2.0 * j as f64 / (steps - 1) as f64,
            ]);
            if x.norm() >= 0.99 {
                continue;
            }
            let in_base = hull_membership(&x, &a, &base)?;
            let in_rich = hull_membership(&x, &a, &rich)?;
            let in_big = hull_membership(&x, &a_big, &rich)?;
            monotone &= !in_rich || in_base;
            monotone &= !in_rich || in_big;
            n_base += in_base as usize;
            n_rich += in_rich as usize;
            n_big += in_big as usize;
            if in_rich {
                members.push((x.coord(1).re, x.coord(2).re));
            }
        }
    }
    b.checks.push(Check::holds(
        "hull monotonicity",
        monotone,
        format!("grid members: {n_base} (linear), {n_rich} (degree ≤ 3), {n_big} (degree ≤ 3, enlarged A)"),
    ));
    b.params = json!({ "grid": steps, "base_dictionary": base.labels(), "rich_dictionary": rich.labels() });
    b.notes
        .push("hulls are relative to the finite dictionary and contain the true hull".into());
    b.series
        .push(Series::new("hull_members", "x1", "x2", members));
    Ok(b.finish())
}
