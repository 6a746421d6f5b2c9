//! Acceptance criteria 1–14. Each test prints one `[PASS]`/`[FAIL]` line;
//! run with `--nocapture` (or `--show-output`) to see them.

use ballerg::dynamics::{
    backward_shift_cesaro_l1_norm, cesaro_apply, ergodicity_verdict, harmonic_constant, rate_fit,
    CesaroTrace, LimitCandidate, Mode,
};
use ballerg::experiments::{self, fix_zero_zoo, random_multi_indices, ExperimentConfig};
use ballerg::functions::{
    ball_point, compose_exact, eval, Dictionary, MultiIndex, PolyFn, SeminormSpec,
};
use ballerg::moebius::{alpha, disc_identity_residual, rho_bound, AutomorphismParam};
use ballerg::spaces::{PointSet, SpaceKind, Vector};
use ballerg::symbols::{
    conjugate, fixed_point, iterate, iterate_capped, schwarz_profile, stability_probe, Symbol,
};
use ballerg::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_101;

fn verdict(id: &str, name: &str, passed: bool, detail: String) {
    println!(
        "[{}] {id}. {name}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {id} ({name}) failed: {detail}");
}

fn l2(c: &[f64]) -> Vector {
    Vector::from_real(SpaceKind::L2, c)
}

#[test]
fn criterion_01_moebius_identities() {
    let zero = l2(&[0.0]);
    let dims = [1, 2, 8, 32];
    let mut worst: f64 = 0.0;
    for i in 0..10_000u64 {
        let d = dims[i as usize % 4];
        let a = ball_point(SpaceKind::L2, d, 0.9, SEED, 2 * i);
        let x = ball_point(SpaceKind::L2, d, 0.9, SEED, 2 * i + 1);
        let p = AutomorphismParam::new(a.clone()).unwrap();
        worst = worst
            .max(alpha(&p, &zero).unwrap().dist(&a))
            .max(alpha(&p, &a).unwrap().norm())
            .max(alpha(&p, &alpha(&p, &x).unwrap()).unwrap().dist(&x))
            .max(disc_identity_residual(&p, &x).unwrap());
    }
    verdict(
        "1",
        "Möbius identities",
        worst <= 1e-10,
        format!("max residual {worst:e} ≤ 1e-10 over 10⁴ pairs"),
    );
}

#[test]
fn criterion_02_radius_bound() {
    let mut worst = f64::NEG_INFINITY;
    for j in 1..=9u64 {
        let r = j as f64 / 10.0;
        let rho = rho_bound(r).unwrap();
        for i in 0..1_000u64 {
            let d = [1, 2, 8, 32][i as usize % 4];
            let a = ball_point(SpaceKind::L2, d, r, SEED + j, 2 * i);
            let x = ball_point(SpaceKind::L2, d, r, SEED + j, 2 * i + 1);
            let y = alpha(&AutomorphismParam::new(a).unwrap(), &x).unwrap();
            worst = worst.max(y.norm() - rho);
        }
    }
    verdict(
        "2",
        "radius bound",
        worst <= 1e-12,
        format!("max ‖α_a(x)‖ − ρ(r) = {worst:e} ≤ 1e-12"),
    );
}

#[test]
fn criterion_03_schwarz_sweep() {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for space in [SpaceKind::L2, SpaceKind::C0, SpaceKind::L1] {
        for t in [0.3, 0.6, 0.9] {
            let pts = SeminormSpec::sphere(space, 8, t, 2000, SEED)
                .realize()
                .unwrap();
            let set = PointSet::new("sphere", pts).unwrap();
            for s in fix_zero_zoo(space) {
                assert!(s.fixes_zero(space).unwrap(), "{}", s.label());
                worst = worst.max(schwarz_profile(&s, &set).unwrap());
                checked += 1;
            }
        }
    }
    verdict(
        "3",
        "Schwarz sweep",
        worst <= 1.0 + 1e-10,
        format!("max profile {worst} over {checked} (symbol, space, t)"),
    );
}

#[test]
fn criterion_04_affine_escape() {
    let zero = Vector::zeros(SpaceKind::C0, 1);
    let orbit = iterate(&Symbol::AffineHalf, &zero, 40).unwrap();
    let exact = orbit
        .norms
        .iter()
        .enumerate()
        .all(|(n, v)| *v == 1.0 - 0.5f64.powi(n as i32));
    let probe = stability_probe(
        &Symbol::AffineHalf,
        &PointSet::new("0", vec![zero]).unwrap(),
        40,
        1e-3,
    )
    .unwrap();
    verdict(
        "4",
        "affine escape",
        exact && probe.escape,
        format!(
            "‖φⁿ(0)‖ = 1 − 2⁻ⁿ exactly: {exact}; probe escape: {}",
            probe.escape
        ),
    );
}

#[test]
fn criterion_05_shift_separation() {
    let start = Vector::basis(SpaceKind::C0, 1, 1).scale_real(0.5);
    let orbit = iterate_capped(&Symbol::ForwardShift, &start, 100, 256).unwrap();
    let sup_ok = orbit.norms.iter().all(|v| *v == 0.5);
    let mut sep_ok = true;
    for (i, p) in orbit.points.iter().enumerate() {
        for q in &orbit.points[i + 1..] {
            sep_ok &= p.dist(q) == 0.5;
        }
    }
    verdict(
        "5",
        "shift separation",
        sup_ok && sep_ok,
        format!("norms all 1/2: {sup_ok}; distances all 1/2: {sep_ok}"),
    );
}

#[test]
fn criterion_06_backward_shift_cesaro_norm() {
    let worst = (1..=100)
        .chain([1_000, 10_000])
        .map(|n| (backward_shift_cesaro_l1_norm(n) - 1.0).abs())
        .fold(0.0, f64::max);
    verdict(
        "6",
        "backward-shift Cesàro norm",
        worst <= 1e-12,
        format!("max |norm − 1| = {worst:e} ≤ 1e-12"),
    );
}

#[test]
fn criterion_07_monomial_kill() {
    let mut killed = true;
    let mut alive = true;
    let mut alive_cases = 0;
    for m in random_multi_indices(100, 10, SEED) {
        let n_h = m.max_index();
        assert!(n_h <= 10);
        let mut g = PolyFn::monomial(m.clone(), Complex64::new(1.0, 0.0));
        for n in 1..=n_h + 3 {
            g = compose_exact(&g, &Symbol::ForwardShift).unwrap();
            if n >= n_h {
                killed &= g.is_zero();
            }
            if n + 1 == n_h && m.min_index() == n_h {
                alive_cases += 1;
                alive &= !g.is_zero();
            }
        }
    }
    verdict(
        "7",
        "monomial kill",
        killed && alive && alive_cases > 0,
        format!("zero for n ≥ n_h: {killed}; nonzero at n_h − 1 in {alive_cases} cases: {alive}"),
    );
}

#[test]
fn criterion_08_uniform_rate() {
    let dict = Dictionary::monomials(SpaceKind::L2, 8, 1, 2);
    let spec = SeminormSpec::sphere(SpaceKind::L2, 8, 0.99, 2000, SEED);
    let mut ok = true;
    let mut detail = Vec::new();
    for r in [0.3, 0.5, 0.8] {
        let s = Symbol::DiagonalLinear { weights: vec![r] };
        let trace = CesaroTrace::compute(
            &s,
            "monomials",
            &dict,
            &spec,
            &LimitCandidate::at_origin(SpaceKind::L2),
            40,
        )
        .unwrap();
        let bound = trace
            .values
            .iter()
            .all(|v| v.dist_power <= 2.0 * r.powi(v.n as i32));
        let rate = rate_fit(&trace, Mode::Power, (1, 40))
            .unwrap()
            .rate()
            .unwrap_or(f64::NAN);
        ok &= bound && (rate - r).abs() <= 0.02;
        detail.push(format!("r={r}: bound {bound}, rate {rate:.5}"));
    }
    verdict("8", "uniform rate", ok, detail.join("; "));
}

#[test]
fn criterion_09_rho_over_t_rate() {
    let dict = Dictionary::monomials(SpaceKind::L2, 8, 1, 2);
    let spec = SeminormSpec::sphere(SpaceKind::L2, 8, 0.5, 2000, SEED);
    let trace = CesaroTrace::compute(
        &Symbol::CoordinateSquare,
        "monomials",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::L2),
        12,
    )
    .unwrap();
    let rate = rate_fit(&trace, Mode::Power, (1, 12))
        .unwrap()
        .rate()
        .unwrap_or(0.0);
    verdict(
        "9",
        "(ρ/t)ⁿ rate on tB",
        rate <= 0.55,
        format!("fitted rate {rate:.5} ≤ 0.55"),
    );
}

/// `(1/n)Σ_{k<n} q^{2^k}`, summed directly.
fn square_mean(q: f64, n: usize) -> f64 {
    let mut acc = 0.0;
    let mut p = q;
    for _ in 0..n {
        acc += p;
        p *= p;
    }
    acc / n as f64
}

#[test]
fn criterion_10_square_counterexample() {
    let exps: Vec<u32> = (1..=6).collect();
    let spec = experiments::z_points(&exps).unwrap();
    let f = PolyFn::coordinate(1);
    let dict = Dictionary::single("x1", f.clone(), 1.0);
    let trace = CesaroTrace::compute(
        &Symbol::CoordinateSquare,
        "x1",
        &dict,
        &spec,
        &LimitCandidate::at_origin(SpaceKind::L2),
        20,
    )
    .unwrap();
    let mut closed: f64 = 0.0;
    for n in 1..=20 {
        let vals = cesaro_apply(&f, &Symbol::CoordinateSquare, n, &spec).unwrap();
        for (v, e) in vals.iter().zip(&exps) {
            closed = closed.max((v - square_mean(1.0 - 10f64.powi(-(*e as i32)), n)).norm());
        }
    }
    let low: Vec<(usize, f64)> = trace
        .values
        .iter()
        .filter(|v| v.dist_cesaro < 0.99)
        .map(|v| (v.n, v.dist_cesaro))
        .collect();
    // with larger m the supremum over the point set does reach 0.99 for n ≤ 20
    let wide = experiments::z_points(&(1..=8).collect::<Vec<_>>()).unwrap();
    let wide_trace = CesaroTrace::compute(
        &Symbol::CoordinateSquare,
        "x1",
        &dict,
        &wide,
        &LimitCandidate::at_origin(SpaceKind::L2),
        20,
    )
    .unwrap();
    let wide_min = wide_trace
        .values
        .iter()
        .map(|v| v.dist_cesaro)
        .fold(f64::INFINITY, f64::min);
    println!("[INFO] 10. with m up to 10⁸ the minimum over n ≤ 20 is {wide_min:.6}");
    verdict(
        "10",
        "square counterexample",
        low.is_empty() && closed <= 1e-12,
        format!("closed-form error {closed:e} ≤ 1e-12; n with Cesàro distance < 0.99 for m ≤ 10⁶: {low:?}"),
    );
}

#[test]
fn criterion_11_alpha_cesaro_limit() {
    let a = ball_point(SpaceKind::L2, 8, 0.8, SEED, u64::MAX);
    assert!(a.norm() <= 0.8);
    let s = Symbol::moebius(&a);
    let dict = Dictionary::monomials(SpaceKind::L2, 8, 1, 2);
    let spec = SeminormSpec::sphere(SpaceKind::L2, 8, 0.5, 2000, SEED);
    let trace = CesaroTrace::compute(
        &s,
        "monomials",
        &dict,
        &spec,
        &LimitCandidate::HalfSumWithIdentity(a.clone()),
        200,
    )
    .unwrap();
    let c = harmonic_constant(&trace, Mode::Cesaro, (1, 200));

    // brute-force orbit sums for the displayed forms, which average k = 0..n with divisor n
    let p = AutomorphismParam::new(a).unwrap();
    let f = PolyFn::coordinate(1);
    let mut display_err: f64 = 0.0;
    for x in spec.realize().unwrap().iter().take(100) {
        let fx = eval(&f, x);
        let fa = eval(&f, &alpha(&p, x).unwrap());
        let (mut y, mut sum) = (x.clone(), Complex64::new(0.0, 0.0));
        for n in 0..=200usize {
            sum += eval(&f, &y);
            y = alpha(&p, &y).unwrap();
            if n == 0 {
                continue;
            }
            let k = n.div_ceil(2) as f64;
            let want = if n % 2 == 1 {
                (fx + fa) * (k / (2.0 * k - 1.0))
            } else {
                (fx + fa) * 0.5 + fx / (2.0 * k)
            };
            display_err = display_err.max((sum / n as f64 - want).norm());
        }
    }
    verdict(
        "11",
        "α_a Cesàro limit",
        c <= 2.0 && display_err <= 1e-10,
        format!("fitted C = {c:.6} ≤ 2; even/odd display error {display_err:e} ≤ 1e-10"),
    );
}

struct Conjugated {
    a: Vector,
    fixed: Vector,
    trace: CesaroTrace,
}

fn conjugated_run() -> Conjugated {
    let a = ball_point(SpaceKind::L2, 8, 0.8, SEED, u64::MAX - 1);
    let psi = conjugate(&a, Symbol::DiagonalLinear { weights: vec![0.5] }).unwrap();
    let fixed = fixed_point(&psi, SpaceKind::L2, 1e-12, 10_000).unwrap();
    let dict = Dictionary::monomials(SpaceKind::L2, 8, 1, 2);
    let spec = SeminormSpec::sphere(SpaceKind::L2, 8, 0.5, 2000, SEED);
    let trace = CesaroTrace::compute(
        &psi,
        "monomials",
        &dict,
        &spec,
        &LimitCandidate::EvalAtPoint(a.clone()),
        100,
    )
    .unwrap();
    Conjugated { a, fixed, trace }
}

#[test]
fn criterion_12_conjugated_fixed_point_and_power_limit() {
    let run = conjugated_run();
    let err = run.fixed.dist(&run.a);
    let first = run
        .trace
        .values
        .iter()
        .find(|v| v.dist_power < 1e-6)
        .map(|v| v.n);
    verdict(
        "12",
        "conjugated fixed point, C_ψⁿ → C_a",
        err <= 1e-8 && first.is_some(),
        format!("‖fixed − a‖ = {err:e} ≤ 1e-8; power distance < 1e-6 from n = {first:?}"),
    );
}

#[test]
fn criterion_12_conjugated_cesaro_limit() {
    let run = conjugated_run();
    let first = run
        .trace
        .values
        .iter()
        .find(|v| v.dist_cesaro < 1e-6)
        .map(|v| v.n);
    let last = run.trace.values.last().unwrap();
    let v = ergodicity_verdict(&run.trace, 1e-6);
    verdict(
        "12",
        "conjugated Cesàro means below 1e-6 within n ≤ 100",
        first.is_some(),
        format!(
            "first n below 1e-6: {first:?}; at n = {} the distance is {:.3e} (n·dist = {:.4}); verdict {:?}",
            last.n,
            last.dist_cesaro,
            last.dist_cesaro * last.n as f64,
            v.kind
        ),
    );
}

#[test]
fn criterion_13_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let leaf = |rng: &mut ChaCha8Rng| -> Symbol {
        match rng.random_range(0..8) {
            0 => Symbol::ForwardShift,
            1 => Symbol::BackwardShift,
            2 => Symbol::AffineHalf,
            3 => Symbol::AffineContracted {
                c: rng.random_range(-0.5..0.5),
                b: rng.random_range(-0.5..0.5),
            },
            4 => Symbol::CoordinateSquare,
            5 => Symbol::CoordinatePower {
                m: rng.random_range(2..5),
            },
            6 => Symbol::DiagonalLinear {
                weights: (0..rng.random_range(1..5))
                    .map(|_| rng.random_range(-1.0..1.0))
                    .collect(),
            },
            _ => Symbol::Constant {
                x0: ball_point(SpaceKind::L2, 4, 0.9, rng.random(), 0).into_coords(),
            },
        }
    };
    let mut worst: f64 = 0.0;
    for i in 0..1_000u64 {
        let s = if rng.random_bool(0.25) {
            Symbol::Composite {
                maps: (0..rng.random_range(2..4))
                    .map(|_| leaf(&mut rng))
                    .collect(),
            }
        } else {
            leaf(&mut rng)
        };
        assert!(s.is_polynomial());
        let f = PolyFn::from_terms((0..rng.random_range(1..5)).map(|_| {
            let m = MultiIndex::new(
                (0..rng.random_range(1..4))
                    .map(|_| (rng.random_range(1..=6usize), rng.random_range(0..4u32))),
            );
            (
                m,
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            )
        }));
        let x = ball_point(SpaceKind::L2, 6, 0.95, SEED + 1, i);
        let exact = eval(&compose_exact(&f, &s).unwrap(), &x);
        let direct = eval(&f, &s.apply(&x).unwrap());
        worst = worst.max((exact - direct).norm());
    }
    verdict(
        "13",
        "oracle equivalence",
        worst <= 1e-10,
        format!("max |exact − pointwise| = {worst:e} ≤ 1e-10 over 10³ triples"),
    );
}

#[test]
fn criterion_14_determinism() {
    let cfg = ExperimentConfig {
        count: Some(500),
        ..Default::default()
    };
    let ids = [
        "servicio-rate",
        "alpha-cesaro-limit",
        "square-counterexample",
    ];
    let csv = |id: &str| {
        experiments::run(id, &cfg)
            .unwrap()
            .trace_csv()
            .unwrap()
            .into_bytes()
    };
    let in_pool = |threads: usize, id: &str| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| csv(id))
    };
    let mut ok = true;
    for id in ids {
        let first = csv(id);
        ok &= first == csv(id);
        ok &= first == in_pool(1, id);
        ok &= first == in_pool(3, id);
        ok &= first == in_pool(8, id);
    }
    verdict(
        "14",
        "determinism",
        ok,
        format!("trace.csv byte-identical across reruns and 1/3/8 threads for {ids:?}"),
    );
}
