//! Holomorphic self-maps of the unit ball: the closed zoo of symbols, their
//! orbits, conjugation by Möbius automorphisms, and fixed points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{alpha, AutomorphismParam};
use crate::spaces::{pairs, PointSet, SpaceKind, Vector};

/// Default cap on the dimension a forward shift may grow a vector to.
pub const DEFAULT_DIM_CAP: usize = 256;

/// Tolerance for deciding that a symbol fixes the origin.
pub const FIX_ZERO_TOL: f64 = 1e-12;

/// A self-map of the open unit ball.
///
/// Coordinate-wise maps act on every stored coordinate. `DiagonalLinear`
/// weights past the end of the list repeat the last weight, so a single
/// weight is a scalar multiple of the identity. `Composite` applies its maps
/// in list order (first entry first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Symbol {
    /// `(x₁, x₂, …) ↦ (0, x₁, x₂, …)`
    ForwardShift,
    /// `(x₁, x₂, …) ↦ (x₂, x₃, …)`
    BackwardShift,
    /// `x ↦ ((x₁ + 1)/2, 0, 0, …)`
    AffineHalf,
    /// `x ↦ (c·x₁ + b, 0, 0, …)` with `|c| + |b| ≤ 1`
    AffineContracted {
        c: f64,
        b: f64,
    },
    /// `x ↦ (x_n²)_n`
    CoordinateSquare,
    /// `x ↦ (x_nᵐ)_n`
    CoordinatePower {
        m: u32,
    },
    DiagonalLinear {
        weights: Vec<f64>,
    },
    Constant {
        #[serde(with = "pairs")]
        x0: Vec<Complex64>,
    },
    MoebiusAuto {
        #[serde(with = "pairs")]
        a: Vec<Complex64>,
    },
    /// `α_a ∘ inner ∘ α_a`
    Conjugated {
        #[serde(with = "pairs")]
        a: Vec<Complex64>,
        inner: Box<Symbol>,
    },
    Composite {
        maps: Vec<Symbol>,
    },
}

impl Symbol {
    pub fn identity() -> Symbol {
        Symbol::DiagonalLinear { weights: vec![1.0] }
    }

    pub fn scalar(r: f64) -> Symbol {
        Symbol::DiagonalLinear { weights: vec![r] }
    }

    pub fn constant(x0: &Vector) -> Symbol {
        Symbol::Constant {
            x0: x0.coords().to_vec(),
        }
    }

    pub fn moebius(a: &Vector) -> Symbol {
        Symbol::MoebiusAuto {
            a: a.coords().to_vec(),
        }
    }

    /// Short human-readable name used in reports.
    pub fn label(&self) -> String {
        match self {
            Symbol::ForwardShift => "forward_shift".into(),
            Symbol::BackwardShift => "backward_shift".into(),
            Symbol::AffineHalf => "affine_half".into(),
            Symbol::AffineContracted { c, b } => format!("affine({c},{b})"),
            Symbol::CoordinateSquare => "coordinate_square".into(),
            Symbol::CoordinatePower { m } => format!("coordinate_power({m})"),
            Symbol::DiagonalLinear { weights } if weights.len() == 1 => {
                format!("scalar({})", weights[0])
            }
            Symbol::DiagonalLinear { weights } => format!("diagonal{weights:?}"),
            Symbol::Constant { .. } => "constant".into(),
            Symbol::MoebiusAuto { .. } => "moebius".into(),
            Symbol::Conjugated { inner, .. } => format!("conjugated({})", inner.label()),
            Symbol::Composite { maps } => {
                let parts: Vec<String> = maps.iter().map(Symbol::label).collect();
                format!("composite[{}]", parts.join(","))
            }
        }
    }

    /// True when every component of the map is a polynomial in the coordinates.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Symbol::MoebiusAuto { .. } | Symbol::Conjugated { .. } => false,
            Symbol::Composite { maps } => maps.iter().all(Symbol::is_polynomial),
            _ => true,
        }
    }

    /// Checks the construction constraints that make the map send the ball
    /// of `space` into itself.
    pub fn validate(&self, space: SpaceKind) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSymbol(msg));
        match self {
            Symbol::ForwardShift
            | Symbol::BackwardShift
            | Symbol::AffineHalf
            | Symbol::CoordinateSquare => Ok(()),
            Symbol::AffineContracted { c, b } => {
                if !(c.is_finite() && b.is_finite()) || c.abs() + b.abs() > 1.0 {
                    return bad(format!("affine map needs |c| + |b| ≤ 1, got c={c}, b={b}"));
                }
                Ok(())
            }
            Symbol::CoordinatePower { m } => {
                if *m == 0 {
                    return bad("coordinate power needs m ≥ 1".into());
                }
                Ok(())
            }
            Symbol::DiagonalLinear { weights } => {
                if weights.is_empty() {
                    return bad("diagonal map needs at least one weight".into());
                }
                if let Some(w) = weights.iter().find(|w| !w.is_finite() || w.abs() > 1.0) {
                    return bad(format!("diagonal weight {w} exceeds 1 in modulus"));
                }
                Ok(())
            }
            Symbol::Constant { x0 } => {
                let n = space.norm_of(x0);
                if n.is_nan() || n >= 1.0 {
                    return bad(format!("constant value has norm {n} ≥ 1"));
                }
                Ok(())
            }
            Symbol::MoebiusAuto { a } => {
                if !space.is_hilbert() {
                    return Err(Error::NotHilbert);
                }
                AutomorphismParam::from_coords(a).map(|_| ())
            }
            Symbol::Conjugated { a, inner } => {
                if !space.is_hilbert() {
                    return Err(Error::NotHilbert);
                }
                AutomorphismParam::from_coords(a)?;
                inner.validate(space)
            }
            Symbol::Composite { maps } => maps.iter().try_for_each(|m| m.validate(space)),
        }
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        self.apply_capped(x, DEFAULT_DIM_CAP)
    }

    /// Applies the map, failing if a forward shift would need more than
    /// `dim_cap` coordinates.
    pub fn apply_capped(&self, x: &Vector, dim_cap: usize) -> Result<Vector> {
        let n = x.norm();
        if n.is_nan() || n >= 1.0 {
            return Err(Error::OutsideBall(n));
        }
        self.validate(x.space())?;
        self.apply_unchecked(x, dim_cap)
    }

    pub(crate) fn apply_unchecked(&self, x: &Vector, dim_cap: usize) -> Result<Vector> {
        let space = x.space();
        let zero = Complex64::new(0.0, 0.0);
        Ok(match self {
            Symbol::ForwardShift => {
                let eff = x.effective_dim();
                if eff == 0 {
                    return Ok(x.clone());
                }
                if eff + 1 > dim_cap {
                    return Err(Error::DimensionCap {
                        cap: dim_cap,
                        needed: eff + 1,
                    });
                }
                let mut coords = Vec::with_capacity(eff + 1);
                coords.push(zero);
                coords.extend_from_slice(&x.coords()[..eff]);
                Vector::new(space, coords)
            }
            Symbol::BackwardShift => Vector::new(space, x.coords()[1..].to_vec()),
            Symbol::AffineHalf => affine(x, 0.5, 0.5),
            Symbol::AffineContracted { c, b } => affine(x, *c, *b),
            Symbol::CoordinateSquare => {
                Vector::new(space, x.coords().iter().map(|z| z * z).collect())
            }
            Symbol::CoordinatePower { m } => {
                Vector::new(space, x.coords().iter().map(|z| z.powu(*m)).collect())
            }
            Symbol::DiagonalLinear { weights } => Vector::new(
                space,
                x.coords()
                    .iter()
                    .enumerate()
                    .map(|(i, z)| z * diagonal_weight(weights, i + 1))
                    .collect(),
            ),
            Symbol::Constant { x0 } => Vector::new(space, x0.clone()),
            Symbol::MoebiusAuto { a } => alpha(&AutomorphismParam::from_coords(a)?, x)?,
            Symbol::Conjugated { a, inner } => {
                let p = AutomorphismParam::from_coords(a)?;
                let y = inner.apply_unchecked(&alpha(&p, x)?, dim_cap)?;
                alpha(&p, &y)?
            }
            Symbol::Composite { maps } => {
                let mut y = x.clone();
                for m in maps {
                    y = m.apply_unchecked(&y, dim_cap)?;
                }
                y
            }
        })
    }

    /// Whether `φ(0) = 0` (to [`FIX_ZERO_TOL`]) in the given ambient space.
    pub fn fixes_zero(&self, space: SpaceKind) -> Result<bool> {
        Ok(self.apply(&Vector::zeros(space, 1))?.norm() <= FIX_ZERO_TOL)
    }
}

/// Weight applied to coordinate `k` (1-based) by a diagonal map.
pub fn diagonal_weight(weights: &[f64], k: usize) -> f64 {
    weights
        .get(k - 1)
        .or(weights.last())
        .copied()
        .unwrap_or(0.0)
}

fn affine(x: &Vector, c: f64, b: f64) -> Vector {
    let mut coords = vec![Complex64::new(0.0, 0.0); x.dim()];
    coords[0] = x.coord(1) * c + b;
    Vector::new(x.space(), coords)
}

/// The points `φ⁰x, φ¹x, …, φⁿx` and their norms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub start: Vector,
    pub points: Vec<Vector>,
    pub norms: Vec<f64>,
}

pub fn iterate(s: &Symbol, x: &Vector, n: usize) -> Result<Orbit> {
    iterate_capped(s, x, n, DEFAULT_DIM_CAP)
}

pub fn iterate_capped(s: &Symbol, x: &Vector, n: usize, dim_cap: usize) -> Result<Orbit> {
    s.validate(x.space())?;
    let mut points = Vec::with_capacity(n + 1);
    let mut norms = Vec::with_capacity(n + 1);
    let mut cur = x.clone();
    for step in 0..=n {
        let nrm = cur.norm();
        if nrm.is_nan() || nrm >= 1.0 {
            return Err(Error::OutsideBall(nrm));
        }
        norms.push(nrm);
        let next = if step < n {
            Some(s.apply_unchecked(&cur, dim_cap)?)
        } else {
            None
        };
        points.push(cur);
        match next {
            Some(v) => cur = v,
            None => break,
        }
    }
    Ok(Orbit {
        start: x.clone(),
        points,
        norms,
    })
}

/// `α_a ∘ s ∘ α_a`.
pub fn conjugate(a: &Vector, s: Symbol) -> Result<Symbol> {
    let p = AutomorphismParam::new(a.clone())?;
    Ok(Symbol::Conjugated {
        a: p.point().coords().to_vec(),
        inner: Box::new(s),
    })
}

/// Picard iteration `x_{k+1} = φ(x_k)` from the origin of `space`, stopping
/// once successive iterates are within `tol`.
pub fn fixed_point(s: &Symbol, space: SpaceKind, tol: f64, max_iter: usize) -> Result<Vector> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    s.validate(space)?;
    let mut x = Vector::zeros(space, 1);
    for _ in 0..max_iter {
        let next = s.apply_unchecked(&x, DEFAULT_DIM_CAP)?;
        let n = next.norm();
        if n.is_nan() || n >= 1.0 {
            return Err(Error::OutsideBall(n));
        }
        let step = next.dist(&x);
        x = next;
        if step < tol {
            return Ok(x);
        }
    }
    Err(Error::NotContracting(max_iter))
}

/// `max ‖φ(x)‖ / ‖x‖` over the nonzero sample points. Requires `φ(0) = 0`,
/// in which case the ball-form Schwarz lemma bounds the profile by 1.
pub fn schwarz_profile(s: &Symbol, samples: &PointSet) -> Result<f64> {
    let space = samples.space().ok_or(Error::EmptyPointSet)?;
    let at_zero = s.apply(&Vector::zeros(space, 1))?.norm();
    if at_zero > FIX_ZERO_TOL {
        return Err(Error::SchwarzHypothesis(at_zero));
    }
    let mut worst: f64 = 0.0;
    for x in samples.points() {
        let nx = x.norm();
        if nx == 0.0 {
            continue;
        }
        worst = worst.max(s.apply(x)?.norm() / nx);
    }
    Ok(worst)
}

/// Finite-sample evidence about orbit stability. Finitely many seeds and
/// steps cannot certify the universally quantified stability notions, so
/// every field is evidence only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub label: String,
    pub seeds: usize,
    pub n_max: usize,
    pub delta: f64,
    /// Largest norm over every orbit point.
    pub sup_norm: f64,
    /// `sup_norm ≤ 1 − δ`: the union of the sampled orbits stays away from the sphere.
    pub ball_bounded: bool,
    /// Smallest distance between two different time steps of the same orbit.
    /// Bounded away from zero signals an orbit that is not relatively compact.
    pub min_separation: Option<f64>,
    /// Some orbit has strictly increasing norms ending within `δ` of the sphere.
    pub escape: bool,
}

pub const DEFAULT_STABILITY_DELTA: f64 = 1e-3;

pub fn stability_probe(
    s: &Symbol,
    seeds: &PointSet,
    n_max: usize,
    delta: f64,
) -> Result<StabilityReport> {
    let mut sup_norm: f64 = 0.0;
    let mut min_sep: Option<f64> = None;
    let mut escape = false;
    for seed in seeds.points() {
        let orbit = iterate(s, seed, n_max)?;
        sup_norm = orbit.norms.iter().copied().fold(sup_norm, f64::max);
        for (i, p) in orbit.points.iter().enumerate() {
            for q in &orbit.points[i + 1..] {
                let d = p.dist(q);
                min_sep = Some(min_sep.map_or(d, |m: f64| m.min(d)));
            }
        }
        let increasing = orbit.norms.windows(2).all(|w| w[1] > w[0]);
        if n_max > 0 && increasing && orbit.norms[n_max] > 1.0 - delta {
            escape = true;
        }
    }
    Ok(StabilityReport {
        label: "evidence".into(),
        seeds: seeds.len(),
        n_max,
        delta,
        sup_norm,
        ball_bounded: sup_norm <= 1.0 - delta,
        min_separation: min_sep,
        escape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c0(coords: &[f64]) -> Vector {
        Vector::from_real(SpaceKind::C0, coords)
    }

    fn l2(coords: &[f64]) -> Vector {
        Vector::from_real(SpaceKind::L2, coords)
    }

    #[test]
    fn forward_shift_inserts_leading_zero() {
        let y = Symbol::ForwardShift.apply(&c0(&[0.1, 0.2])).unwrap();
        assert_eq!(y.coords().len(), 3);
        assert_eq!(y, c0(&[0.0, 0.1, 0.2]));
    }

    #[test]
    fn forward_shift_respects_cap() {
        let x = Vector::basis(SpaceKind::C0, 4, 4).scale_real(0.5);
        assert_eq!(
            Symbol::ForwardShift.apply_capped(&x, 4),
            Err(Error::DimensionCap { cap: 4, needed: 5 })
        );
        assert!(Symbol::ForwardShift.apply_capped(&x, 5).is_ok());
    }

    #[test]
    fn backward_shift_drops_first() {
        assert_eq!(
            Symbol::BackwardShift.apply(&c0(&[0.1, 0.2, 0.3])).unwrap(),
            c0(&[0.2, 0.3])
        );
        assert_eq!(
            Symbol::BackwardShift.apply(&c0(&[0.1])).unwrap(),
            c0(&[0.0])
        );
    }

    #[test]
    fn affine_half_and_square() {
        assert_eq!(Symbol::AffineHalf.apply(&c0(&[0.0])).unwrap(), c0(&[0.5]));
        let m = 7.0;
        let z = l2(&[1.0 - 1.0 / m]);
        let y = Symbol::CoordinateSquare.apply(&z).unwrap();
        assert_eq!(y.coord(1).re, (1.0 - 1.0 / m) * (1.0 - 1.0 / m));
    }

    #[test]
    fn apply_rejects_points_outside_ball() {
        assert!(matches!(
            Symbol::AffineHalf.apply(&c0(&[1.0])),
            Err(Error::OutsideBall(_))
        ));
    }

    #[test]
    fn invalid_symbols() {
        assert!(Symbol::AffineContracted { c: 0.8, b: 0.3 }
            .validate(SpaceKind::C0)
            .is_err());
        assert!(Symbol::DiagonalLinear { weights: vec![] }
            .validate(SpaceKind::C0)
            .is_err());
        assert!(Symbol::DiagonalLinear {
            weights: vec![0.5, 1.1]
        }
        .validate(SpaceKind::C0)
        .is_err());
        assert!(Symbol::CoordinatePower { m: 0 }
            .validate(SpaceKind::C0)
            .is_err());
        assert!(Symbol::constant(&c0(&[1.0]))
            .validate(SpaceKind::C0)
            .is_err());
        assert_eq!(
            Symbol::moebius(&l2(&[0.5])).validate(SpaceKind::C0),
            Err(Error::NotHilbert)
        );
        assert!(Symbol::moebius(&l2(&[0.6, 0.8]))
            .validate(SpaceKind::L2)
            .is_err());
    }

    #[test]
    fn polynomial_flag() {
        assert!(Symbol::ForwardShift.is_polynomial());
        assert!(Symbol::constant(&l2(&[0.1])).is_polynomial());
        assert!(!Symbol::moebius(&l2(&[0.1])).is_polynomial());
        let comp = Symbol::Composite {
            maps: vec![Symbol::CoordinateSquare, Symbol::moebius(&l2(&[0.1]))],
        };
        assert!(!comp.is_polynomial());
        let comp = Symbol::Composite {
            maps: vec![Symbol::CoordinateSquare, Symbol::BackwardShift],
        };
        assert!(comp.is_polynomial());
    }

    #[test]
    fn affine_orbit_from_zero() {
        let orbit = iterate(&Symbol::AffineHalf, &c0(&[0.0]), 40).unwrap();
        for (n, nrm) in orbit.norms.iter().enumerate() {
            assert_eq!(*nrm, 1.0 - 0.5f64.powi(n as i32));
        }
    }

    #[test]
    fn forward_shift_orbit_of_half_e1() {
        let start = c0(&[0.5]);
        let orbit = iterate(&Symbol::ForwardShift, &start, 10).unwrap();
        for (n, p) in orbit.points.iter().enumerate() {
            assert_eq!(*p, Vector::basis(SpaceKind::C0, 1, n + 1).scale_real(0.5));
        }
    }

    #[test]
    fn diagonal_orbit_halves() {
        let orbit = iterate(&Symbol::scalar(0.5), &l2(&[0.3, -0.4]), 10).unwrap();
        for w in orbit.norms.windows(2) {
            assert_eq!(w[1], w[0] / 2.0);
        }
    }

    #[test]
    fn diagonal_weights_repeat_last() {
        let s = Symbol::DiagonalLinear {
            weights: vec![1.0, 0.5],
        };
        let y = s.apply(&l2(&[0.4, 0.4, 0.4])).unwrap();
        assert_eq!(y, l2(&[0.4, 0.2, 0.2]));
    }

    #[test]
    fn conjugate_of_identity_and_constant_zero() {
        let a = l2(&[0.3, -0.1, 0.2]);
        let x = l2(&[-0.2, 0.5, 0.1]);
        let id = conjugate(&a, Symbol::identity()).unwrap();
        assert!(id.apply(&x).unwrap().dist(&x) < 1e-10);
        let k = conjugate(&a, Symbol::constant(&l2(&[0.0]))).unwrap();
        assert!(k.apply(&x).unwrap().dist(&a) < 1e-10);
    }

    #[test]
    fn conjugate_transports_fixed_zero_to_a() {
        let a = l2(&[0.25, 0.5]);
        for s in [
            Symbol::scalar(0.3),
            Symbol::CoordinateSquare,
            Symbol::ForwardShift,
        ] {
            let psi = conjugate(&a, s).unwrap();
            assert!(psi.apply(&a).unwrap().dist(&a) < 1e-10);
        }
    }

    #[test]
    fn conjugate_requires_hilbert_point() {
        assert_eq!(
            conjugate(&c0(&[0.5]), Symbol::identity()),
            Err(Error::NotHilbert)
        );
    }

    #[test]
    fn fixed_points() {
        let x0 = l2(&[0.2, -0.3]);
        assert_eq!(
            fixed_point(&Symbol::constant(&x0), SpaceKind::L2, 1e-12, 10).unwrap(),
            x0
        );
        assert!(
            fixed_point(&Symbol::scalar(0.5), SpaceKind::L2, 1e-12, 100)
                .unwrap()
                .norm()
                < 1e-12
        );
        let fp = fixed_point(
            &Symbol::AffineContracted { c: 0.5, b: 0.25 },
            SpaceKind::C0,
            1e-13,
            200,
        )
        .unwrap();
        assert!(fp.dist(&c0(&[0.5])) < 1e-12);
    }

    #[test]
    fn fixed_point_reports_non_contraction() {
        assert_eq!(
            fixed_point(&Symbol::AffineHalf, SpaceKind::C0, 1e-30, 50),
            Err(Error::NotContracting(50))
        );
        assert!(fixed_point(&Symbol::identity(), SpaceKind::C0, 0.0, 5).is_err());
    }

    #[test]
    fn schwarz_profiles() {
        let pts: Vec<Vector> = (1..=9)
            .map(|k| l2(&[0.09 * k as f64, -0.04 * k as f64]))
            .collect();
        let set = PointSet::new("line", pts).unwrap();
        let f = schwarz_profile(&Symbol::ForwardShift, &set).unwrap();
        assert!((f - 1.0).abs() < 1e-15);
        assert!(schwarz_profile(&Symbol::CoordinateSquare, &set).unwrap() < 1.0);
        assert!(matches!(
            schwarz_profile(&Symbol::AffineHalf, &set),
            Err(Error::SchwarzHypothesis(_))
        ));
    }

    #[test]
    fn probe_affine_escape() {
        let seeds = PointSet::new("origin", vec![c0(&[0.0])]).unwrap();
        let r = stability_probe(&Symbol::AffineHalf, &seeds, 20, DEFAULT_STABILITY_DELTA).unwrap();
        assert!(r.escape);
        assert!(!r.ball_bounded);
        assert_eq!(r.sup_norm, 1.0 - 0.5f64.powi(20));
    }

    #[test]
    fn probe_forward_shift_separation() {
        let seeds = PointSet::new("e1/2", vec![c0(&[0.5])]).unwrap();
        let r =
            stability_probe(&Symbol::ForwardShift, &seeds, 30, DEFAULT_STABILITY_DELTA).unwrap();
        assert_eq!(r.sup_norm, 0.5);
        assert_eq!(r.min_separation, Some(0.5));
        assert!(r.ball_bounded);
        assert!(!r.escape);
    }

    #[test]
    fn symbol_json_round_trip() {
        let s = Symbol::Composite {
            maps: vec![
                conjugate(&l2(&[0.5, 0.0]), Symbol::scalar(0.5)).unwrap(),
                Symbol::AffineContracted { c: 0.5, b: 0.25 },
            ],
        };
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"kind\":\"conjugated\""));
        assert_eq!(serde_json::from_str::<Symbol>(&json).unwrap(), s);
        let parsed: Symbol =
            serde_json::from_str(r#"{"kind":"moebius_auto","a":[[0.5,0.0]]}"#).unwrap();
        assert_eq!(parsed, Symbol::moebius(&l2(&[0.5])));
    }
}
