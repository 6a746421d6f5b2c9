//! Sparse multi-index polynomials standing in for holomorphic functions on
//! the ball, plus the finite seminorms used to measure them.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::spaces::{Exponent, PointSet, SpaceKind, Vector};
use crate::symbols::{diagonal_weight, Symbol};

/// Slack allowed in F-hull comparisons.
pub const HULL_TOL: f64 = 1e-12;

/// Exponents of a monomial `x^α`, keyed by 1-based coordinate. Zero
/// exponents are never stored, so the empty index is the constant monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(BTreeMap<usize, u32>);

impl MultiIndex {
    pub fn one() -> Self {
        MultiIndex::default()
    }

    pub fn new(exponents: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, e) in exponents {
            assert!(k >= 1, "coordinates are 1-based");
            if e > 0 {
                *map.entry(k).or_insert(0) += e;
            }
        }
        MultiIndex(map)
    }

    /// `x_k`
    pub fn coordinate(k: usize) -> Self {
        Self::new([(k, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, k: usize) -> u32 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&k, &e)| (k, e))
    }

    /// Largest coordinate with a nonzero exponent (0 for the constant).
    pub fn max_index(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn min_index(&self) -> usize {
        self.0.keys().next().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: &Vector) -> Complex64 {
        self.exponents().map(|(k, e)| x.coord(k).powu(e)).product()
    }

    fn mul(&self, other: &MultiIndex) -> Result<MultiIndex> {
        let mut map = self.0.clone();
        for (k, e) in other.exponents() {
            let slot = map.entry(k).or_insert(0);
            *slot = slot.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(MultiIndex(map))
    }

    /// Supremum of `|x^α|` over the open unit ball of `space`.
    pub fn ball_sup(&self, space: SpaceKind) -> f64 {
        let deg = self.degree() as f64;
        match space {
            SpaceKind::C0 | SpaceKind::Lp(Exponent::Infinity) => 1.0,
            _ if deg == 0.0 => 1.0,
            SpaceKind::Lp(Exponent::Finite(p)) => self
                .exponents()
                .map(|(_, e)| (e as f64 / deg).powf(e as f64 / p))
                .product(),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .map(|(k, e)| {
                if e == 1 {
                    format!("x{k}")
                } else {
                    format!("x{k}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `Σ c_α x^α` with no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PolyFn {
    terms: BTreeMap<MultiIndex, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponents: MultiIndex,
    coeff: [f64; 2],
}

impl Serialize for PolyFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                exponents: m.clone(),
                coeff: [c.re, c.im],
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms: Vec<Term> = Vec::deserialize(d)?;
        Ok(PolyFn::from_terms(terms.into_iter().map(|t| {
            (t.exponents, Complex64::new(t.coeff[0], t.coeff[1]))
        })))
    }
}

impl PolyFn {
    pub fn zero() -> Self {
        PolyFn::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(MultiIndex::one(), c)
    }

    pub fn monomial(index: MultiIndex, c: Complex64) -> Self {
        Self::from_terms([(index, c)])
    }

    /// `x_k`
    pub fn coordinate(k: usize) -> Self {
        Self::monomial(MultiIndex::coordinate(k), Complex64::new(1.0, 0.0))
    }

    /// Sums like terms and drops zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (MultiIndex, Complex64)>) -> Self {
        let mut p = PolyFn::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: MultiIndex, c: Complex64) {
        let slot = self
            .terms
            .entry(m.clone())
            .or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn max_index(&self) -> usize {
        self.terms
            .keys()
            .map(MultiIndex::max_index)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &PolyFn) -> PolyFn {
        let mut p = self.clone();
        for (m, c) in other.terms() {
            p.add_term(m.clone(), *c);
        }
        p
    }

    pub fn scale(&self, lambda: Complex64) -> PolyFn {
        PolyFn::from_terms(self.terms().map(|(m, c)| (m.clone(), c * lambda)))
    }

    pub fn mul(&self, other: &PolyFn) -> Result<PolyFn> {
        let mut p = PolyFn::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                p.add_term(m1.mul(m2)?, c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn powu(&self, e: u32) -> Result<PolyFn> {
        let mut acc = PolyFn::constant(Complex64::new(1.0, 0.0));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn map_monomials(
        &self,
        mut f: impl FnMut(&MultiIndex, Complex64) -> Result<Option<(MultiIndex, Complex64)>>,
    ) -> Result<PolyFn> {
        let mut p = PolyFn::zero();
        for (m, c) in self.terms() {
            if let Some((m2, c2)) = f(m, *c)? {
                p.add_term(m2, c2);
            }
        }
        Ok(p)
    }
}

impl fmt::Display for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ_α c_α Π x_i^{α_i}`; coordinates past `dim(x)` read as zero.
pub fn eval(f: &PolyFn, x: &Vector) -> Complex64 {
    f.terms().map(|(m, c)| c * m.eval(x)).sum()
}

/// The polynomial `f ∘ s`, computed exactly in the monomial basis.
pub fn compose_exact(f: &PolyFn, s: &Symbol) -> Result<PolyFn> {
    if !s.is_polynomial() {
        return Err(Error::NonPolynomial);
    }
    match s {
        Symbol::ForwardShift => f.map_monomials(|m, c| {
            if m.exponent(1) > 0 {
                return Ok(None);
            }
            Ok(Some((
                MultiIndex::new(m.exponents().map(|(k, e)| (k - 1, e))),
                c,
            )))
        }),
        Symbol::BackwardShift => f.map_monomials(|m, c| {
            Ok(Some((
                MultiIndex::new(m.exponents().map(|(k, e)| (k + 1, e))),
                c,
            )))
        }),
        Symbol::CoordinateSquare => compose_exact(f, &Symbol::CoordinatePower { m: 2 }),
        Symbol::CoordinatePower { m: power } => f.map_monomials(|m, c| {
            let exps = m
                .exponents()
                .map(|(k, e)| {
                    e.checked_mul(*power)
                        .map(|e| (k, e))
                        .ok_or(Error::ExponentOverflow)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Some((MultiIndex::new(exps), c)))
        }),
        Symbol::DiagonalLinear { weights } => f.map_monomials(|m, c| {
            let w: f64 = m
                .exponents()
                .map(|(k, e)| diagonal_weight(weights, k).powi(e as i32))
                .product();
            Ok(Some((m.clone(), c * w)))
        }),
        Symbol::AffineHalf => compose_exact(f, &Symbol::AffineContracted { c: 0.5, b: 0.5 }),
        Symbol::AffineContracted {
            c: slope,
            b: offset,
        } => {
            let first = PolyFn::from_terms([
                (MultiIndex::coordinate(1), Complex64::new(*slope, 0.0)),
                (MultiIndex::one(), Complex64::new(*offset, 0.0)),
            ]);
            let mut out = PolyFn::zero();
            for (m, c) in f.terms() {
                if m.max_index() > 1 {
                    continue;
                }
                out = out.add(&first.powu(m.exponent(1))?.scale(*c));
            }
            Ok(out)
        }
        Symbol::Constant { x0 } => {
            let x0 = Vector::new(SpaceKind::C0, x0.clone());
            Ok(PolyFn::constant(eval(f, &x0)))
        }
        Symbol::Composite { maps } => maps
            .iter()
            .rev()
            .try_fold(f.clone(), |g, m| compose_exact(&g, m)),
        Symbol::MoebiusAuto { .. } | Symbol::Conjugated { .. } => Err(Error::NonPolynomial),
    }
}

/// Degree-one coefficients of `f` as a vector of `space`.
pub fn differential_at_zero(f: &PolyFn, space: SpaceKind) -> Vector {
    let linear: Vec<(usize, Complex64)> = f
        .terms()
        .filter(|(m, _)| m.degree() == 1)
        .map(|(m, c)| (m.min_index(), *c))
        .collect();
    let dim = linear.iter().map(|(k, _)| *k).max().unwrap_or(1);
    let mut coords = vec![Complex64::new(0.0, 0.0); dim];
    for (k, c) in linear {
        coords[k - 1] = c;
    }
    Vector::new(space, coords)
}

/// A finite point set realizing a seminorm `sup_{x∈K} |f(x)|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SeminormSpec {
    ExplicitPoints {
        points: PointSet,
    },
    /// `count` points of norm exactly `t` with pseudo-random directions and
    /// phases. Point `i` depends only on `(seed, i)`.
    SphereSample {
        t: f64,
        count: usize,
        seed: u64,
        space: SpaceKind,
        dim: usize,
    },
}

impl SeminormSpec {
    pub fn sphere(space: SpaceKind, dim: usize, t: f64, count: usize, seed: u64) -> Self {
        SeminormSpec::SphereSample {
            t,
            count,
            seed,
            space,
            dim,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SeminormSpec::ExplicitPoints { points } if points.is_empty() => {
                Err(Error::EmptyPointSet)
            }
            SeminormSpec::ExplicitPoints { .. } => Ok(()),
            SeminormSpec::SphereSample { t, count, dim, .. } => {
                if !(*t > 0.0 && *t < 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "sphere radius must lie in (0, 1), got {t}"
                    )));
                }
                if *count == 0 || *dim == 0 {
                    return Err(Error::InvalidParameter(
                        "sphere sample needs count ≥ 1 and dim ≥ 1".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn space(&self) -> Option<SpaceKind> {
        match self {
            SeminormSpec::ExplicitPoints { points } => points.space(),
            SeminormSpec::SphereSample { space, .. } => Some(*space),
        }
    }

    /// Radius of the sphere for sampled specs; the largest point norm otherwise.
    pub fn radius(&self) -> f64 {
        match self {
            SeminormSpec::ExplicitPoints { points } => {
                points.points().iter().map(Vector::norm).fold(0.0, f64::max)
            }
            SeminormSpec::SphereSample { t, .. } => *t,
        }
    }

    pub fn realize(&self) -> Result<Vec<Vector>> {
        self.validate()?;
        Ok(match self {
            SeminormSpec::ExplicitPoints { points } => points.points().to_vec(),
            SeminormSpec::SphereSample {
                t,
                count,
                seed,
                space,
                dim,
            } => {
                crate::par::map_indexed(*count, |i| sphere_point(*space, *dim, *t, *seed, i as u64))
            }
        })
    }
}

/// Standard complex Gaussian direction, normalized in the ambient norm and
/// scaled to radius `t`. Stream `index` of the seeded generator.
pub fn sphere_point(space: SpaceKind, dim: usize, t: f64, seed: u64, index: u64) -> Vector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let coords: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        let n = space.norm_of(&coords);
        if n > 0.0 {
            return Vector::new(space, coords).scale_real(t / n);
        }
    }
}

/// A point of norm at most `max_radius`: a sphere direction scaled by a
/// uniform radius. Deterministic in `(seed, index)`.
pub fn ball_point(space: SpaceKind, dim: usize, max_radius: f64, seed: u64, index: u64) -> Vector {
    let dir = sphere_point(space, dim, 1.0, seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(index);
    let u: f64 = rng.random();
    dir.scale_real(max_radius * u)
}

/// `sup |f(x)|` over the realized points of `spec`.
pub fn seminorm(f: &PolyFn, spec: &SeminormSpec) -> Result<f64> {
    let pts = spec.realize()?;
    Ok(sup_abs(f, &pts))
}

pub(crate) fn sup_abs(f: &PolyFn, pts: &[Vector]) -> f64 {
    crate::par::max_over(pts, |x| eval(f, x).norm())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DictionaryEntry {
    pub label: String,
    pub poly: PolyFn,
    /// Recorded estimate of the sup-norm of `poly` on the unit ball.
    pub sup_estimate: f64,
}

/// A finite family of test functions with unique labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dictionary {
    entries: Vec<DictionaryEntry>,
}

impl Dictionary {
    pub fn new(entries: Vec<DictionaryEntry>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &entries {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(Dictionary { entries })
    }

    /// A single function with an explicit sup estimate.
    pub fn single(label: impl Into<String>, poly: PolyFn, sup_estimate: f64) -> Self {
        Dictionary {
            entries: vec![DictionaryEntry {
                label: label.into(),
                poly,
                sup_estimate,
            }],
        }
    }

    /// Divides every function by its sampled sup over `spec`, which bounds
    /// the true ball sup from below when `spec` sits inside the ball.
    pub fn normalized_by_sampling(
        entries: Vec<(String, PolyFn)>,
        spec: &SeminormSpec,
    ) -> Result<Self> {
        let pts = spec.realize()?;
        let entries = entries
            .into_iter()
            .map(|(label, poly)| {
                let s = sup_abs(&poly, &pts);
                let poly = if s > 0.0 {
                    poly.scale(Complex64::new(1.0 / s, 0.0))
                } else {
                    poly
                };
                DictionaryEntry {
                    label,
                    poly,
                    sup_estimate: if s > 0.0 { 1.0 } else { 0.0 },
                }
            })
            .collect();
        Self::new(entries)
    }

    /// All monomials `x^α` in coordinates `1..=dim` with `min_degree ≤ |α| ≤ max_degree`,
    /// each divided by its exact sup over the unit ball of `space`.
    pub fn monomials(space: SpaceKind, dim: usize, min_degree: u32, max_degree: u32) -> Self {
        let mut entries = Vec::new();
        for m in multi_indices(dim, max_degree) {
            if m.degree() < min_degree {
                continue;
            }
            let sup = m.ball_sup(space);
            entries.push(DictionaryEntry {
                label: m.to_string(),
                poly: PolyFn::monomial(m, Complex64::new(1.0 / sup, 0.0)),
                sup_estimate: 1.0,
            });
        }
        Dictionary { entries }
    }

    pub fn entries(&self) -> &[DictionaryEntry] {
        &self.entries
    }

    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &PolyFn> {
        self.entries.iter().map(|e| &e.poly)
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        match self
            .entries
            .iter()
            .find(|e| e.sup_estimate.is_nan() || e.sup_estimate > 1.0 + tol)
        {
            Some(e) => Err(Error::NotNormalized {
                label: e.label.clone(),
                estimate: e.sup_estimate,
            }),
            None => Ok(()),
        }
    }

    pub fn extended(&self, more: &Dictionary) -> Result<Dictionary> {
        let mut entries = self.entries.clone();
        entries.extend(more.entries.iter().cloned());
        Self::new(entries)
    }
}

/// Every multi-index in coordinates `1..=dim` of degree at most `max_degree`,
/// in graded order.
pub fn multi_indices(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
    fn rec(
        k: usize,
        dim: usize,
        left: u32,
        cur: &mut Vec<(usize, u32)>,
        out: &mut Vec<MultiIndex>,
    ) {
        if k > dim {
            out.push(MultiIndex::new(cur.iter().copied()));
            return;
        }
        for e in 0..=left {
            cur.push((k, e));
            rec(k + 1, dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, dim, max_degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out
}

/// Finite-dictionary relaxation of the F-hull: `x` is a member when no
/// dictionary function exceeds, at `x`, its supremum over `a`.
pub fn hull_membership(x: &Vector, a: &PointSet, dict: &Dictionary) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(dict
        .polys()
        .all(|f| eval(f, x).norm() <= sup_abs(f, a.points()) + HULL_TOL))
}
