//! Truncated sequence-space vectors.
//!
//! A [`Vector`] is a finite prefix of a sequence in `ℓ_p` (`1 ≤ p ≤ ∞`) or
//! `c₀`; coordinates past `dim` are zero. Coordinates are addressed 1-based
//! in the public API (`e₁` is `Vector::basis(space, dim, 1)`), matching the
//! usual `x₁, x₂, …` notation.

use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of an `ℓ_p` space. `Infinity` is a sentinel, never a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) if p >= 1.0 && p.is_finite() => Ok(Exponent::Finite(p)),
            Raw::Num(p) => Err(de::Error::custom(format!(
                "ℓ_p exponent must be ≥ 1, got {p}"
            ))),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => {
                Ok(Exponent::Infinity)
            }
            Raw::Str(s) => Err(de::Error::custom(format!("unknown exponent {s:?}"))),
        }
    }
}

/// Ambient space of a vector. Serializes as `{"lp": p}` (`p` a number or
/// `"inf"`) or `"c0"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Lp(Exponent),
    C0,
}

impl SpaceKind {
    pub const L1: SpaceKind = SpaceKind::Lp(Exponent::Finite(1.0));
    pub const L2: SpaceKind = SpaceKind::Lp(Exponent::Finite(2.0));
    pub const LINF: SpaceKind = SpaceKind::Lp(Exponent::Infinity);

    pub fn lp(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "ℓ_p exponent must be ≥ 1, got {p}"
            )));
        }
        if p.is_infinite() {
            return Ok(Self::LINF);
        }
        Ok(SpaceKind::Lp(Exponent::Finite(p)))
    }

    pub fn is_hilbert(self) -> bool {
        self == Self::L2
    }

    /// Norm of a coordinate slice in this space.
    pub fn norm_of(self, coords: &[Complex64]) -> f64 {
        match self {
            SpaceKind::C0 | SpaceKind::Lp(Exponent::Infinity) => {
                coords.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }
            SpaceKind::Lp(Exponent::Finite(1.0)) => coords.iter().map(|z| z.norm()).sum(),
            SpaceKind::Lp(Exponent::Finite(2.0)) => {
                // scaled to avoid overflow/underflow
                let scale = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if scale == 0.0 {
                    return 0.0;
                }
                let ss: f64 = coords.iter().map(|z| (z / scale).norm_sqr()).sum();
                scale * ss.sqrt()
            }
            SpaceKind::Lp(Exponent::Finite(p)) => {
                let scale = coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
                if scale == 0.0 {
                    return 0.0;
                }
                let s: f64 = coords.iter().map(|z| (z.norm() / scale).powf(p)).sum();
                scale * s.powf(1.0 / p)
            }
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::C0 => write!(f, "c0"),
            SpaceKind::Lp(Exponent::Infinity) => write!(f, "l_inf"),
            SpaceKind::Lp(Exponent::Finite(p)) => write!(f, "l_{p}"),
        }
    }
}

/// Serde helper: a coordinate list as a JSON array of `[re, im]` pairs.
pub mod pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(coords: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<[f64; 2]> = coords.iter().map(|z| [z.re, z.im]).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let raw: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}

/// A point of a truncated sequence space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Vector {
    space: SpaceKind,
    #[serde(with = "pairs")]
    coords: Vec<Complex64>,
}

impl Vector {
    /// Builds a vector; an empty coordinate list becomes the 1-dimensional zero.
    pub fn new(space: SpaceKind, mut coords: Vec<Complex64>) -> Self {
        if coords.is_empty() {
            coords.push(Complex64::new(0.0, 0.0));
        }
        Vector { space, coords }
    }

    pub fn from_real(space: SpaceKind, coords: &[f64]) -> Self {
        Self::new(
            space,
            coords.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(space: SpaceKind, dim: usize) -> Self {
        Self::new(space, vec![Complex64::new(0.0, 0.0); dim.max(1)])
    }

    /// The unit vector `e_k` (1-based) in dimension `max(dim, k)`.
    pub fn basis(space: SpaceKind, dim: usize, k: usize) -> Self {
        assert!(k >= 1, "basis vectors are 1-based");
        let mut v = Self::zeros(space, dim.max(k));
        v.coords[k - 1] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    /// Coordinate `k` (1-based); zero past the stored dimension.
    pub fn coord(&self, k: usize) -> Complex64 {
        assert!(k >= 1, "coordinates are 1-based");
        self.coords.get(k - 1).copied().unwrap_or_default()
    }

    /// Number of coordinates up to and including the last nonzero one.
    pub fn effective_dim(&self) -> usize {
        self.coords
            .iter()
            .rposition(|z| *z != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1)
    }

    pub fn with_space(mut self, space: SpaceKind) -> Self {
        self.space = space;
        self
    }

    pub fn padded(&self, dim: usize) -> Vector {
        let mut coords = self.coords.clone();
        if coords.len() < dim {
            coords.resize(dim, Complex64::new(0.0, 0.0));
        }
        Vector {
            space: self.space,
            coords,
        }
    }

    /// Drops trailing zeros, keeping at least one coordinate.
    pub fn trimmed(&self) -> Vector {
        let keep = self.effective_dim().max(1);
        Vector {
            space: self.space,
            coords: self.coords[..keep].to_vec(),
        }
    }

    pub fn scale(&self, lambda: Complex64) -> Vector {
        Vector {
            space: self.space,
            coords: self.coords.iter().map(|z| z * lambda).collect(),
        }
    }

    pub fn scale_real(&self, lambda: f64) -> Vector {
        self.scale(Complex64::new(lambda, 0.0))
    }

    /// `self + lambda * other`, zero-padding to the larger dimension. The
    /// result lives in `self`'s space.
    pub fn axpy(&self, lambda: Complex64, other: &Vector) -> Vector {
        let dim = self.dim().max(other.dim());
        let coords = (1..=dim)
            .map(|k| self.coord(k) + lambda * other.coord(k))
            .collect();
        Vector {
            space: self.space,
            coords,
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.axpy(Complex64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.axpy(Complex64::new(-1.0, 0.0), other)
    }

    pub fn norm(&self) -> f64 {
        self.space.norm_of(&self.coords)
    }

    pub fn norm_sqr(&self) -> f64 {
        let n = self.norm();
        n * n
    }

    /// Distance in `self`'s ambient norm.
    pub fn dist(&self, other: &Vector) -> f64 {
        self.sub(other).norm()
    }
}

/// Equality up to trailing zeros; the ambient space must match.
impl PartialEq for Vector {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && (1..=self.dim().max(other.dim())).all(|k| self.coord(k) == other.coord(k))
    }
}

pub fn norm(v: &Vector) -> f64 {
    v.norm()
}

/// `Σ x_i · conj(a_i)`, linear in `x`. Both arguments must be in `ℓ₂`.
pub fn inner(x: &Vector, a: &Vector) -> Result<Complex64> {
    if !x.space.is_hilbert() || !a.space.is_hilbert() {
        return Err(Error::NotHilbert);
    }
    Ok(x.coords
        .iter()
        .zip(&a.coords)
        .map(|(xi, ai)| xi * ai.conj())
        .sum())
}

/// A finite set of points sharing one ambient space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    label: String,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(label: impl Into<String>, points: Vec<Vector>) -> Result<Self> {
        if let Some(first) = points.first() {
            if points.iter().any(|p| p.space != first.space) {
                return Err(Error::InvalidParameter(
                    "point set mixes ambient spaces".into(),
                ));
            }
        }
        Ok(PointSet {
            label: label.into(),
            points,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn space(&self) -> Option<SpaceKind> {
        self.points.first().map(Vector::space)
    }
}

/// `1 - max ‖x‖` over the set. A positive margin certifies that the finite
/// set is bounded away from the unit sphere.
pub fn ball_margin(s: &PointSet) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(1.0 - s.points.iter().map(Vector::norm).fold(0.0, f64::max))
}
