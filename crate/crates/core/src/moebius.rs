//! Automorphisms of the Hilbert ball.
//!
//! For `a` in the open unit ball of `ℓ₂`, with `v(a) = √(1 − ‖a‖²)`,
//!
//! ```text
//! γ_a(x) = a⟨x,a⟩ / (1 + v(a)) + v(a) x
//! α_a(x) = γ_a((a − x) / (1 − ⟨x,a⟩))
//! ```
//!
//! `α_a` is an involution of the ball exchanging `0` and `a`. Points of
//! different dimension are zero-padded to the larger one.
//!
//! Only the Hilbert-space family is implemented. Other spaces with a
//! transitive family of involutive ball automorphisms (C*-algebras and more
//! generally JB*-triples) would plug in at this point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spaces::{inner, SpaceKind, Vector};

/// Below this modulus the denominator `1 − ⟨x,a⟩` is treated as singular.
pub const SINGULAR_DENOMINATOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphismParam {
    a: Vector,
    v_a: f64,
}

impl AutomorphismParam {
    pub fn new(a: Vector) -> Result<Self> {
        if !a.space().is_hilbert() {
            return Err(Error::NotHilbert);
        }
        let n2 = a.norm_sqr();
        if n2.is_nan() || n2 >= 1.0 {
            return Err(Error::OutsideBall(a.norm()));
        }
        Ok(AutomorphismParam {
            a,
            v_a: (1.0 - n2).sqrt(),
        })
    }

    pub fn from_coords(coords: &[Complex64]) -> Result<Self> {
        Self::new(Vector::new(SpaceKind::L2, coords.to_vec()))
    }

    pub fn point(&self) -> &Vector {
        &self.a
    }

    /// `√(1 − ‖a‖²)`.
    pub fn v(&self) -> f64 {
        self.v_a
    }
}

/// The linear contraction `γ_a`, which fixes `a`.
pub fn gamma(p: &AutomorphismParam, x: &Vector) -> Result<Vector> {
    if !x.space().is_hilbert() {
        return Err(Error::NotHilbert);
    }
    let xa = inner(x, &p.a)?;
    Ok(x.scale_real(p.v_a).axpy(xa / (1.0 + p.v_a), &p.a))
}

pub fn alpha(p: &AutomorphismParam, x: &Vector) -> Result<Vector> {
    let denom = Complex64::new(1.0, 0.0) - inner(x, &p.a)?;
    if denom.norm() < SINGULAR_DENOMINATOR {
        return Err(Error::Singular(denom.norm()));
    }
    let w = p.a.sub(x).scale(denom.inv());
    gamma(p, &w)
}

/// `ρ(r) = √(1 − (1 − r)²)`: whenever `‖a‖ ≤ r`, `α_a` maps the closed
/// ball of radius `r` into the ball of radius `ρ(r)`.
pub fn rho_bound(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "radius must lie in [0, 1), got {r}"
        )));
    }
    let s = 1.0 - r;
    Ok((1.0 - s * s).sqrt())
}

/// `|(1 − ‖y‖²) − (1 − ‖a‖²)(1 − ‖x‖²)/|1 − ⟨x,a⟩|²|` with `y = α_a(x)`.
pub fn disc_identity_residual(p: &AutomorphismParam, x: &Vector) -> Result<f64> {
    let y = alpha(p, x)?;
    let lhs = 1.0 - y.norm_sqr();
    let denom = (Complex64::new(1.0, 0.0) - inner(x, &p.a)?).norm_sqr();
    let rhs = (1.0 - p.a.norm_sqr()) * (1.0 - x.norm_sqr()) / denom;
    Ok((lhs - rhs).abs())
}
