//! Composition-operator dynamics on the unit ball of truncated sequence
//! spaces.
//!
//! * [`spaces`]: truncated `ℓ_p` / `c₀` vectors and their norms
//! * [`moebius`]: the involutive automorphisms `α_a` of the Hilbert ball
//! * [`symbols`]: the self-maps of the ball, orbits, conjugation, fixed points
//! * [`functions`]: sparse polynomials, sampled seminorms, dictionaries
//! * [`dynamics`]: powers and Cesàro means of `C_φ`, distances, rate fits
//! * [`experiments`]: the reproducible experiment catalog behind the CLI

pub mod config;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod functions;
pub mod moebius;
mod par;
pub mod spaces;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64;
