//! Defaults shared by the experiment runner and the CLI.

/// Cap on the dimension a forward shift may grow a vector to.
pub const DIM_CAP: usize = crate::symbols::DEFAULT_DIM_CAP;
/// Radius of sampled seminorm spheres.
pub const SPHERE_RADIUS: f64 = 0.5;
/// Points per sampled sphere.
pub const SAMPLE_COUNT: usize = 2000;
/// Longest trace computed by default.
pub const N_MAX: usize = 40;
/// Convergence tolerance for ergodicity verdicts.
pub const TOL: f64 = 1e-6;
/// Seed used when neither the config nor `BALLERG_SEED` provides one.
pub const SEED: u64 = 20_240_101;
/// Environment variable overriding the configured seed.
pub const SEED_ENV: &str = "BALLERG_SEED";
