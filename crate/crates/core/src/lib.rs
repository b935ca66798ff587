//! Index calculus for the elliptic-curve discrete logarithm over binary
//! fields, driven by summation polynomials.
//!
//! A random combination `R = uP + vQ` is decomposed into factor-base points
//! by solving a chain of third summation polynomials,
//!
//! ```text
//! S3(u1, x1, x2) = 0,  S3(u_i, u_{i+1}, x_{i+2}) = 0,  S3(u_{t-2}, x_t, R_X) = 0,
//! ```
//!
//! with `x_i` restricted to a small F_2-subspace `V` of `F_{2^n}`. The chain
//! is Weil-descended to a cubic Boolean system and solved by degree-bounded
//! linearisation. Collected relations are combined by linear algebra modulo
//! the group order to recover the logarithm.
//!
//! Module map:
//!
//! * [`field`]: `F_{2^n}`, its quadratic extension, small prime fields.
//! * [`curve`]: Weierstrass group law, binary curves, instance generation.
//! * [`sumpoly`]: multivariate polynomials, resultants, summation polynomials.
//! * [`descent`]: the decomposition chain and its Weil descent to ANF.
//! * [`gbsolver`]: Macaulay-matrix elimination over GF(2) with degree telemetry.
//! * [`decompose`]: factor base, random trials, relation assembly.
//! * [`linalg`]: kernel vectors modulo the group order, log extraction.
//! * [`pollard`]: Pollard rho baseline.
//! * [`analysis`]: success-probability and asymptotic cost models.
//! * [`cli`]: experiment harness, text formats and the command-line front end.

pub mod analysis;
pub mod cli;
pub mod curve;
pub mod decompose;
pub mod descent;
pub mod error;
pub mod field;
pub mod gbsolver;
pub mod linalg;
pub mod pollard;
pub mod sumpoly;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG used throughout.
pub type DetRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> DetRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// RNG for the `index`-th independent task under a master seed.
pub fn rng_for_task(seed: u64, index: u64) -> DetRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    rng
}
