#![allow(dead_code)]

use dirac_edm::DiracParams;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

pub fn signed_log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = log_uniform(rng, lo, hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// One-dimensional parameters with every magnitude drawn log-uniformly
/// from [1e-6, 1e2].
pub fn random_params(rng: &mut ChaCha8Rng) -> DiracParams {
    DiracParams::one_d(
        log_uniform(rng, 1e-6, 1e2),
        log_uniform(rng, 1e-6, 1e2),
        signed_log_uniform(rng, 1e-6, 1e2),
        signed_log_uniform(rng, 1e-6, 1e2),
        signed_log_uniform(rng, 1e-6, 1e2),
        signed_log_uniform(rng, 1e-6, 1e2),
    )
}

/// Order-one parameters for dynamics checks.
pub fn moderate_params(rng: &mut ChaCha8Rng) -> DiracParams {
    DiracParams::one_d(
        rng.random_range(0.2..3.0),
        rng.random_range(0.5..2.0),
        rng.random_range(-0.5..0.5),
        rng.random_range(-0.5..0.5),
        rng.random_range(0.2..2.0),
        rng.random_range(-2.0..2.0),
    )
}
