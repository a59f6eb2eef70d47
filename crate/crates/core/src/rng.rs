//! Deterministic per-trial random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Recorded in every estimator's output.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.3): seed_from_u64(rng_seed), stream = trial index";

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
