use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout; seeded runs are reproducible.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}
