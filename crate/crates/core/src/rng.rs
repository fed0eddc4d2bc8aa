//! Named, independently seeded random streams.
//!
//! Every consumer of randomness draws from its own ChaCha stream so that
//! adding draws in one place never shifts the sequence seen by another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type RandomStream = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamId {
    Target = 1,
    Satellite = 2,
    Measurement = 3,
}

pub fn stream(seed: u64, id: StreamId) -> RandomStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}
