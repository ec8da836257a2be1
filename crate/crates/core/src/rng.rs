//! Seeded random streams.
//!
//! A campaign has one master seed. Replicate `k` of grid cell `c` draws from
//! the ChaCha8 generator keyed by the master seed with stream id
//! `(c << 32) | k`, so its numbers do not depend on which thread runs it or
//! in which order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn substream(master_seed: u64, cell: u32, replicate: u32) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream((u64::from(cell) << 32) | u64::from(replicate));
    rng
}
