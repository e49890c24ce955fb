//! Seeded random-number substreams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by
//! the user seed, with the 64-bit stream id set to `(tag << 56) | index`.
//! A tag names the purpose (tuple family, permutation replicate, ...) and
//! the index the unit of work (chunk, replicate, row). Any unit of work can
//! therefore be recomputed in isolation, which is what makes results
//! independent of how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Name and version of the generator scheme; recorded in CLI output.
pub const RNG_NAME: &str = "chacha8-stream-v1";

const INDEX_MASK: u64 = (1 << 56) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Stream {
    PairTuples = 1,
    TripleTuples = 2,
    QuadTuples = 3,
    ProjectionRow = 4,
    Permutation = 5,
    Replicate = 6,
    Bootstrap = 7,
    EstimatorSeed = 8,
}

pub fn substream(seed: u64, stream: Stream, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stream as u64) << 56) | (index & INDEX_MASK));
    rng
}

/// A fresh 64-bit seed derived from `(seed, stream, index)`.
pub fn derive_seed(seed: u64, stream: Stream, index: u64) -> u64 {
    use rand::RngCore;
    substream(seed, stream, index).next_u64()
}
