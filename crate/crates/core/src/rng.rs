//! Deterministic random substreams.
//!
//! Every stochastic step draws from `ChaCha8(root seed)` on a stream number
//! `tag << 56 | a << 28 | b`, where `tag` names the purpose and `(a, b)` are
//! small counters such as (grid index, trial index). Results therefore do
//! not depend on scheduling or thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const GRAPH: u64 = 1;
pub const CODEWORD: u64 = 2;
pub const NOISE: u64 = 3;
pub const TRIAL: u64 = 4;
pub const WALK: u64 = 5;
pub const POSITION: u64 = 6;
pub const SUBTREE: u64 = 7;

const COUNTER_MASK: u64 = (1 << 28) - 1;

pub fn stream_id(tag: u64, a: u64, b: u64) -> u64 {
    debug_assert!(a <= COUNTER_MASK && b <= COUNTER_MASK);
    tag << 56 | (a & COUNTER_MASK) << 28 | (b & COUNTER_MASK)
}

pub fn substream(root: u64, tag: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(stream_id(tag, a, b));
    rng
}

/// Seed for a derived object such as a generated graph.
pub fn derive_seed(root: u64, tag: u64, a: u64) -> u64 {
    use rand::Rng;
    substream(root, tag, a, 0).random()
}
