//! Classical communication over quantum interference and multiple access
//! channels: entropy calculus on classical-quantum ensembles, rate-region
//! construction, interference-condition certification and finite-blocklength
//! decoder simulation.

pub mod channels;
pub mod conditions;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod qmatrix;
pub mod regions;
pub mod simdec;

pub use error::{QicError, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator seeded from a master seed and a path of indices, so that
/// per-sample and per-trial streams do not depend on scheduling.
pub fn derived_rng(master: u64, path: &[u64]) -> ChaCha8Rng {
    let seed = path.iter().fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)));
    ChaCha8Rng::seed_from_u64(seed)
}
