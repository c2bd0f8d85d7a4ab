//! Deterministic RNG stream derivation.
//!
//! Every randomized routine in the crate derives an isolated seed from a
//! master seed plus a list of context tags (stage, replicate index, document
//! content hash, ...). Streams are therefore independent of execution order
//! and of each other, which is what makes parallel bootstrap replicates and
//! corpus-order-independent training reproducible.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; a well-mixed 64-bit permutation.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Fold context tags into a master seed.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut x = splitmix64(master);
    for &t in tags {
        x = splitmix64(x ^ t);
    }
    x
}

/// A ChaCha8 stream keyed on `(master, tags)`.
pub fn derive_rng(master: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tags))
}
