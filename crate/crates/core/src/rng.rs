//! Counter-based random substreams.
//!
//! Every consumer of randomness names its draw by `(master seed, key, index)`.
//! The stream for a given triple does not depend on how many other streams were
//! opened before it, so work can be split across threads or reordered without
//! changing any number.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a over the parts, with a separator byte so `("ab","c") != ("a","bc")`.
pub fn stream_key(parts: &[&str]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    for part in parts {
        for &b in part.as_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
        h ^= 0xff;
        h = h.wrapping_mul(PRIME);
    }
    h
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for substream `index` under `(seed, key)`.
pub fn substream(seed: u64, key: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(key)));
    rng.set_stream(index);
    rng
}

/// Uniform draw in the open interval (0, 1) from 52 random bits.
pub fn open_unit(bits: u64) -> f64 {
    ((bits >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}
