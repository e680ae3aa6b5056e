//! Seeded randomness for the randomized soundness checks.
//!
//! Every check draws from its own stream derived from `OFFSETAL_SEED` (or a
//! fixed default) and a label, so results do not depend on call order.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED_ENV: &str = "OFFSETAL_SEED";
const DEFAULT_SEED: u64 = 0x0FF5_E7A1;

pub fn base_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Deterministic generator for the named check.
pub fn stream(label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01B3);
    }
    ChaCha8Rng::seed_from_u64(base_seed() ^ h)
}

/// Random rational `a/b` with `|a| <= num` and `1 <= b <= den`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-num..=num)),
        BigInt::from(rng.gen_range(1..=den)),
    )
}
