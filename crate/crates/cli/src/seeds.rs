//! Per-run seed derivation.
//!
//! `derive_seed(base, b, label)` folds the base seed, the replication index
//! and the FNV-1a hash of a label through SplitMix64:
//!
//! ```text
//! s = mix(mix(mix(base) ^ b) ^ fnv1a64(label))
//! ```
//!
//! Data sets use the label `"data"`; each arm cell uses its own label, so no
//! two runs share a random stream.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, b| (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME))
}

pub fn derive_seed(base: u64, replication: u64, label: &str) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ replication) ^ fnv1a64(label.as_bytes()))
}
