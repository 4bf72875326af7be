//! Deterministic counter-based random stream.
//!
//! Probabilistic bundling is only reproducible if the randomness it consumes
//! is reproducible, so all random operations in this crate draw from an
//! explicit [`RngStream`] instead of a global generator. The stream is a
//! counter-based SplitMix64: the draw at position `c` is a pure function of
//! `(seed, c)`, built entirely from 64-bit integer arithmetic, so identical
//! `(seed, counter)` pairs yield identical values on every platform.

/// Weyl-sequence increment used by SplitMix64.
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finalizer: a full-avalanche 64-bit mix.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A splittable, counter-based random stream.
///
/// Cloning captures the exact stream position. A stream is single-owner;
/// for concurrent use, [`RngStream::derive`] independent child streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    seed: u64,
    counter: u64,
}

impl RngStream {
    /// Stream starting at counter 0.
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Stream resumed at an explicit counter position.
    pub fn with_counter(seed: u64, counter: u64) -> Self {
        Self { seed, counter }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of draws consumed so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Next 64-bit draw; advances the counter.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(mix64(self.seed).wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform draw in `[0, bound)` via 128-bit multiply-shift reduction.
    pub fn next_below(&mut self, bound: u32) -> u32 {
        debug_assert!(bound >= 1);
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u32
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// An independent child stream keyed by `key`.
    ///
    /// Derivation does not consume draws from the parent, so any number of
    /// children can be split off a shared base seed (one per trial, one per
    /// vocabulary word, ...) without coordinating counters.
    pub fn derive(&self, key: u64) -> RngStream {
        RngStream::new(mix64(mix64(self.seed) ^ key.wrapping_mul(GAMMA)))
    }
}
