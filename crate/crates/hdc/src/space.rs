//! The hypervector space: configuration, representation, generation, metrics.
//!
//! A hypervector here is a sparse binary vector of dimension `N` partitioned
//! into `M` equal segments of width `d = 1/s`, with exactly one ON bit per
//! segment. Only the per-segment offsets are stored: a vector is `M` small
//! integers, never a dense bit array.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Dimensional parameters of a segmented sparse binary space.
///
/// `dimension` is the total bit count `N`, `segment_width` is `d = 1/s`
/// (the sparsity denominator), and the segment count is `M = N / d`.
/// The default space uses `N = 65536`, `d = 256`, hence `M = 256`; segment
/// count and width coincide there, but the model does not require it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceConfig {
    dimension: u32,
    segment_width: u32,
}

impl SpaceConfig {
    /// Validates `N` divisible by `d`, `d ≥ 2`, `M ≥ 1`, and `d ≤ 65536`
    /// (offsets are persisted as 16-bit integers).
    pub fn new(dimension: u32, segment_width: u32) -> Result<Self> {
        if segment_width < 2 {
            return Err(Error::InvalidSpace(format!(
                "segment width must be at least 2, got {segment_width}"
            )));
        }
        if segment_width > 65_536 {
            return Err(Error::InvalidSpace(format!(
                "segment width {segment_width} exceeds the 16-bit offset range"
            )));
        }
        if dimension == 0 || !dimension.is_multiple_of(segment_width) {
            return Err(Error::InvalidSpace(format!(
                "dimension {dimension} is not a positive multiple of segment width {segment_width}"
            )));
        }
        Ok(Self {
            dimension,
            segment_width,
        })
    }

    /// Total bit count `N`.
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// Bits per segment, `d = 1/s`.
    pub fn segment_width(&self) -> u32 {
        self.segment_width
    }

    /// Number of segments `M = N·s`, which is also the ON-bit count.
    pub fn segment_count(&self) -> u32 {
        self.dimension / self.segment_width
    }

    /// Fraction of ON bits, `s = 1/d`.
    pub fn sparsity(&self) -> f64 {
        1.0 / f64::from(self.segment_width)
    }
}

impl Default for SpaceConfig {
    /// 65,536 bits at sparsity 1/256: 256 segments of width 256.
    fn default() -> Self {
        Self {
            dimension: 65_536,
            segment_width: 256,
        }
    }
}

/// A point of the segmented space: one ON bit per segment, stored as `M`
/// offsets in `[0, d)`, segment 0 first.
///
/// Hypervectors are immutable after construction and comparable only within
/// one space. All metric and algebra entry points reject mixed spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypervector {
    space: SpaceConfig,
    offsets: Vec<u16>,
}

impl Hypervector {
    /// Random code: each of the `M` offsets drawn independently and
    /// uniformly from `[0, d)`.
    pub fn random(space: SpaceConfig, rng: &mut RngStream) -> Self {
        let offsets = (0..space.segment_count())
            .map(|_| rng.next_below(space.segment_width()) as u16)
            .collect();
        Self { space, offsets }
    }

    /// Builds a vector from explicit offsets, validating length and range.
    pub fn from_offsets(space: SpaceConfig, offsets: Vec<u16>) -> Result<Self> {
        if offsets.len() != space.segment_count() as usize {
            return Err(Error::InvalidInput(format!(
                "expected {} offsets, got {}",
                space.segment_count(),
                offsets.len()
            )));
        }
        if let Some(&bad) = offsets.iter().find(|&&o| u32::from(o) >= space.segment_width()) {
            return Err(Error::InvalidInput(format!(
                "offset {bad} exceeds segment width {}",
                space.segment_width()
            )));
        }
        Ok(Self { space, offsets })
    }

    pub fn space(&self) -> SpaceConfig {
        self.space
    }

    pub fn offsets(&self) -> &[u16] {
        &self.offsets
    }

    pub(crate) fn offsets_mut(&mut self) -> &mut [u16] {
        &mut self.offsets
    }

    /// True when every offset is zero (the bind identity).
    pub fn is_unit(&self) -> bool {
        self.offsets.iter().all(|&o| o == 0)
    }

    /// Global positions of the ON bits; debug/visualization helper only,
    /// everything else works on offsets.
    pub fn on_bit_positions(&self) -> Vec<u64> {
        let d = u64::from(self.space.segment_width());
        self.offsets
            .iter()
            .enumerate()
            .map(|(i, &o)| i as u64 * d + u64::from(o))
            .collect()
    }

    fn require_same_space(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Overlap `O(A, B)`: the number of positions ON in both vectors, which
    /// in this space is the count of segments with equal offsets. Equals the
    /// inner product `⟨A, B⟩`; range `[0, M]`.
    pub fn overlap(&self, other: &Self) -> Result<u32> {
        self.require_same_space(other)?;
        Ok(self
            .offsets
            .iter()
            .zip(&other.offsets)
            .filter(|(a, b)| a == b)
            .count() as u32)
    }

    /// Hamming distance `H(A, B) = 2·(M − O(A, B))`.
    ///
    /// Computed from the overlap identity rather than by bit expansion:
    /// exact, and O(M) instead of O(N). Always even in this space.
    pub fn hamming(&self, other: &Self) -> Result<u32> {
        let overlap = self.overlap(other)?;
        Ok(2 * (self.space.segment_count() - overlap))
    }

    /// Cosine of the angle between the vector forms: `O(A, B) / M`.
    pub fn cosine(&self, other: &Self) -> Result<f64> {
        let overlap = self.overlap(other)?;
        Ok(f64::from(overlap) / f64::from(self.space.segment_count()))
    }
}
