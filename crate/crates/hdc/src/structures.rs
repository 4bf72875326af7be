//! Set and sequence encoding: whole collections compressed into one code.
//!
//! A set is the uniform bundle of its members; near-neighbor search over a
//! codebook recovers every member, and the recovered count is the set's
//! cardinality. A sequence additionally binds each item with a power of a
//! step marker before bundling, so releasing `P_step^k` exposes the item at
//! position `k`. Decoding walks positions until no stored code scores above
//! the threshold.

use crate::algebra::{bind, bundle_uniform, power, release};
use crate::cleanup::Codebook;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::space::{Hypervector, SpaceConfig};

/// Positional marker for sequence encoding.
///
/// Position `k` is tagged by `P_step^k`; the marker is generated once and
/// persisted with whatever codebook accompanies the sequences it encoded,
/// under the reserved label [`SequenceCodec::CODEBOOK_LABEL`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCodec {
    step_marker: Hypervector,
}

impl SequenceCodec {
    /// Reserved codebook label under which the step marker persists.
    pub const CODEBOOK_LABEL: &'static str = "__P_step__";

    /// Draws a fresh step marker. The unit vector would make all positions
    /// collide, so the (cosmically unlikely) all-zero draw is rejected and
    /// redrawn.
    pub fn generate(space: SpaceConfig, rng: &mut RngStream) -> Self {
        loop {
            let candidate = Hypervector::random(space, rng);
            if !candidate.is_unit() {
                return Self { step_marker: candidate };
            }
        }
    }

    /// Wraps an existing marker, rejecting the unit vector.
    pub fn new(step_marker: Hypervector) -> Result<Self> {
        if step_marker.is_unit() {
            return Err(Error::InvalidInput(
                "the unit vector cannot serve as a step marker".into(),
            ));
        }
        Ok(Self { step_marker })
    }

    pub fn step_marker(&self) -> &Hypervector {
        &self.step_marker
    }

    pub fn space(&self) -> SpaceConfig {
        self.step_marker.space()
    }

    /// Marker for position `k`, i.e. `P_step^k`.
    pub fn position_marker(&self, position: i64) -> Hypervector {
        power(&self.step_marker, position)
    }

    /// Stores the marker in a codebook under the reserved label.
    pub fn store_in(&self, book: &mut Codebook) -> Result<()> {
        book.insert(Self::CODEBOOK_LABEL, self.step_marker.clone())
    }

    /// Recovers a marker previously stored with [`SequenceCodec::store_in`].
    pub fn load_from(book: &Codebook) -> Result<Self> {
        let code = book
            .get(Self::CODEBOOK_LABEL)
            .ok_or_else(|| Error::UnknownLabel(Self::CODEBOOK_LABEL.into()))?;
        Self::new(code.clone())
    }
}

/// Default recovery threshold, `M / (2·K_max)` with `K_max = 16`: the
/// midpoint between the weakest expected member signal `M/K_max` and the
/// noise floor, clamped to at least 1.
pub fn default_threshold(space: SpaceConfig) -> u32 {
    (space.segment_count() / 32).max(1)
}

fn warn_on_correlated(members: &[Hypervector]) {
    let space = members[0].space();
    let limit = 5 * space.segment_count() / space.segment_width();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if let Ok(overlap) = members[i].overlap(&members[j]) {
                if overlap > limit {
                    log::warn!(
                        "set members {i} and {j} overlap in {overlap} segments \
                         (noise limit {limit}); recovery quality will degrade"
                    );
                }
            }
        }
    }
}

/// Encodes a set as the uniform bundle of its members.
///
/// Members are expected to be nearly orthogonal; correlated pairs only log
/// a warning because real vocabularies drift from orthogonality and decode
/// degrades gracefully.
pub fn encode_set(members: &[Hypervector], rng: &mut RngStream) -> Result<Hypervector> {
    if members.is_empty() {
        return Err(Error::InvalidInput("cannot encode an empty set".into()));
    }
    warn_on_correlated(members);
    bundle_uniform(members, rng)
}

/// Recovers set members: every codebook entry scoring at least `threshold`
/// against the probe. Counting the result recovers the set cardinality.
pub fn decode_set(set_code: &Hypervector, book: &Codebook, threshold: u32) -> Result<Vec<String>> {
    Ok(book
        .matches_above(set_code, threshold)?
        .into_iter()
        .map(|m| m.label)
        .collect())
}

/// Encodes a sequence: each item bound with its position marker, then all
/// bundled uniformly. Position 0 uses `P⁰ = I`, so a one-item sequence is
/// the item itself.
pub fn encode_sequence(
    items: &[Hypervector],
    codec: &SequenceCodec,
    rng: &mut RngStream,
) -> Result<Hypervector> {
    if items.is_empty() {
        return Err(Error::InvalidInput("cannot encode an empty sequence".into()));
    }
    let positioned: Vec<Hypervector> = items
        .iter()
        .enumerate()
        .map(|(k, item)| bind([item, &codec.position_marker(k as i64)]))
        .collect::<Result<_>>()?;
    bundle_uniform(&positioned, rng)
}

/// Decodes a sequence in order: for `k = 0, 1, 2, …` release `P_step^k`,
/// take the top-1 codebook match, and stop at the first position whose best
/// overlap falls below `threshold`.
///
/// Deterministic given its inputs. The scan is capped at `M` positions:
/// beyond that the per-item signal `M/K` is under one segment, below any
/// usable threshold, so the cap only guards degenerate thresholds.
pub fn decode_sequence(
    sequence_code: &Hypervector,
    book: &Codebook,
    codec: &SequenceCodec,
    threshold: u32,
) -> Result<Vec<String>> {
    if book.is_empty() {
        return Ok(Vec::new());
    }
    let mut labels = Vec::new();
    for position in 0..i64::from(sequence_code.space().segment_count()) {
        let probe = release(sequence_code, &codec.position_marker(position))?;
        let best = book.nearest(&probe, 1)?.remove(0);
        if best.overlap < threshold {
            break;
        }
        labels.push(best.label);
    }
    Ok(labels)
}
