//! Online bundling learner and probabilistic decomposition over a frame.
//!
//! The learner is a running-average bundler: feeding experience `C_k` nudges
//! the snapshot towards `C_k` with learning rate `1/(k+1)`, so the snapshot
//! stays a conformant of the uniform bundle of everything seen so far. The
//! frame inner product reverses the process: it rescales raw overlap against
//! a nearly orthogonal set into the empirical probability of each member.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::space::{Hypervector, SpaceConfig};

/// Running-average bundler over a stream of codes.
///
/// Single-writer; clone the snapshot out at any feed boundary for
/// concurrent read-only inference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnlineLearner {
    code: Option<Hypervector>,
    count: u64,
}

impl Default for OnlineLearner {
    fn default() -> Self {
        Self::new()
    }
}

impl OnlineLearner {
    /// An unseeded learner; the first feed fixes its space.
    pub fn new() -> Self {
        Self { code: None, count: 0 }
    }

    /// Restores a learner from persisted state. `count` must be ≥ 1.
    pub fn from_parts(code: Hypervector, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidInput(
                "a learner with a snapshot must have count ≥ 1".into(),
            ));
        }
        Ok(Self { code: Some(code), count })
    }

    /// Experiences absorbed so far.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// Current snapshot, if at least one experience has been fed.
    pub fn snapshot(&self) -> Option<&Hypervector> {
        self.code.as_ref()
    }

    pub fn space(&self) -> Option<SpaceConfig> {
        self.code.as_ref().map(Hypervector::space)
    }

    /// Absorbs one experience.
    ///
    /// The first feed copies the experience verbatim. Every later feed lets
    /// each segment independently adopt the incoming offset with probability
    /// `1/(count+1)` (the two-operand bundle recurrence), so on average
    /// only `M/(count+1)` segments change per step and the snapshot keeps
    /// near-equal similarity to all experiences.
    pub fn feed(&mut self, experience: &Hypervector, rng: &mut RngStream) -> Result<()> {
        match self.code.as_mut() {
            None => {
                self.code = Some(experience.clone());
                self.count = 1;
            }
            Some(snapshot) => {
                if snapshot.space() != experience.space() {
                    return Err(Error::SpaceMismatch);
                }
                let rate = 1.0 / (self.count + 1) as f64;
                let incoming = experience.offsets();
                for (slot, &offset) in snapshot.offsets_mut().iter_mut().zip(incoming) {
                    if rng.next_f64() < rate {
                        *slot = offset;
                    }
                }
                self.count += 1;
            }
        }
        Ok(())
    }
}

/// An ordered, labeled set of codes with pairwise overlap at the noise
/// floor: the frame for probabilistic decomposition.
///
/// Construction rejects pairs whose relative overlap exceeds `5·s`,
/// catching duplicates and accidental correlation.
#[derive(Debug, Clone)]
pub struct NearlyOrthogonalSet {
    labels: Vec<String>,
    members: Vec<Hypervector>,
}

impl NearlyOrthogonalSet {
    pub fn new(entries: Vec<(String, Hypervector)>) -> Result<Self> {
        let (labels, members): (Vec<String>, Vec<Hypervector>) = entries.into_iter().unzip();
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidInput("nearly orthogonal set is empty".into()))?;
        let space = first.space();
        if members.iter().any(|m| m.space() != space) {
            return Err(Error::SpaceMismatch);
        }
        // Relative overlap ≤ 5s means raw overlap ≤ 5·M/d.
        let max_overlap = 5 * space.segment_count() / space.segment_width();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let overlap = members[i].overlap(&members[j])?;
                if overlap > max_overlap {
                    return Err(Error::CorrelatedMembers(format!(
                        "{:?} and {:?} overlap in {} segments (limit {})",
                        labels[i], labels[j], overlap, max_overlap
                    )));
                }
            }
        }
        Ok(Self { labels, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn members(&self) -> &[Hypervector] {
        &self.members
    }

    pub fn space(&self) -> SpaceConfig {
        self.members[0].space()
    }
}

/// Coefficients recovered by projecting a code over a frame.
///
/// `coefficients` are clamped to `[0, 1]`; `raw` keeps the uncorrected
/// values (finite-sample noise can push them slightly outside) for
/// diagnostics. Both run parallel to the frame's member order.
#[derive(Debug, Clone)]
pub struct FrameProjection {
    coefficients: Vec<f64>,
    raw: Vec<f64>,
}

impl FrameProjection {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }
}

/// Inner product of bundle coefficients under a shared frame:
/// `⟨A, B⟩* = ⟨A, B⟩ / (Ns(1−s)) − s/(1−s)`.
///
/// The subtracted term removes the inherent sparsity bias, so uncorrelated
/// inputs score near zero (possibly slightly negative; values are not
/// clamped here) and `⟨A, A⟩* = 1` exactly.
pub fn frame_inner_product(a: &Hypervector, b: &Hypervector) -> Result<f64> {
    let overlap = a.overlap(b)?;
    let s = a.space().sparsity();
    let relative = f64::from(overlap) / f64::from(a.space().segment_count());
    Ok((relative - s) / (1.0 - s))
}

/// Decomposes `A` over the frame: `α_k = clamp(⟨A, P_k⟩*, 0, 1)`.
///
/// When `A` is a bundle (or learner snapshot) over the frame, `α_k` is the
/// empirical probability of member `P_k` within the experience `A` records.
pub fn project(a: &Hypervector, frame: &NearlyOrthogonalSet) -> Result<FrameProjection> {
    if a.space() != frame.space() {
        return Err(Error::SpaceMismatch);
    }
    let raw: Vec<f64> = frame
        .members()
        .iter()
        .map(|member| frame_inner_product(a, member))
        .collect::<Result<_>>()?;
    let coefficients = raw.iter().map(|&v| v.clamp(0.0, 1.0)).collect();
    Ok(FrameProjection { coefficients, raw })
}
