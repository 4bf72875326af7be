//! The hypervector algebra: bundle, bind, unit, inverse, release, powers.
//!
//! Bundle (`⊕`) is a probabilistic per-segment superposition: the result is
//! similar to every operand in proportion to its weight. Bind (`⊗`) is a
//! per-segment modular offset sum: the result is maximally dissimilar to its
//! operands, invertible, and distributes over bundle. Together with the unit
//! vector and exact inverses these form a ring over the space.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::space::{Hypervector, SpaceConfig};

/// One bundle operand: a code and its non-negative weight.
///
/// Weights are normalized to sum 1 inside [`bundle`]; they do not need to
/// arrive normalized.
#[derive(Debug, Clone, Copy)]
pub struct WeightedOperand<'a> {
    pub weight: f64,
    pub code: &'a Hypervector,
}

impl<'a> WeightedOperand<'a> {
    pub fn new(weight: f64, code: &'a Hypervector) -> Self {
        Self { weight, code }
    }
}

fn check_same_space<'a, I>(codes: I) -> Result<SpaceConfig>
where
    I: IntoIterator<Item = &'a Hypervector>,
{
    let mut iter = codes.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidInput("operand list is empty".into()))?;
    for code in iter {
        if code.space() != first.space() {
            return Err(Error::SpaceMismatch);
        }
    }
    Ok(first.space())
}

/// Weighted bundle: for each segment independently, pick operand `k` with
/// probability `w_k` and copy its offset.
///
/// The result stays in the segmented space and its expected overlap with
/// operand `k` is `w_k·M` plus accidental-match noise. The per-segment
/// choice is a single inverse-CDF draw over the normalized weights in the
/// given operand order, so a fixed `(operands, seed)` pair always produces
/// the same conformant.
pub fn bundle(operands: &[WeightedOperand<'_>], rng: &mut RngStream) -> Result<Hypervector> {
    let space = check_same_space(operands.iter().map(|op| op.code))?;
    let total: f64 = operands.iter().map(|op| op.weight).sum();
    if operands.iter().any(|op| !op.weight.is_finite() || op.weight < 0.0) {
        return Err(Error::InvalidInput("bundle weights must be non-negative".into()));
    }
    if total <= 0.0 {
        return Err(Error::InvalidInput("bundle weights sum to zero".into()));
    }
    let mut cumulative = Vec::with_capacity(operands.len());
    let mut acc = 0.0;
    for op in operands {
        acc += op.weight / total;
        cumulative.push(acc);
    }
    Ok(bundle_by_cdf(space, operands, &cumulative, rng))
}

/// Unweighted bundle `C_0 ⊕ C_1 ⊕ … ⊕ C_{K−1}`: the `w_k = 1/K` special
/// case of [`bundle`].
pub fn bundle_uniform<'a, I>(codes: I, rng: &mut RngStream) -> Result<Hypervector>
where
    I: IntoIterator<Item = &'a Hypervector>,
{
    let codes: Vec<&Hypervector> = codes.into_iter().collect();
    let space = check_same_space(codes.iter().copied())?;
    let count = codes.len() as f64;
    let operands: Vec<WeightedOperand<'_>> = codes
        .iter()
        .map(|&code| WeightedOperand::new(1.0, code))
        .collect();
    let cumulative: Vec<f64> = (0..codes.len()).map(|k| (k + 1) as f64 / count).collect();
    Ok(bundle_by_cdf(space, &operands, &cumulative, rng))
}

fn bundle_by_cdf(
    space: SpaceConfig,
    operands: &[WeightedOperand<'_>],
    cumulative: &[f64],
    rng: &mut RngStream,
) -> Hypervector {
    let last = operands.len() - 1;
    let offsets = (0..space.segment_count() as usize)
        .map(|segment| {
            let u = rng.next_f64();
            let k = cumulative.partition_point(|&c| c <= u).min(last);
            operands[k].code.offsets()[segment]
        })
        .collect();
    Hypervector::from_offsets(space, offsets).expect("bundle preserves the space")
}

/// Bind `C_0 ⊗ C_1 ⊗ … ⊗ C_{K−1}`: per-segment offset sum modulo the
/// segment width. Deterministic, commutative, associative; preserves
/// overlap and Hamming distance between any two codes bound by the same
/// factor.
pub fn bind<'a, I>(codes: I) -> Result<Hypervector>
where
    I: IntoIterator<Item = &'a Hypervector>,
{
    let codes: Vec<&Hypervector> = codes.into_iter().collect();
    let space = check_same_space(codes.iter().copied())?;
    let width = u64::from(space.segment_width());
    let offsets = (0..space.segment_count() as usize)
        .map(|segment| {
            codes
                .iter()
                .fold(0u64, |acc, code| (acc + u64::from(code.offsets()[segment])) % width)
                as u16
        })
        .collect();
    Ok(Hypervector::from_offsets(space, offsets).expect("bind preserves the space"))
}

/// The bind identity: every segment's ON bit at offset 0.
pub fn unit(space: SpaceConfig) -> Hypervector {
    let offsets = vec![0u16; space.segment_count() as usize];
    Hypervector::from_offsets(space, offsets).expect("unit is always valid")
}

/// Exact inverse under bind: per-segment offset `(d − C_i) mod d`, so that
/// `C ⊗ C⁻¹` is the unit vector.
pub fn inverse(code: &Hypervector) -> Hypervector {
    let width = code.space().segment_width();
    let offsets = code
        .offsets()
        .iter()
        .map(|&o| ((width - u32::from(o)) % width) as u16)
        .collect();
    Hypervector::from_offsets(code.space(), offsets).expect("inverse preserves the space")
}

/// Release `A ⊘ B = A ⊗ B⁻¹`: unbinds a previously bound factor, so that
/// `(A ⊗ B) ⊘ B = A` exactly.
pub fn release(a: &Hypervector, b: &Hypervector) -> Result<Hypervector> {
    bind([a, &inverse(b)])
}

/// Bind power `P^k` for any signed `k`: per-segment `(k·P_i) mod d`.
///
/// Negative exponents go through the inverse and `P^0` is the unit vector.
/// Computed by modular multiplication rather than repeated binding;
/// identical result at O(M) cost.
pub fn power(code: &Hypervector, exponent: i64) -> Hypervector {
    let width = u64::from(code.space().segment_width());
    let factor = exponent.rem_euclid(width as i64) as u64;
    let offsets = code
        .offsets()
        .iter()
        .map(|&o| ((u64::from(o) * factor) % width) as u16)
        .collect();
    Hypervector::from_offsets(code.space(), offsets).expect("power preserves the space")
}
