//! Segmented sparse binary hypervectors and the algebra over them.
//!
//! A hypervector here is a binary vector of dimension `N` (65,536 by
//! default) at sparsity `s` (1/256 by default), partitioned into `M = N·s`
//! segments with exactly one ON bit each, so a vector is just `M` small
//! offsets. The crate provides:
//!
//! * the space itself: configuration, random generation, overlap / Hamming /
//!   cosine metrics ([`space`]);
//! * the algebra: probabilistic weighted bundling, invertible binding,
//!   unit and inverse vectors, release, marker powers ([`algebra`]);
//! * online bundling learners and probabilistic decomposition over nearly
//!   orthogonal frames ([`learner`]);
//! * set and sequence encoding with positional markers ([`structures`]);
//! * cleanup memory: labeled codebooks with exact near-neighbor search via
//!   a brute-force and an inverted-index backend ([`cleanup`]);
//! * a streaming word-embedding trainer with context recovery
//!   ([`embedding`]);
//! * deterministic binary persistence for all of the above ([`io`]).
//!
//! Everything probabilistic draws from an explicit counter-based
//! [`rng::RngStream`], so any construction is reproducible from a seed.

pub mod algebra;
pub mod cleanup;
pub mod embedding;
pub mod error;
pub mod io;
pub mod learner;
pub mod rng;
pub mod space;
pub mod structures;

pub use algebra::{bind, bundle, bundle_uniform, inverse, power, release, unit, WeightedOperand};
pub use cleanup::{Codebook, Match};
pub use embedding::{tokenize, TokenStream, VocabularyModel};
pub use error::{Error, Result};
pub use learner::{
    frame_inner_product, project, FrameProjection, NearlyOrthogonalSet, OnlineLearner,
};
pub use rng::RngStream;
pub use space::{Hypervector, SpaceConfig};
pub use structures::{
    decode_sequence, decode_set, default_threshold, encode_sequence, encode_set, SequenceCodec,
};
