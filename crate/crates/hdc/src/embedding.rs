//! Streaming word-level embeddings.
//!
//! Every occurrence of a word produces one observation hypervector: the
//! uniform bundle of the center word's base code (unbound) and each context
//! word's base code bound with the positional marker of its relative offset.
//! One online learner per word absorbs its observations in a single pass,
//! without retaining the corpus, and the learner snapshot doubles as the
//! word's embedding. Releasing a positional marker from a snapshot and
//! cleaning up against the base-code book recovers the words most likely to
//! appear at that context position.

use std::collections::BTreeMap;

use crate::algebra::{bind, bundle_uniform, release};
use crate::cleanup::{Codebook, Match};
use crate::error::{Error, Result};
use crate::learner::{frame_inner_product, OnlineLearner};
use crate::rng::RngStream;
use crate::space::{Hypervector, SpaceConfig};
use crate::structures::SequenceCodec;

/// Normalized tokens grouped by document; context windows never cross
/// document boundaries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    documents: Vec<Vec<String>>,
}

impl TokenStream {
    pub fn documents(&self) -> &[Vec<String>] {
        &self.documents
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Total token count across documents.
    pub fn token_count(&self) -> usize {
        self.documents.iter().map(Vec::len).sum()
    }

    /// Appends another stream's documents, keeping boundaries intact.
    pub fn extend(&mut self, other: TokenStream) {
        self.documents.extend(other.documents);
    }
}

/// Lowercases and splits text on non-alphanumeric runs; blank lines separate
/// documents. Empty tokens and empty documents are dropped.
pub fn tokenize(text: &str) -> TokenStream {
    let mut documents = Vec::new();
    let mut current: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                documents.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.extend(
            line.split(|c: char| !c.is_alphanumeric())
                .filter(|t| !t.is_empty())
                .map(|t| t.to_lowercase()),
        );
    }
    if !current.is_empty() {
        documents.push(current);
    }
    TokenStream { documents }
}

/// FNV-1a, fixed here because word-keyed base codes must hash identically
/// across platforms and releases.
fn word_key(word: &str) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in word.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// One embedding model: a base code per vocabulary word, one learner per
/// word, and the positional codec shared by all observations.
///
/// Base codes are derived from the model seed keyed by word hash, so the
/// same seed reproduces the same vocabulary codes regardless of encounter
/// order. Bases never change after creation; only learners evolve.
#[derive(Debug, Clone)]
pub struct VocabularyModel {
    space: SpaceConfig,
    window: u16,
    seed: u64,
    codec: SequenceCodec,
    bases: Codebook,
    learners: BTreeMap<String, OnlineLearner>,
}

impl VocabularyModel {
    /// Fresh model with a window half-size `window` (context positions
    /// `−window ..= window` around each center).
    pub fn new(space: SpaceConfig, window: u16, seed: u64) -> Self {
        let mut codec_rng =
            RngStream::new(seed).derive(word_key(SequenceCodec::CODEBOOK_LABEL));
        Self {
            space,
            window,
            seed,
            codec: SequenceCodec::generate(space, &mut codec_rng),
            bases: Codebook::new(space),
            learners: BTreeMap::new(),
        }
    }

    pub(crate) fn from_parts(
        space: SpaceConfig,
        window: u16,
        seed: u64,
        codec: SequenceCodec,
        bases: Codebook,
        learners: BTreeMap<String, OnlineLearner>,
    ) -> Self {
        Self { space, window, seed, codec, bases, learners }
    }

    pub fn space(&self) -> SpaceConfig {
        self.space
    }

    pub fn window(&self) -> u16 {
        self.window
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn codec(&self) -> &SequenceCodec {
        &self.codec
    }

    /// The word codebook holding every base code seen so far.
    pub fn bases(&self) -> &Codebook {
        &self.bases
    }

    pub fn vocabulary_len(&self) -> usize {
        self.bases.len()
    }

    pub fn learner(&self, word: &str) -> Option<&OnlineLearner> {
        self.learners.get(word)
    }

    /// Learners in word order.
    pub fn learners(&self) -> impl Iterator<Item = (&str, &OnlineLearner)> {
        self.learners.iter().map(|(w, l)| (w.as_str(), l))
    }

    /// Base code for a word, creating it on first sight.
    pub fn ensure_base(&mut self, word: &str) -> &Hypervector {
        if !self.bases.contains(word) {
            let mut rng = RngStream::new(self.seed).derive(word_key(word));
            let code = Hypervector::random(self.space, &mut rng);
            self.bases
                .insert(word, code)
                .expect("word was absent and the code is in the model space");
        }
        self.bases.get(word).expect("just ensured")
    }

    /// Base code for an already-seen word.
    pub fn base_code(&self, word: &str) -> Option<&Hypervector> {
        self.bases.get(word)
    }

    /// Observation hypervector for the token at `center` in `document`: the
    /// uniform bundle of the center's base code plus each in-document
    /// context word's base code bound with its position marker. Positions
    /// outside the document are simply omitted, so edge windows shrink.
    pub fn observe(
        &mut self,
        document: &[String],
        center: usize,
        rng: &mut RngStream,
    ) -> Hypervector {
        assert!(center < document.len(), "center index out of bounds");
        let half = i64::from(self.window);
        let mut operands = Vec::with_capacity(2 * self.window as usize + 1);
        for relative in -half..=half {
            let position = center as i64 + relative;
            if position < 0 || position >= document.len() as i64 {
                continue;
            }
            let base = self.ensure_base(&document[position as usize]).clone();
            if relative == 0 {
                operands.push(base);
            } else {
                let marker = self.codec.position_marker(relative);
                operands.push(bind([&base, &marker]).expect("model-space operands"));
            }
        }
        bundle_uniform(&operands, rng).expect("the center operand always exists")
    }

    /// Single training pass: every token position yields one observation,
    /// fed to the center word's learner exactly once. The stream itself is
    /// not retained, and snapshots are queryable between any two feeds.
    pub fn train_stream(&mut self, stream: &TokenStream, rng: &mut RngStream) {
        for document in stream.documents() {
            for center in 0..document.len() {
                let observation = self.observe(document, center, rng);
                self.learners
                    .entry(document[center].clone())
                    .or_default()
                    .feed(&observation, rng)
                    .expect("observations are in the model space");
            }
        }
    }

    /// Words most likely to appear `position` steps from `word` (negative
    /// positions look left): releases the position marker from the word's
    /// snapshot and cleans up against the base-code book.
    pub fn query_context(&self, word: &str, position: i64, k: usize) -> Result<Vec<Match>> {
        if position == 0 || position.unsigned_abs() > u64::from(self.window) {
            return Err(Error::PositionOutOfWindow { position, window: self.window });
        }
        let learner = self
            .learners
            .get(word)
            .ok_or_else(|| Error::UnknownWord(word.into()))?;
        let snapshot = learner.snapshot().expect("stored learners have experiences");
        let probe = release(snapshot, &self.codec.position_marker(position))?;
        self.bases.nearest(&probe, k)
    }

    /// Embedding similarity of two words: the frame inner product of their
    /// learner snapshots.
    pub fn word_similarity(&self, first: &str, second: &str) -> Result<f64> {
        let a = self
            .learners
            .get(first)
            .ok_or_else(|| Error::UnknownWord(first.into()))?;
        let b = self
            .learners
            .get(second)
            .ok_or_else(|| Error::UnknownWord(second.into()))?;
        frame_inner_product(
            a.snapshot().expect("stored learners have experiences"),
            b.snapshot().expect("stored learners have experiences"),
        )
    }
}
