//! Cleanup memory: a labeled codebook with exact near-neighbor search.
//!
//! Probes recovered from bundles are noisy; the cleanup memory maps them back
//! to stored symbols by overlap. Two backends produce identical rankings: a
//! brute-force scan, and an inverted index keyed by `(segment, offset)` that
//! touches only the postings a probe actually hits. Scores are integer
//! overlaps throughout, and ties break lexicographically by label so results
//! are deterministic across platforms and backends.
//!
//! Concurrency: any number of readers may query a codebook they share, or
//! one writer may insert; queries never observe a partially inserted entry.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::space::{Hypervector, SpaceConfig};

/// One retrieval hit: ranks are dense from 1, overlaps non-increasing with
/// rank, ties broken by label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub label: String,
    pub overlap: u32,
    pub rank: usize,
}

/// Labeled hypervector store with near-neighbor retrieval.
#[derive(Debug, Clone)]
pub struct Codebook {
    space: SpaceConfig,
    labels: Vec<String>,
    codes: Vec<Hypervector>,
    ids: HashMap<String, usize>,
    // Posting lists, one per (segment, offset) key at `segment·d + offset`;
    // each holds entry ids in insertion order.
    postings: Vec<Vec<u32>>,
}

impl Codebook {
    pub fn new(space: SpaceConfig) -> Self {
        let keys = space.segment_count() as usize * space.segment_width() as usize;
        Self {
            space,
            labels: Vec::new(),
            codes: Vec::new(),
            ids: HashMap::new(),
            postings: vec![Vec::new(); keys],
        }
    }

    pub fn space(&self) -> SpaceConfig {
        self.space
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.ids.contains_key(label)
    }

    pub fn get(&self, label: &str) -> Option<&Hypervector> {
        self.ids.get(label).map(|&id| &self.codes[id])
    }

    /// Entries in insertion order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &Hypervector)> {
        self.labels.iter().map(String::as_str).zip(self.codes.iter())
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    /// Total posting count; always `len() · M`.
    pub fn posting_count(&self) -> usize {
        self.postings.iter().map(Vec::len).sum()
    }

    /// Inserts a labeled code and posts all `M` of its `(segment, offset)`
    /// keys to the index.
    pub fn insert(&mut self, label: impl Into<String>, code: Hypervector) -> Result<()> {
        let label = label.into();
        if code.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        if self.ids.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let id = self.codes.len() as u32;
        let width = self.space.segment_width() as usize;
        for (segment, &offset) in code.offsets().iter().enumerate() {
            self.postings[segment * width + offset as usize].push(id);
        }
        self.ids.insert(label.clone(), id as usize);
        self.labels.push(label);
        self.codes.push(code);
        Ok(())
    }

    fn require_probe(&self, probe: &Hypervector) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyCodebook);
        }
        if probe.space() != self.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// Overlap of the probe with every entry, accumulated from posting hits
    /// across the probe's `M` keys: O(M + hits), no floating point.
    fn indexed_scores(&self, probe: &Hypervector) -> Vec<u32> {
        let mut scores = vec![0u32; self.codes.len()];
        let width = self.space.segment_width() as usize;
        for (segment, &offset) in probe.offsets().iter().enumerate() {
            for &id in &self.postings[segment * width + offset as usize] {
                scores[id as usize] += 1;
            }
        }
        scores
    }

    fn scan_scores(&self, probe: &Hypervector) -> Vec<u32> {
        self.codes
            .iter()
            .map(|code| code.overlap(probe).expect("entries share the probe's space"))
            .collect()
    }

    fn rank(&self, scores: Vec<u32>, keep: Keep) -> Vec<Match> {
        let mut ids: Vec<usize> = match keep {
            Keep::Top(_) => (0..scores.len()).collect(),
            Keep::AtLeast(min) => (0..scores.len()).filter(|&id| scores[id] >= min).collect(),
        };
        ids.sort_unstable_by(|&a, &b| {
            scores[b]
                .cmp(&scores[a])
                .then_with(|| self.labels[a].cmp(&self.labels[b]))
        });
        if let Keep::Top(k) = keep {
            ids.truncate(k);
        }
        ids.into_iter()
            .enumerate()
            .map(|(position, id)| Match {
                label: self.labels[id].clone(),
                overlap: scores[id],
                rank: position + 1,
            })
            .collect()
    }

    /// Top-`k` entries by overlap with the probe, via the inverted index.
    pub fn nearest(&self, probe: &Hypervector, k: usize) -> Result<Vec<Match>> {
        if k == 0 {
            return Err(Error::InvalidInput("nearest requires k ≥ 1".into()));
        }
        self.require_probe(probe)?;
        Ok(self.rank(self.indexed_scores(probe), Keep::Top(k)))
    }

    /// Top-`k` by linear scan; the reference ranking the index must match.
    pub fn nearest_exhaustive(&self, probe: &Hypervector, k: usize) -> Result<Vec<Match>> {
        if k == 0 {
            return Err(Error::InvalidInput("nearest requires k ≥ 1".into()));
        }
        self.require_probe(probe)?;
        Ok(self.rank(self.scan_scores(probe), Keep::Top(k)))
    }

    /// Every entry with overlap ≥ `min_overlap`, ranked as in [`nearest`].
    pub fn matches_above(&self, probe: &Hypervector, min_overlap: u32) -> Result<Vec<Match>> {
        self.require_probe(probe)?;
        Ok(self.rank(self.indexed_scores(probe), Keep::AtLeast(min_overlap)))
    }

    /// Threshold search by linear scan.
    pub fn matches_above_exhaustive(
        &self,
        probe: &Hypervector,
        min_overlap: u32,
    ) -> Result<Vec<Match>> {
        self.require_probe(probe)?;
        Ok(self.rank(self.scan_scores(probe), Keep::AtLeast(min_overlap)))
    }
}

#[derive(Clone, Copy)]
enum Keep {
    Top(usize),
    AtLeast(u32),
}
