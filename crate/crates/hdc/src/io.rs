//! Binary persistence for codebooks, learners, and embedding models.
//!
//! All formats are little-endian and fixed:
//!
//! * Codebook (`HVB1`): magic, u32 dimension `N`, u32 segment width `d`,
//!   u64 entry count; per entry a u16 label byte-length, the UTF-8 label,
//!   and `M` u16 offsets.
//! * Learner (`HVL1`): magic, u32 `N`, u32 `d`, u64 experience count,
//!   `M` u16 offsets.
//! * Embedding model (`HVM1`): a codebook block holding the step marker
//!   (first entry, reserved label) and every base code, followed by the
//!   magic, a u64 learner count, and per learner a u16 word byte-length,
//!   the UTF-8 word, a u64 experience count, and `M` u16 offsets.
//!
//! Hypervectors are always the bare `M` little-endian u16 offsets; headers
//! live in the container formats, never per vector. Inverted indexes are
//! rebuilt on load, not persisted. Writers emit deterministic layouts
//! (codebooks in insertion order, model learners in word order), so a
//! load/save cycle is byte-identical.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::cleanup::Codebook;
use crate::embedding::VocabularyModel;
use crate::error::{Error, Result};
use crate::learner::OnlineLearner;
use crate::space::{Hypervector, SpaceConfig};
use crate::structures::SequenceCodec;

const CODEBOOK_MAGIC: &[u8; 4] = b"HVB1";
const LEARNER_MAGIC: &[u8; 4] = b"HVL1";
const MODEL_MAGIC: &[u8; 4] = b"HVM1";

fn write_u16<W: Write>(w: &mut W, value: u16) -> Result<()> {
    Ok(w.write_all(&value.to_le_bytes())?)
}

fn write_u32<W: Write>(w: &mut W, value: u32) -> Result<()> {
    Ok(w.write_all(&value.to_le_bytes())?)
}

fn write_u64<W: Write>(w: &mut W, value: u64) -> Result<()> {
    Ok(w.write_all(&value.to_le_bytes())?)
}

fn read_array<R: Read, const LEN: usize>(r: &mut R) -> Result<[u8; LEN]> {
    let mut buf = [0u8; LEN];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

fn read_u16<R: Read>(r: &mut R) -> Result<u16> {
    Ok(u16::from_le_bytes(read_array(r)?))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    Ok(u32::from_le_bytes(read_array(r)?))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    Ok(u64::from_le_bytes(read_array(r)?))
}

fn expect_magic<R: Read>(r: &mut R, magic: &[u8; 4], what: &str) -> Result<()> {
    let found: [u8; 4] = read_array(r)?;
    if &found == magic {
        Ok(())
    } else {
        Err(Error::Format(format!(
            "expected {what} magic {:?}, found {:?}",
            String::from_utf8_lossy(magic),
            String::from_utf8_lossy(&found)
        )))
    }
}

fn write_offsets<W: Write>(w: &mut W, code: &Hypervector) -> Result<()> {
    for &offset in code.offsets() {
        write_u16(w, offset)?;
    }
    Ok(())
}

fn read_offsets<R: Read>(r: &mut R, space: SpaceConfig) -> Result<Hypervector> {
    let offsets = (0..space.segment_count())
        .map(|_| read_u16(r))
        .collect::<Result<Vec<u16>>>()?;
    Hypervector::from_offsets(space, offsets)
        .map_err(|e| Error::Format(format!("bad offsets: {e}")))
}

fn write_label<W: Write>(w: &mut W, label: &str) -> Result<()> {
    let bytes = label.as_bytes();
    let len = u16::try_from(bytes.len())
        .map_err(|_| Error::InvalidInput(format!("label {label:?} exceeds 65535 bytes")))?;
    write_u16(w, len)?;
    Ok(w.write_all(bytes)?)
}

fn read_label<R: Read>(r: &mut R) -> Result<String> {
    let len = read_u16(r)? as usize;
    let mut buf = vec![0u8; len];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Format(format!("label is not UTF-8: {e}")))
}

fn read_space<R: Read>(r: &mut R) -> Result<SpaceConfig> {
    let dimension = read_u32(r)?;
    let width = read_u32(r)?;
    SpaceConfig::new(dimension, width)
        .map_err(|e| Error::Format(format!("bad space header: {e}")))
}

fn write_codebook_block<'a, W, I>(
    w: &mut W,
    space: SpaceConfig,
    count: u64,
    entries: I,
) -> Result<()>
where
    W: Write,
    I: Iterator<Item = (&'a str, &'a Hypervector)>,
{
    w.write_all(CODEBOOK_MAGIC)?;
    write_u32(w, space.dimension())?;
    write_u32(w, space.segment_width())?;
    write_u64(w, count)?;
    for (label, code) in entries {
        write_label(w, label)?;
        write_offsets(w, code)?;
    }
    Ok(())
}

/// Serializes a codebook; entries keep their insertion order.
pub fn write_codebook<W: Write>(book: &Codebook, w: &mut W) -> Result<()> {
    write_codebook_block(w, book.space(), book.len() as u64, book.entries())
}

/// Reads a codebook and rebuilds its inverted index.
pub fn read_codebook<R: Read>(r: &mut R) -> Result<Codebook> {
    expect_magic(r, CODEBOOK_MAGIC, "codebook")?;
    let space = read_space(r)?;
    let count = read_u64(r)?;
    let mut book = Codebook::new(space);
    for _ in 0..count {
        let label = read_label(r)?;
        let code = read_offsets(r, space)?;
        book.insert(label, code)
            .map_err(|e| Error::Format(format!("bad codebook entry: {e}")))?;
    }
    Ok(book)
}

/// Serializes a learner snapshot with its experience count. Unseeded
/// learners have no snapshot (or space) to write and are rejected.
pub fn write_learner<W: Write>(learner: &OnlineLearner, w: &mut W) -> Result<()> {
    let snapshot = learner.snapshot().ok_or(Error::UnseededLearner)?;
    w.write_all(LEARNER_MAGIC)?;
    write_u32(w, snapshot.space().dimension())?;
    write_u32(w, snapshot.space().segment_width())?;
    write_u64(w, learner.count())?;
    write_offsets(w, snapshot)
}

pub fn read_learner<R: Read>(r: &mut R) -> Result<OnlineLearner> {
    expect_magic(r, LEARNER_MAGIC, "learner")?;
    let space = read_space(r)?;
    let count = read_u64(r)?;
    let snapshot = read_offsets(r, space)?;
    OnlineLearner::from_parts(snapshot, count)
        .map_err(|e| Error::Format(format!("bad learner: {e}")))
}

/// Serializes an embedding model: the base-code book (step marker first)
/// followed by the learner table in word order.
pub fn write_model<W: Write>(model: &VocabularyModel, w: &mut W) -> Result<()> {
    let marker_entry = (
        SequenceCodec::CODEBOOK_LABEL,
        model.codec().step_marker(),
    );
    write_codebook_block(
        w,
        model.space(),
        model.bases().len() as u64 + 1,
        std::iter::once(marker_entry).chain(model.bases().entries()),
    )?;
    w.write_all(MODEL_MAGIC)?;
    let learners: Vec<(&str, &OnlineLearner)> = model.learners().collect();
    write_u64(w, learners.len() as u64)?;
    for (word, learner) in learners {
        write_label(w, word)?;
        write_u64(w, learner.count())?;
        write_offsets(w, learner.snapshot().ok_or(Error::UnseededLearner)?)?;
    }
    Ok(())
}

/// Reads an embedding model. The window half-size and seed are runtime
/// configuration, not part of the format; supply the values the model
/// should continue with.
pub fn read_model<R: Read>(r: &mut R, window: u16, seed: u64) -> Result<VocabularyModel> {
    let stored = read_codebook(r)?;
    let space = stored.space();
    let codec = SequenceCodec::load_from(&stored)
        .map_err(|e| Error::Format(format!("model lacks a step marker: {e}")))?;
    let mut bases = Codebook::new(space);
    for (label, code) in stored.entries() {
        if label != SequenceCodec::CODEBOOK_LABEL {
            bases
                .insert(label, code.clone())
                .map_err(|e| Error::Format(format!("bad base code: {e}")))?;
        }
    }

    expect_magic(r, MODEL_MAGIC, "model")?;
    let count = read_u64(r)?;
    let mut learners = BTreeMap::new();
    for _ in 0..count {
        let word = read_label(r)?;
        let experiences = read_u64(r)?;
        let snapshot = read_offsets(r, space)?;
        let learner = OnlineLearner::from_parts(snapshot, experiences)
            .map_err(|e| Error::Format(format!("bad learner for {word:?}: {e}")))?;
        if learners.insert(word.clone(), learner).is_some() {
            return Err(Error::Format(format!("duplicate learner for {word:?}")));
        }
    }
    Ok(VocabularyModel::from_parts(space, window, seed, codec, bases, learners))
}
