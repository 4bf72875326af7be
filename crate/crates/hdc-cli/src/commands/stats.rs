use std::fs::File;
use std::io::{BufReader, Read, Seek, SeekFrom};
use std::path::{Path, PathBuf};

use clap::Args;
use hdc::{Codebook, OnlineLearner, VocabularyModel};

use super::{CliError, CliResult};
use crate::output;

/// Pairwise overlap matrices are only printed for books up to this size.
const MATRIX_LIMIT: usize = 32;

#[derive(Args)]
pub struct StatsArgs {
    /// Files to inspect (codebook, learner, or model format)
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// Matches to print when a learner snapshot meets a codebook
    #[arg(long, default_value_t = 3)]
    pub topk: usize,
}

enum Inspected {
    Codebook(Codebook),
    Learner(OnlineLearner),
    Model(VocabularyModel),
}

fn inspect(path: &Path) -> CliResult<Inspected> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 4];
    reader.read_exact(&mut magic)?;
    reader.seek(SeekFrom::Start(0))?;
    match &magic {
        b"HVL1" => Ok(Inspected::Learner(hdc::io::read_learner(&mut reader)?)),
        b"HVB1" => {
            // A model file is a codebook block followed by a learner table;
            // a bare codebook simply ends at the block boundary.
            let book = hdc::io::read_codebook(&mut reader)?;
            let mut probe = [0u8; 4];
            match reader.read_exact(&mut probe) {
                Ok(()) if &probe == b"HVM1" => {
                    reader.seek(SeekFrom::Start(0))?;
                    Ok(Inspected::Model(hdc::io::read_model(&mut reader, 2, 0)?))
                }
                Ok(()) => Err(CliError::Validation(format!(
                    "{}: trailing bytes after the codebook block",
                    path.display()
                ))),
                Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => {
                    Ok(Inspected::Codebook(book))
                }
                Err(e) => Err(e.into()),
            }
        }
        other => Err(CliError::Validation(format!(
            "{}: unrecognized magic {:?}",
            path.display(),
            String::from_utf8_lossy(other)
        ))),
    }
}

fn codebook_lines(book: &Codebook) {
    output::kv("format", "codebook");
    output::space_lines(book.space());
    output::kv("entries", book.len());
    if book.len() > MATRIX_LIMIT {
        return;
    }
    for (label, code) in book.entries() {
        println!("offsets_all_zero\t{label}\t{}", code.is_unit());
    }
    for (a, code_a) in book.entries() {
        for (b, code_b) in book.entries() {
            let overlap = code_a.overlap(code_b).expect("one codebook, one space");
            println!("overlap\t{a}\t{b}\t{overlap}");
        }
    }
}

fn learner_lines(learner: &OnlineLearner, book: Option<&Codebook>, topk: usize) -> CliResult<()> {
    output::kv("format", "learner");
    let snapshot = learner.snapshot().expect("persisted learners are seeded");
    output::space_lines(snapshot.space());
    output::kv("count", learner.count());
    if let Some(book) = book {
        if book.space() == snapshot.space() && !book.is_empty() {
            output::match_lines("snapshot", &book.nearest(snapshot, topk)?);
        }
    }
    Ok(())
}

fn model_lines(model: &VocabularyModel) {
    output::kv("format", "model");
    output::space_lines(model.space());
    output::kv("vocabulary", model.vocabulary_len());
    output::kv("learners", model.learners().count());
    if model.learners().count() <= MATRIX_LIMIT {
        for (word, learner) in model.learners() {
            println!("learner_count\t{word}\t{}", learner.count());
        }
    }
}

/// Prints space parameters and content summaries for each file. When a
/// codebook appears among the inputs, learner snapshots from the same
/// invocation are matched against the first one.
pub fn run(args: StatsArgs) -> CliResult<()> {
    let mut first_book: Option<Codebook> = None;
    for path in &args.paths {
        output::kv("file", path.display());
        match inspect(path)? {
            Inspected::Codebook(book) => {
                codebook_lines(&book);
                if first_book.is_none() {
                    first_book = Some(book);
                }
            }
            Inspected::Learner(learner) => {
                learner_lines(&learner, first_book.as_ref(), args.topk.max(1))?;
            }
            Inspected::Model(model) => model_lines(&model),
        }
    }
    Ok(())
}
