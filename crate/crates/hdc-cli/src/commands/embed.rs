use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use hdc::{RngStream, TokenStream, VocabularyModel};

use super::{CliError, CliResult, SpaceOpts};
use crate::output;

#[derive(Subcommand)]
pub enum EmbedCommand {
    /// Stream corpus files once and write (or update) a model
    Train(TrainArgs),
    /// Answer context and similarity queries from a trained model
    Query(QueryArgs),
}

#[derive(Args)]
pub struct TrainArgs {
    /// Corpus files: plain UTF-8 text, blank-line-separated documents
    #[arg(long, required = true, num_args = 1..)]
    pub corpus: Vec<PathBuf>,
    /// Model file to create or continue training
    #[arg(long)]
    pub model: PathBuf,
    #[command(flatten)]
    pub space: SpaceOpts,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Context window half-size
    #[arg(long, default_value_t = 2)]
    pub window: u16,
}

#[derive(Args)]
pub struct QueryArgs {
    /// Model file written by `embed train`
    #[arg(long)]
    pub model: PathBuf,
    /// Word whose learner to probe
    #[arg(long)]
    pub word: String,
    /// Context position to recover (1 = next word, -1 = previous, ...)
    #[arg(long, allow_hyphen_values = true, conflicts_with = "similar")]
    pub position: Option<i64>,
    /// Report embedding similarity with this word instead of a context probe
    #[arg(long)]
    pub similar: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub topk: usize,
    /// Context window half-size (runtime configuration, not stored)
    #[arg(long, default_value_t = 2)]
    pub window: u16,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(cmd: EmbedCommand) -> CliResult<()> {
    match cmd {
        EmbedCommand::Train(args) => train(args),
        EmbedCommand::Query(args) => query(args),
    }
}

fn load_model(path: &Path, window: u16, seed: u64) -> CliResult<VocabularyModel> {
    let mut reader = BufReader::new(File::open(path)?);
    Ok(hdc::io::read_model(&mut reader, window, seed)?)
}

fn train(args: TrainArgs) -> CliResult<()> {
    let space = args.space.space()?;
    let mut model = if args.model.exists() {
        let model = load_model(&args.model, args.window, args.seed)?;
        if model.space() != space {
            return Err(CliError::Validation(format!(
                "model space ({} / {}) differs from the requested flags",
                model.space().dimension(),
                model.space().segment_width()
            )));
        }
        model
    } else {
        VocabularyModel::new(space, args.window, args.seed)
    };

    let mut stream = TokenStream::default();
    for path in &args.corpus {
        stream.extend(hdc::tokenize(&std::fs::read_to_string(path)?));
    }

    // Key the training stream by the experiences already absorbed so that
    // continuing a model never replays the draws of the previous pass.
    let absorbed: u64 = model.learners().map(|(_, l)| l.count()).sum();
    let mut rng = RngStream::new(args.seed).derive(absorbed);
    model.train_stream(&stream, &mut rng);

    let mut writer = BufWriter::new(File::create(&args.model)?);
    hdc::io::write_model(&model, &mut writer)?;
    writer.flush()?;

    output::kv("model", args.model.display());
    output::kv("documents", stream.documents().len());
    output::kv("tokens", stream.token_count());
    output::kv("vocabulary", model.vocabulary_len());
    output::kv("learners", model.learners().count());
    Ok(())
}

fn query(args: QueryArgs) -> CliResult<()> {
    let model = load_model(&args.model, args.window, args.seed)?;
    match (args.position, &args.similar) {
        (Some(position), None) => {
            let matches = model.query_context(&args.word, position, args.topk.max(1))?;
            output::kv("word", &args.word);
            output::kv("position", position);
            output::match_lines("context", &matches);
            Ok(())
        }
        (None, Some(other)) => {
            let value = model.word_similarity(&args.word, other)?;
            println!("similarity\t{}\t{}\t{value:.6}", args.word, other);
            Ok(())
        }
        _ => Err(CliError::Validation(
            "pass exactly one of --position or --similar".to_string(),
        )),
    }
}
