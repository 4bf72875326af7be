mod algebra;
mod demo;
mod embed;
mod rand;
mod stats;

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use hdc::{Codebook, SpaceConfig};

/// Failures are classed for distinct exit codes: 1 for I/O, 2 for
/// validation (bad arguments, unknown labels/words, malformed files;
/// clap's own usage errors also exit 2), 3 for a failed demo assertion.
#[derive(Debug)]
pub enum CliError {
    Io(std::io::Error),
    Validation(String),
    DemoFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Validation(_) => 2,
            CliError::DemoFailure(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::DemoFailure(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<hdc::Error> for CliError {
    fn from(e: hdc::Error) -> Self {
        match e {
            hdc::Error::Io(inner) => CliError::Io(inner),
            other => CliError::Validation(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "hdc",
    version,
    about = "Segmented sparse binary hypervectors: codes, algebra, structures, embeddings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate labeled random codes into a codebook file
    Rand(rand::RandArgs),
    /// Apply bundle/bind/release/inverse/power to labeled codes
    Algebra(algebra::AlgebraArgs),
    /// Role-filler analogy demonstration over two country records
    DemoMexico(demo::DemoArgs),
    /// Train and query streaming word embeddings
    #[command(subcommand)]
    Embed(embed::EmbedCommand),
    /// Inspect codebook, learner, and model files
    Stats(stats::StatsArgs),
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Rand(args) => rand::run(args),
        Command::Algebra(args) => algebra::run(args),
        Command::DemoMexico(args) => demo::run(args),
        Command::Embed(cmd) => embed::run(cmd),
        Command::Stats(args) => stats::run(args),
    }
}

/// Space flags shared by every generating command; the defaults reproduce
/// the reference configuration (N = 65536, d = 256).
#[derive(Args)]
pub struct SpaceOpts {
    /// Total dimension N
    #[arg(long = "dim", default_value_t = 65_536)]
    pub dimension: u32,
    /// Segment width d (the sparsity denominator)
    #[arg(long = "segwidth", default_value_t = 256)]
    pub segment_width: u32,
}

impl SpaceOpts {
    pub fn space(&self) -> CliResult<SpaceConfig> {
        Ok(SpaceConfig::new(self.dimension, self.segment_width)?)
    }
}

pub fn load_codebook(path: &Path) -> CliResult<Codebook> {
    let mut reader = BufReader::new(File::open(path)?);
    Ok(hdc::io::read_codebook(&mut reader)?)
}

pub fn save_codebook(book: &Codebook, path: &Path) -> CliResult<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    hdc::io::write_codebook(book, &mut writer)?;
    writer.flush()?;
    Ok(())
}
