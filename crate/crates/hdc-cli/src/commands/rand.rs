use std::path::PathBuf;

use clap::Args;
use hdc::{Codebook, Hypervector, RngStream};

use super::{save_codebook, CliResult, SpaceOpts};
use crate::output;

#[derive(Args)]
pub struct RandArgs {
    /// Number of codes to generate
    #[arg(long)]
    pub count: u32,
    /// Output codebook path
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub space: SpaceOpts,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Writes `count` random codes labeled `c0`, `c1`, ... as a codebook file.
pub fn run(args: RandArgs) -> CliResult<()> {
    let space = args.space.space()?;
    let mut rng = RngStream::new(args.seed);
    let mut book = Codebook::new(space);
    for i in 0..args.count {
        book.insert(format!("c{i}"), Hypervector::random(space, &mut rng))?;
    }
    save_codebook(&book, &args.out)?;
    output::kv("codebook", args.out.display());
    output::space_lines(space);
    output::kv("entries", book.len());
    Ok(())
}
