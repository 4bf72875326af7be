use std::path::PathBuf;

use clap::{Args, ValueEnum};
use hdc::{Codebook, Hypervector, RngStream};

use super::{load_codebook, save_codebook, CliError, CliResult};
use crate::output;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgebraOp {
    Bundle,
    Bind,
    Release,
    Inverse,
    Power,
}

#[derive(Args)]
pub struct AlgebraArgs {
    /// Operation to apply
    #[arg(value_enum)]
    pub op: AlgebraOp,
    /// Labels of the operand codes, in order
    #[arg(required = true)]
    pub inputs: Vec<String>,
    /// Codebook file the labels come from
    #[arg(long)]
    pub book: PathBuf,
    /// Output file for the result (a one-entry codebook labeled "result")
    #[arg(long)]
    pub out: PathBuf,
    /// Seed for the bundle's segment draws
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exponent for `power`
    #[arg(long, allow_hyphen_values = true)]
    pub exponent: Option<i64>,
}

fn arity(op: AlgebraOp, found: usize) -> CliResult<()> {
    let ok = match op {
        AlgebraOp::Bundle | AlgebraOp::Bind => found >= 1,
        AlgebraOp::Release => found == 2,
        AlgebraOp::Inverse | AlgebraOp::Power => found == 1,
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{op:?} does not take {found} operand(s)"
        )))
    }
}

pub fn run(args: AlgebraArgs) -> CliResult<()> {
    let book = load_codebook(&args.book)?;
    arity(args.op, args.inputs.len())?;
    let codes: Vec<&Hypervector> = args
        .inputs
        .iter()
        .map(|label| {
            book.get(label)
                .ok_or_else(|| CliError::Validation(format!("unknown label {label:?}")))
        })
        .collect::<CliResult<_>>()?;

    let result = match args.op {
        AlgebraOp::Bundle => {
            let mut rng = RngStream::new(args.seed);
            hdc::bundle_uniform(codes.iter().copied(), &mut rng)?
        }
        AlgebraOp::Bind => hdc::bind(codes.iter().copied())?,
        AlgebraOp::Release => hdc::release(codes[0], codes[1])?,
        AlgebraOp::Inverse => hdc::inverse(codes[0]),
        AlgebraOp::Power => {
            let exponent = args.exponent.ok_or_else(|| {
                CliError::Validation("power requires --exponent".to_string())
            })?;
            hdc::power(codes[0], exponent)
        }
    };

    let mut out_book = Codebook::new(book.space());
    out_book.insert("result", result.clone())?;
    save_codebook(&out_book, &args.out)?;

    output::kv("op", format!("{:?}", args.op).to_lowercase());
    output::kv("out", args.out.display());
    output::kv("unit", result.is_unit());
    // For small books report against every entry (so a released code shows
    // its full-overlap original even when that was not an operand);
    // otherwise stick to the operands.
    if book.len() <= 32 {
        for (label, code) in book.entries() {
            println!("overlap\tresult\t{label}\t{}", result.overlap(code)?);
        }
    } else {
        for (label, code) in args.inputs.iter().zip(&codes) {
            println!("overlap\tresult\t{label}\t{}", result.overlap(code)?);
        }
    }
    Ok(())
}
