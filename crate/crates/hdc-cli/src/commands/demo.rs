//! Role-filler analogy demonstration.
//!
//! Two tabular records share three roles (country code, capital, currency):
//! one for Mexico (mex / mexico_city / peso), one for the United States
//! (usa / dc / dollar). Each record is the bundle of its role⊗filler
//! bindings. Releasing a role from a record recovers its filler, releasing
//! a filler recovers its role, and the composite probe
//! `filler ⊗ record_a ⊘ record_b` answers analogies like "what plays the
//! dollar's part in the Mexico record"; the cleanup memory turns each
//! noisy probe back into a stored symbol. A transferred record built purely
//! from filler correspondences answers role probes like the original.

use clap::Args;
use hdc::{bind, bundle_uniform, release, Codebook, Hypervector, RngStream};

use super::{CliError, CliResult, SpaceOpts};
use crate::output;

#[derive(Args)]
pub struct DemoArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub space: SpaceOpts,
    /// How many matches to print per probe
    #[arg(long, default_value_t = 3)]
    pub topk: usize,
}

const SYMBOLS: [&str; 9] = [
    "code",
    "capital",
    "currency",
    "mex",
    "mexico_city",
    "peso",
    "usa",
    "dc",
    "dollar",
];

pub struct DemoOutcome {
    pub probes: Vec<(String, String, Vec<hdc::Match>)>,
    pub failures: Vec<String>,
}

/// Runs the whole construction and all ten probes at the given seed.
pub fn run_demo(space: hdc::SpaceConfig, seed: u64, topk: usize) -> hdc::Result<DemoOutcome> {
    let mut rng = RngStream::new(seed);
    let mut book = Codebook::new(space);
    for name in SYMBOLS {
        book.insert(name, Hypervector::random(space, &mut rng))?;
    }
    let code = |name: &str| book.get(name).unwrap().clone();
    let (p_code, p_capital, p_currency) = (code("code"), code("capital"), code("currency"));
    let (mex, mexico_city, peso) = (code("mex"), code("mexico_city"), code("peso"));
    let (usa, dc, dollar) = (code("usa"), code("dc"), code("dollar"));

    let record = |fillers: [&Hypervector; 3], rng: &mut RngStream| -> hdc::Result<Hypervector> {
        bundle_uniform(
            [
                &bind([&p_code, fillers[0]])?,
                &bind([&p_capital, fillers[1]])?,
                &bind([&p_currency, fillers[2]])?,
            ],
            rng,
        )
    };
    let c_mexico = record([&mex, &mexico_city, &peso], &mut rng)?;
    let c_us = record([&usa, &dc, &dollar], &mut rng)?;

    // Knowledge transfer: rebuild the US record from filler correspondences
    // alone, without decoding the Mexico record first.
    let correspondences = bundle_uniform(
        [
            &release(&usa, &mex)?,
            &release(&dc, &mexico_city)?,
            &release(&dollar, &peso)?,
        ],
        &mut rng,
    )?;
    let c_us_transferred = bind([&c_mexico, &correspondences])?;

    let probes: Vec<(&str, Hypervector, &str)> = vec![
        ("capital_of_mexico", release(&c_mexico, &p_capital)?, "mexico_city"),
        ("currency_of_us", release(&c_us, &p_currency)?, "dollar"),
        ("role_of_peso", release(&c_mexico, &peso)?, "currency"),
        ("role_of_usa_label", release(&c_us, &usa)?, "code"),
        ("dollar_of_mexico", release(&bind([&dollar, &c_mexico])?, &c_us)?, "peso"),
        ("dc_of_mexico", release(&bind([&dc, &c_mexico])?, &c_us)?, "mexico_city"),
        ("usa_label_of_mexico", release(&bind([&usa, &c_mexico])?, &c_us)?, "mex"),
        ("transferred_code", release(&c_us_transferred, &p_code)?, "usa"),
        ("transferred_capital", release(&c_us_transferred, &p_capital)?, "dc"),
        ("transferred_currency", release(&c_us_transferred, &p_currency)?, "dollar"),
    ];

    let mut outcome = DemoOutcome { probes: Vec::new(), failures: Vec::new() };
    for (name, probe, expected) in probes {
        let matches = book.nearest(&probe, topk)?;
        if matches[0].label != expected {
            outcome.failures.push(name.to_string());
        }
        outcome.probes.push((name.to_string(), expected.to_string(), matches));
    }
    Ok(outcome)
}

pub fn run(args: DemoArgs) -> CliResult<()> {
    let space = args.space.space()?;
    let outcome = run_demo(space, args.seed, args.topk.max(1))?;
    output::kv("seed", args.seed);
    output::space_lines(space);
    for (name, expected, matches) in &outcome.probes {
        println!("probe\t{name}\texpect\t{expected}");
        output::match_lines(name, matches);
        let verdict = if matches[0].label == *expected { "pass" } else { "fail" };
        println!("result\t{name}\t{verdict}");
    }
    if outcome.failures.is_empty() {
        output::kv("demo", "pass");
        Ok(())
    } else {
        output::kv("demo", "fail");
        Err(CliError::DemoFailure(format!(
            "unexpected top-1 for: {}",
            outcome.failures.join(", ")
        )))
    }
}
