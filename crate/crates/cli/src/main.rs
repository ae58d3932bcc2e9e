//! `matgen`: decide, construct, count and certify generating sets of direct
//! sums of matrix rings.
//!
//! Exit codes: 0 affirmative or consistent, 1 negative or a disagreement
//! between methods, 2 usage or internal error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::{CountMode, Outcome, Recipe};
use config::{Output, RunConfig};

/// Version of the JSON records printed with `--json`.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "matgen",
    version,
    about = "Generating sets of direct sums of matrix rings"
)]
struct Cli {
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for censuses and integer certification.
    #[arg(long, global = true, env = "MATGEN_THREADS")]
    threads: Option<usize>,
    /// Primes at which integer families are also closed directly.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u64>,
    /// Largest number of tuples an exhaustive count may visit.
    #[arg(long, global = true, default_value_t = 1 << 26)]
    cap: u64,
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count generating m-tuples of M_n(F_q) and compare the counting methods.
    Count {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = CountMode::All)]
        mode: CountMode,
        /// Also estimate the generation probability from this many samples.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Orbits of generating tuples under simultaneous conjugation.
    Orbits {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Counts for M_1 = F_q under the unital, non-unital and projective conventions.
    N1,
    /// Decide whether a tuple file generates its direct sum.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Certify the two integer tuples generating M_2(Z)^16.
    Table16,
    /// Maximal subalgebras of M_2(F_q).
    Subalg {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        q: Vec<u64>,
    },
    /// Build a verified generator family; without a recipe, run all of them.
    Construct {
        /// Write the tuple file here instead of printing it.
        #[arg(long, global = true)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        recipe: Option<Recipe>,
    },
    /// Evaluate the presentation relations at the standard pair.
    Relations {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,Q")]
        coeff: Vec<String>,
        /// Also check the relations with y replaced by a x + y.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// Closed form against the upper bound, and the Euler product bracket.
    Bound {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Least number of generators of M_2(Z)^k.
    Minz {
        #[arg(long, value_delimiter = ',', default_value = "16,17")]
        k: Vec<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Count { .. } => "count",
            Command::Orbits { .. } => "orbits",
            Command::N1 => "n1",
            Command::Check { .. } => "check",
            Command::Table16 => "table16",
            Command::Subalg { .. } => "subalg",
            Command::Construct { .. } => "construct",
            Command::Relations { .. } => "relations",
            Command::Bound { .. } => "bound",
            Command::Minz { .. } => "minz",
        }
    }
}

fn run(cli: &Cli, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Count {
            q,
            n,
            m,
            mode,
            samples,
        } => commands::count(cfg, *q, *n, *m, *mode, *samples),
        Command::Orbits { q, n, m } => commands::orbits(cfg, *q, *n, *m),
        Command::N1 => commands::n1(cfg),
        Command::Check { input } => commands::check(cfg, input),
        Command::Table16 => commands::table16(cfg),
        Command::Subalg { q } => commands::subalg(q),
        Command::Construct { output, recipe } => {
            commands::construct(recipe.as_ref(), output.as_deref())
        }
        Command::Relations { n, coeff, shift } => commands::relations(n, coeff, *shift),
        Command::Bound { q, n, m } => commands::bound(*q, *n, *m),
        Command::Minz { k } => commands::minz(k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let result = RunConfig::new(cli.threads, cli.primes.clone(), cli.cap, cli.json, cli.seed)
        .and_then(|cfg| run(&cli, &cfg).map(|o| (cfg, o)));
    match result {
        Ok((cfg, outcome)) => {
            match cfg.output {
                Output::Json => {
                    let mut record = json!({ "schema_version": SCHEMA_VERSION, "command": command, "exit_code": outcome.code });
                    if let (Some(obj), serde_json::Value::Object(extra)) =
                        (record.as_object_mut(), outcome.json)
                    {
                        obj.extend(extra);
                    }
                    println!("{record}");
                }
                Output::Human => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "schema_version": SCHEMA_VERSION, "command": command, "exit_code": 2, "error": format!("{e:#}") })
                );
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
