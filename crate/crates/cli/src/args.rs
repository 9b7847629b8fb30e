use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ccp", version, about = "Coherent conditional probability and default reasoning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Upper bound on declared propositions (worlds are enumerated).
    #[arg(long, global = true, default_value_t = ccp_core::logic::DEFAULT_MAX_PROPS)]
    pub max_props: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Value bound to `alpha` in assessment lines, e.g. `1/3`.
    #[arg(long, global = true)]
    pub alpha: Option<String>,

    /// Seed for `rules --random`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherence verdict, agreeing class and zero-layers.
    Check { kb: PathBuf },
    /// Coherent interval of a conditional event `E | H` (default: the
    /// file's queries).
    Extend { kb: PathBuf, event: Option<String> },
    /// Whether the defaults entail a rule `H => E` (default: the file's
    /// queries).
    Entails { kb: PathBuf, rule: Option<String> },
    /// Consistency of the default rules.
    Defaults { kb: PathBuf },
    /// Evaluates a rule schema against the file's defaults.
    Rules(RulesArgs),
    /// The atoms generated by the assessed events.
    Atoms { kb: PathBuf },
}

#[derive(Debug, Args)]
pub struct RulesArgs {
    pub kb: PathBuf,

    /// Schema name, e.g. `cut` or `rational-monotonicity`.
    #[arg(long)]
    pub schema: String,

    #[arg(long)]
    pub a: Option<String>,

    #[arg(long)]
    pub b: Option<String>,

    #[arg(long)]
    pub c: Option<String>,

    /// Number of random instances over the file's propositions, instead
    /// of the `--a/--b/--c` formulas.
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    pub random: Option<usize>,
}
