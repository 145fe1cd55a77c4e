use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Decide whether every diagram of a finite shape can be amalgamated"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Write the resulting document here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Upper bound on generated sizes.
    #[arg(long, global = true, default_value_t = NonZeroUsize::new(12).unwrap())]
    pub max_size: NonZeroUsize,
    /// Re-check evidence with the independent cocone oracle (default).
    #[arg(long, global = true, overrides_with = "no_verify")]
    pub verify: bool,
    /// Skip the re-check.
    #[arg(long, global = true, overrides_with = "verify")]
    pub no_verify: bool,
    /// Output style on stdout.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide a category or poset file. Exit 0 amalgamable, 1 not, 2 input error.
    Check { path: PathBuf },
    /// Emit a verified diagram with no cocone. Exit 1 if the shape has none.
    Witness {
        path: PathBuf,
        /// Drop elements not needed for the collision.
        #[arg(long)]
        shrink: bool,
    },
    /// Build a cocone for a diagram over a forest-like poset shape.
    Cocone { shape: PathBuf, diagram: PathBuf },
    /// Decide whether a diagram has a cocone. Exit 0 yes, 1 no.
    Oracle { diagram: PathBuf },
    /// Generate a random instance.
    Gen {
        kind: GenKind,
        /// Element count for posets, largest carrier for diagrams.
        size: Option<usize>,
        /// Shape file for `diagram`.
        #[arg(long)]
        shape: Option<PathBuf>,
    },
    /// Step-by-step derivation of a verdict.
    Explain { path: PathBuf },
    /// Parse and validate documents of any kind.
    Validate {
        paths: Vec<PathBuf>,
        /// Diagram against which cocone documents are checked.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Poset,
    Forest,
    Nonforest,
    Diagram,
}

/// Everything a single invocation needs, resolved from the command line.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub max_size: usize,
    pub verify: bool,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Self {
        let structured_by_default = matches!(
            cli.command,
            Command::Witness { .. } | Command::Cocone { .. } | Command::Gen { .. }
        );
        let default_format = if structured_by_default {
            Format::Structured
        } else {
            Format::Text
        };
        RunConfig {
            command: cli.command,
            out: cli.common.out,
            seed: cli.common.seed,
            max_size: cli.common.max_size.get(),
            verify: !cli.common.no_verify,
            format: cli.common.format.unwrap_or(default_format),
        }
    }
}
