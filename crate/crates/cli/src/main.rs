mod commands;
mod input;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "conjlab", version, about = "Conjugacy relations on finite semigroups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Tsv)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<String>,
    /// Allow inputs above the 5000-element guard.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Tsv,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Class partition of a relation.
    Classes {
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "n")]
        relation: String,
    },
    /// Decide a single pair, printing a verified witness.
    Decide {
        /// Cayley table, transformation list or diagram list.
        #[arg(long, required_unless_present = "poly")]
        input: Option<String>,
        #[arg(long, default_value = "n")]
        relation: String,
        /// Decide in the polycyclic monoid P_n instead; a and b are element literals.
        #[arg(long)]
        poly: Option<usize>,
        a: String,
        b: String,
    },
    /// Pairwise inclusions between relations.
    Compare {
        #[arg(long)]
        input: String,
        /// Comma-separated tags; defaults to every relation defined on the input.
        #[arg(long)]
        relations: Option<String>,
    },
    /// The inverse monoid of partial inner automorphisms.
    Inn {
        #[arg(long)]
        input: String,
        /// Also list every element with its domain and image sizes.
        #[arg(long)]
        elements: bool,
    },
    /// Emit the Cayley table of a named monoid.
    Build(commands::BuildArgs),
    /// Diagram deciders and normal forms.
    Diagram {
        /// partition, partial-brauer or brauer (also P, PB, B).
        #[arg(long, default_value = "partition")]
        kind: String,
        /// Classify the whole monoid of this degree.
        #[arg(long, conflicts_with = "a")]
        n: Option<usize>,
        /// n or tr when classifying.
        #[arg(long, default_value = "n")]
        relation: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
    },
    /// Endomorphisms of a G-set.
    Gset {
        #[arg(long)]
        input: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
    },
    /// Conjugacy growth of the polycyclic monoid P_n.
    Polygrowth {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
        /// sigma, n, c or pstar.
        #[arg(long, default_value = "n")]
        relation: String,
        /// Add the ball-oracle column and check it.
        #[arg(long)]
        verify: bool,
    },
    /// Run an oracle-equivalence suite.
    Verify {
        /// inclusions, idempotents, transformations, diagrams, gsets, inn or polycyclic.
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
    },
}

fn main() -> ExitCode {
    conjlab::init_threads();
    let cli = Cli::parse();
    match commands::run(&cli.common, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
