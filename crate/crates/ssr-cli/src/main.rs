//! `ssr`: generate Hybrid instances, reduce them to superstring instances,
//! run the forward and backward maps, solve, and check every length bound.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ssr_core::gadgets::GadgetVariant;
use ssr_core::hybrid::MatchingStrategy;

#[derive(Parser, Debug)]
#[command(
    name = "ssr",
    version,
    about = "Hybrid equations to shortest superstring: reduction toolkit"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (used by `bench`).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    A6,
    B4,
}

impl From<VariantArg> for GadgetVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::A6 => GadgetVariant::A6,
            VariantArg::B4 => GadgetVariant::B4,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatchingArg {
    Adjacent,
    Shifted,
}

impl From<MatchingArg> for MatchingStrategy {
    fn from(m: MatchingArg) -> Self {
        match m {
            MatchingArg::Adjacent => MatchingStrategy::Adjacent,
            MatchingArg::Shifted => MatchingStrategy::Shifted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Greedy,
    Exact,
    Brute,
    None,
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    /// `e3lin v1` or `hybrid v1` file.
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "b4")]
    variant: VariantArg,
    /// Matching used when the instance is an E3-LIN system.
    #[arg(long, value_enum, default_value = "adjacent")]
    matching: MatchingArg,
    /// Accept E3-LIN variables occurring other than three times.
    #[arg(long)]
    any_occurrence: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an E3-LIN system with three occurrences per variable.
    Gen {
        /// Random system over this many variables instead of the `triple` template.
        #[arg(long)]
        vars: Option<usize>,
        /// Disjoint copies with renamed variables.
        #[arg(long, default_value_t = 1)]
        copies: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the Hybrid instance of an E3-LIN system.
    Hybrid {
        e3: PathBuf,
        #[arg(long, value_enum, default_value = "adjacent")]
        matching: MatchingArg,
        #[arg(long)]
        any_occurrence: bool,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the superstring instance and its gadget index.
    Reduce {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where to write the `gidx v1` sidecar.
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Build the superstring of an assignment.
    Forward {
        #[command(flatten)]
        inst: InstanceArgs,
        /// `zeros`, `random`, or an assignment file.
        #[arg(long, default_value = "random")]
        phi: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Solve an `sset v1` instance.
    Solve {
        sset: PathBuf,
        #[arg(long, value_enum, default_value = "greedy")]
        algo: Algo,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Normalize a superstring and read off its assignment.
    Extract {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Superstring in `sset v1` single-line form.
        superstring: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the whole pipeline and check every bound.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "random")]
        phi: String,
        #[arg(long, value_enum, default_value = "greedy")]
        algo: Algo,
        /// Extra superstring to push through the backward map.
        #[arg(long)]
        superstring: Option<PathBuf>,
        /// Include stage timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Gap ratios in exact rational arithmetic.
    Bounds {
        #[arg(long, default_value_t = 1000)]
        k: i64,
        /// Rational in (0, 1), e.g. `1/1000` or `0.001`.
        #[arg(long, default_value = "1/1000")]
        delta: String,
    },
    /// Time the pipeline on random instances.
    Bench {
        #[arg(long, default_value_t = 8)]
        instances: usize,
        #[arg(long, default_value_t = 9)]
        vars: usize,
        #[arg(long, value_enum, default_value = "b4")]
        variant: VariantArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
