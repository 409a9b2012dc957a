//! Command-line front end for the choosability toolkit.
//!
//! Every subcommand is scriptable: exit 0 for a positive answer, 1 for a
//! negative answer (with any certificate written to disk), 2 for usage or
//! parse errors, 3 for an exhausted resource budget. Randomized commands
//! take an explicit `--seed` (default 1729, never the clock), and identical
//! invocations produce identical bytes.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 1729;

pub const EXIT_POSITIVE: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "choosability",
    about = "Exact lambda-choosability toolkit: partition order, list-colouring certificates, and the large-girth separation pipeline",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-oriented text.
    Text,
    /// Stable `key=value` records.
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the partition order lambda <= lambda', printing a witness.
    Order {
        /// The smaller partition, e.g. `2,2`.
        lambda: String,
        /// The candidate larger partition, e.g. `1,1,1,3`.
        lambda_p: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check one list assignment: validate it and decide L-colourability.
    Check {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        assignment: String,
        /// Write the colouring found (if any) to this file.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide lambda-choosability of a graph, with certificates.
    Choosable {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        lambda: String,
        /// Cap on enumerated assignments (budget exit 3 when exceeded).
        #[arg(long)]
        budget_assignments: Option<u64>,
        /// Cap on solver nodes per assignment.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Shard the enumeration across this many threads.
        #[arg(long, default_value = "1")]
        shards: usize,
        /// Write the failing assignment here when not choosable.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build or verify gadget graphs.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Run the separation pipeline and write a bundle directory.
    Construct(ConstructArgs),
    /// Monte Carlo diagnostics for the probabilistic estimates.
    Mc {
        #[command(subcommand)]
        kind: McKind,
    },
    /// Re-verify a bundle directory on disk.
    Verify {
        #[arg(long)]
        bundle: String,
        /// Decide L-colourability exactly when the graph has at most this
        /// many vertices.
        #[arg(long)]
        decide_cap: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GadgetAction {
    /// Construct the built-in gadget for a part size.
    Make {
        /// Part size k_i (built-ins exist for 1, 2, 3).
        #[arg(long)]
        part: u32,
        /// Girth target g.
        #[arg(long)]
        girth: usize,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify a gadget file against a part size and girth target.
    Verify {
        file: String,
        #[arg(long)]
        part: u32,
        #[arg(long)]
        girth: usize,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    lambda: String,
    /// Target partition; repeat for several targets.
    #[arg(long = "target", required = true)]
    targets: Vec<String>,
    #[arg(long)]
    g: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: String,
    /// Supply a gadget file for a part size, as `<k_i>=<file>`; repeatable.
    #[arg(long = "gadget")]
    gadgets: Vec<String>,
    /// Decide L-colourability exactly for graphs up to this many vertices.
    #[arg(long)]
    decide_cap: Option<usize>,
}

#[derive(Subcommand)]
enum McKind {
    /// Exact short-cycle counts over sampled pre-repair graphs.
    Cycles {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Edge counts between random part-subsets versus the expectation.
    Expansion {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
        /// Sampled (A, B) pairs per trial graph.
        #[arg(long)]
        pairs: u64,
        #[arg(long, default_value = "1")]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Bad-pair probing of a sampled split labelling.
    Badpairs {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        probes: u64,
        /// Enumerate all (A, B, selector) triples instead of probing.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Order {
            lambda,
            lambda_p,
            format,
        } => commands::order(&lambda, &lambda_p, format),
        Command::Check {
            graph,
            assignment,
            certificate,
            format,
        } => commands::check(&graph, &assignment, certificate.as_deref(), format),
        Command::Choosable {
            graph,
            lambda,
            budget_assignments,
            budget_nodes,
            shards,
            certificate,
            format,
        } => commands::choosable(
            &graph,
            &lambda,
            budget_assignments,
            budget_nodes,
            shards,
            certificate.as_deref(),
            format,
        ),
        Command::Gadget { action } => match action {
            GadgetAction::Make { part, girth, out } => {
                commands::gadget_make(part, girth, out.as_deref())
            }
            GadgetAction::Verify { file, part, girth } => {
                commands::gadget_verify(&file, part, girth)
            }
        },
        Command::Construct(args) => commands::construct(&args),
        Command::Mc { kind } => commands::mc(kind),
        Command::Verify { bundle, decide_cap } => commands::verify_bundle(&bundle, decide_cap),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
