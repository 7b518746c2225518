use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reputation_axioms::preorder::DEFAULT_CAP;
use reputation_axioms_cli::{cmd_certify, cmd_check, cmd_complement, cmd_rank, Format, Source};

#[derive(Parser)]
#[command(name = "repax", version, about = "Axiomatic rankings over reputation graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank a graph by iterative refinement
    Rank {
        /// Edge-list file, or `-` for stdin
        graph: String,
        /// Include the refinement steps
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a ranking against axioms
    Check {
        graph: String,
        /// Ranking file, or `-` for stdin
        ranking: String,
        /// Comma-separated axiom names; defaults to every axiom of the graph's mode
        #[arg(long)]
        axioms: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search all rankings for one satisfying the axioms
    Certify {
        graph: String,
        #[arg(long)]
        axioms: Option<String>,
        /// Largest node count to enumerate
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Turn a positive graph into its negative complement
    Complement { graph: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Rank { graph, trace, format } => cmd_rank(&Source::from(graph.as_str()), *trace, *format),
        Command::Check {
            graph,
            ranking,
            axioms,
            format,
        } => cmd_check(
            &Source::from(graph.as_str()),
            &Source::from(ranking.as_str()),
            axioms.as_deref(),
            *format,
        ),
        Command::Certify {
            graph,
            axioms,
            cap,
            format,
        } => cmd_certify(&Source::from(graph.as_str()), axioms.as_deref(), *cap, *format),
        Command::Complement { graph } => cmd_complement(&Source::from(graph.as_str())),
    };
    if outcome.exit_code == reputation_axioms_cli::EXIT_ERROR {
        eprint!("{}", outcome.rendered);
    } else {
        print!("{}", outcome.rendered);
    }
    ExitCode::from(outcome.exit_code as u8)
}
