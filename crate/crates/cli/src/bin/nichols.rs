use clap::{Parser, Subcommand};
use nichols_w3_cli::{main_with, Command, CommonArgs, Op};

/// PBW product tables and Hopf-structure verification.
#[derive(Parser)]
#[command(name = "nichols", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the full product table on the PBW basis.
    Table {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        op: Op,
    },
    /// Run the oracle, Hopf-axiom and Serre sweeps.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest word length for the tensor oracle.
        #[arg(long, default_value_t = 8)]
        grade: usize,
        /// Random triples for associativity.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn main() {
    let config = match Cli::parse().cmd {
        Cmd::Table { common, op } => common.config(Command::NicholsTable { op }),
        Cmd::Verify { common, grade, samples, seed } => {
            let mut c = common.config(Command::NicholsVerify);
            c.bounds.grade = grade;
            c.bounds.samples = samples;
            c.bounds.seed = seed;
            c
        }
    };
    std::process::exit(main_with(config));
}
