use clap::{Parser, Subcommand};
use nichols_w3_cli::{main_with, Command, CommonArgs};

/// One-vertex Yetter–Drinfeld module tables.
#[derive(Parser)]
#[command(name = "ydmod", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions of the generated modules against the closed formula.
    Dims {
        #[command(flatten)]
        common: CommonArgs,
        /// Labels 1..=N in each slot.
        #[arg(long, default_value_t = 6)]
        range: i64,
    },
}

fn main() {
    let Cmd::Dims { common, range } = Cli::parse().cmd;
    let mut config = common.config(Command::YdmodDims);
    config.bounds.range = range;
    std::process::exit(main_with(config));
}
