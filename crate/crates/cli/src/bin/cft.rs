use clap::{Parser, Subcommand};
use nichols_w3::rational::Rational;
use nichols_w3_cli::{main_with, parse_rational, Command, CommonArgs};

/// Free-field W3 checks, octuplet fields and singular-vector levels.
#[derive(Parser)]
#[command(name = "cft", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Virasoro and W3 OPEs, screening kernels, vertex dimensions.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build and check the eight long-screening descendants of e^(pφ1+pφ2).
    Octuplet {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Singular-vector levels for (x, y) = (m, n)/√p.
    Singvec {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        m: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        n: Rational,
        /// Largest level reported.
        #[arg(long = "max", default_value_t = 12)]
        max_level: i64,
    },
}

fn main() {
    let config = match Cli::parse().cmd {
        Cmd::Verify { common } => common.config(Command::CftVerify),
        Cmd::Octuplet { common } => common.config(Command::CftOctuplet),
        Cmd::Singvec { common, m, n, max_level } => {
            let mut c = common.config(Command::CftSingvec { m, n });
            c.bounds.max_level = max_level;
            c
        }
    };
    std::process::exit(main_with(config));
}
