use std::path::PathBuf;
use std::process::ExitCode;

use baire_cli::commands::{self, Outcome};
use baire_core::engine::PsiFunction;
use baire_core::Symbol;
use clap::{Parser, Subcommand, ValueEnum};

/// Category constructions on closed sets of infinite words.
#[derive(Parser)]
#[command(name = "baire", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Psi {
    Identity,
    Double,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an automaton's set is nowhere dense
    Nwd { automaton: PathBuf },
    /// Build a challenge no member of a meager union hits infinitely often
    Defeat {
        presentation: PathBuf,
        #[arg(long, default_value_t = 16)]
        horizon: usize,
    },
    /// Build a member of a constraint set that answers a challenge
    Witness {
        schedule: PathBuf,
        constraint: PathBuf,
        #[arg(long, default_value_t = 0)]
        pad: Symbol,
    },
    /// Check a word against a defeating challenge
    Verify {
        presentation: PathBuf,
        schedule: PathBuf,
        word: PathBuf,
        #[arg(long, default_value_t = 16)]
        horizon: usize,
    },
    /// Tail sums of a binary word and their visits to an open set
    Tailsum {
        word: PathBuf,
        open_set: PathBuf,
        #[arg(long, default_value_t = 16)]
        horizon: usize,
    },
    /// Zero-one sequence whose tail sums enter an open set infinitely often
    Corollary {
        open_set: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(long)]
        period: usize,
        #[arg(long, default_value_t = 32)]
        depth: usize,
        #[arg(long, default_value_t = 32)]
        horizon: usize,
    },
    /// Answer a finite challenge over the naturals with padded repetitions
    Remark2 {
        schedule: PathBuf,
        #[arg(long, value_enum, default_value_t = Psi::Identity)]
        psi: Psi,
    },
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Nwd { automaton } => commands::nwd(&automaton),
        Command::Defeat {
            presentation,
            horizon,
        } => commands::defeat(&presentation, horizon),
        Command::Witness {
            schedule,
            constraint,
            pad,
        } => commands::witness(&schedule, &constraint, pad),
        Command::Verify {
            presentation,
            schedule,
            word,
            horizon,
        } => commands::verify(&presentation, &schedule, &word, horizon),
        Command::Tailsum {
            word,
            open_set,
            horizon,
        } => commands::tailsum(&word, &open_set, horizon),
        Command::Corollary {
            open_set,
            start,
            period,
            depth,
            horizon,
        } => commands::corollary(&open_set, start, period, depth, horizon),
        Command::Remark2 { schedule, psi } => {
            let psi = match psi {
                Psi::Identity => PsiFunction::Identity,
                Psi::Double => PsiFunction::Double,
            };
            commands::remark2(&schedule, &psi)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.json);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
