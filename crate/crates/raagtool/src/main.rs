use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use raagtool::{parse_graph, render_text, run, Command, Options, EXIT_PARSE};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Properties (B1), (B2), (B), (NL), witnesses and the (T) decision.
    Analyze,
    /// The product decomposition of a graph with property (B).
    Decompose,
    /// The surjection onto Z with its relation certificate.
    Surjection,
    /// Property (T) for the image in GL(n, Z).
    DecideT,
    /// The crossed lantern, τ and transvection commutator identities.
    VerifyIdentities,
    /// The random graph experiment; takes no file.
    RandomNl,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Analyze => Command::Analyze,
            Cmd::Decompose => Command::Decompose,
            Cmd::Surjection => Command::Surjection,
            Cmd::DecideT => Command::DecideT,
            Cmd::VerifyIdentities => Command::VerifyIdentities,
            Cmd::RandomNl => Command::RandomNl,
        }
    }
}

/// Analyses of right-angled Artin groups given by their defining graphs.
#[derive(Debug, Parser)]
#[command(name = "raagtool", version)]
struct Cli {
    command: Cmd,
    /// Graph file, in the line format or JSON.
    file: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = raag::random::DEFAULT_SEED)]
    seed: u64,
    /// Largest vertex count for exhaustive relation enumeration; larger
    /// graphs are checked on sampled relations.
    #[arg(long, default_value_t = raag::relations::DEFAULT_RELATION_BOUND)]
    max_enum: usize,
    /// Largest exponent used when checking identities.
    #[arg(long, default_value_t = 3)]
    max_power: u32,
    /// Vertex count for random-nl.
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Edge density constant for random-nl.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c: f64,
    /// Sample count for random-nl.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = Command::from(cli.command);
    let graph = match (&cli.file, command.needs_graph()) {
        (Some(path), true) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            };
            match parse_graph(&text) {
                Ok(g) => Some(g),
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            }
        }
        _ => None,
    };
    let opts = Options {
        seed: cli.seed,
        max_enum: cli.max_enum,
        max_power: cli.max_power,
        n: cli.n,
        c: cli.c,
        samples: cli.samples,
    };
    let (report, status) = run(command, graph.as_ref(), &opts);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", render_text(&report));
    }
    ExitCode::from(status as u8)
}
