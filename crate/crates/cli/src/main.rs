//! `cubetact`: generate instances, compute hyperplanes and contact graphs,
//! rebuild complexes from contact graphs and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a violation,
//! 2 on invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cubetact::ra::GroupKind;
use cubetact::{ReducedMode, DEFAULT_CLIQUE_CAP, DEFAULT_VERTEX_CAP};

mod analyze;
mod generate;
mod input;
mod verify;

#[derive(Parser, Debug)]
#[command(name = "cubetact", version, about = "Hyperplanes and contact graphs of CAT(0) cube complexes")]
struct Cli {
    #[command(flatten)]
    limits: Limits,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Limits {
    /// Largest complex or ball, in vertices.
    #[arg(long, global = true, env = "CUBETACT_CAP_VERTICES", default_value_t = DEFAULT_VERTEX_CAP)]
    pub cap_vertices: usize,
    /// Largest number of maximal cliques enumerated in one contact graph.
    #[arg(long, global = true, default_value_t = DEFAULT_CLIQUE_CAP)]
    pub cap_cliques: usize,
    /// Twin relation used for the reduced crossing graph: self-exclusive or strict.
    #[arg(long, global = true, default_value = "self-exclusive")]
    pub reduced_mode: ReducedMode,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a builtin, random or ball instance as JSON.
    Generate(generate::GenerateArgs),
    /// Write a ball of a right-angled group as JSON.
    Ball(generate::BallArgs),
    /// Report hyperplanes, contact graphs, cliques, I/I⁰ sets and the reconstruction.
    Analyze(analyze::AnalyzeArgs),
    /// Rebuild a complex from a contact graph.
    Reconstruct(analyze::ReconstructArgs),
    /// Run verification suites over a set of instances.
    Verify(verify::VerifyArgs),
}

/// How a command ended, when it did not fail outright.
pub enum Outcome {
    Done,
    Violation,
}

/// Either stdout or a file.
pub fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn parse_kind(s: &str) -> Result<GroupKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate::run(&a, &cli.limits),
        Command::Ball(a) => generate::run_ball(&a, &cli.limits),
        Command::Analyze(a) => analyze::run(&a, &cli.limits),
        Command::Reconstruct(a) => analyze::run_reconstruct(&a, &cli.limits),
        Command::Verify(a) => verify::run(&a, &cli.limits),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
