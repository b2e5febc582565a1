//! `generate` and `ball`.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use cubetact::io::{complex_json, to_pretty, BallDoc, ComplexDoc};
use cubetact::median::random_median_complex;
use cubetact::ra::gamma::GAMMA_NAMES;
use cubetact::ra::{DefiningGraph, GroupKind};

use crate::input::{build_ball, builtin_complex, load_gamma};
use crate::{emit, parse_kind, Limits, Outcome};

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["builtin", "random", "ball"])))]
pub struct GenerateArgs {
    /// A builtin complex (EDGE, SQUARE, Q3, PATH3, TRIPOD, DOMINO) or defining graph (P4, C5, STAR_EQ5, ...).
    #[arg(long)]
    pub builtin: Option<String>,
    /// Random median complex: ambient dimension, number of seed vectors, RNG seed.
    #[arg(long, num_args = 3, value_names = ["DIM", "SEEDS", "SEED"])]
    pub random: Option<Vec<u64>>,
    /// Ball in a right-angled group: defining graph (file or builtin), artin|coxeter, radius.
    #[arg(long, num_args = 3, value_names = ["GRAPH", "KIND", "RADIUS"])]
    pub ball: Option<Vec<String>>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BallArgs {
    /// Defining graph: a JSON file or a builtin name.
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_parser = parse_kind, default_value = "coxeter")]
    pub kind: GroupKind,
    #[arg(long)]
    pub radius: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &GenerateArgs, limits: &Limits) -> Result<Outcome> {
    let text = if let Some(name) = &args.builtin {
        if GAMMA_NAMES.contains(&name.as_str()) {
            to_pretty(&DefiningGraph::builtin(name)?.to_json())
        } else {
            complex_json(&builtin_complex(name)?)
        }
    } else if let Some(r) = &args.random {
        let (dim, seeds, seed) = (r[0] as usize, r[1] as usize, r[2]);
        let cx = random_median_complex(dim, seeds, seed, limits.cap_vertices).context("cannot generate random complex")?;
        complex_json(&cx)
    } else if let Some(b) = &args.ball {
        let kind = parse_kind(&b[1]).map_err(anyhow::Error::msg)?;
        let radius: usize = b[2].parse().with_context(|| format!("radius {:?} is not a number", b[2]))?;
        ball_text(&b[0], kind, radius, limits)?
    } else {
        unreachable!("clap requires one source")
    };
    emit(args.out.as_ref(), &text)?;
    Ok(Outcome::Done)
}

pub fn run_ball(args: &BallArgs, limits: &Limits) -> Result<Outcome> {
    emit(args.out.as_ref(), &ball_text(&args.graph, args.kind, args.radius, limits)?)?;
    Ok(Outcome::Done)
}

/// Ball JSON, re-read as a plain complex before it is returned.
fn ball_text(graph: &str, kind: GroupKind, radius: usize, limits: &Limits) -> Result<String> {
    let (_, gamma) = load_gamma(graph)?;
    let ball = build_ball(gamma, kind, radius, limits)?;
    let text = to_pretty(&BallDoc::of(&ball));
    let doc: ComplexDoc = serde_json::from_str(&text)?;
    let back = doc.build().context("written ball does not validate")?;
    if back.order() != ball.order() {
        bail!("written ball has {} vertices, expected {}", back.order(), ball.order());
    }
    Ok(text)
}
