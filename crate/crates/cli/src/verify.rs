//! `verify`: collect instances, run the selected suites, print the report.

use std::collections::BTreeSet;
use std::path::PathBuf;

use anyhow::{Context as _, Result};
use clap::Args;
use cubetact::builtins;
use cubetact::io::to_pretty;
use cubetact::median::random_median_complex;
use cubetact::ra::gamma::GAMMA_NAMES;
use cubetact::ra::GroupKind;
use cubetact::verify::{Context, Instance, SuiteRegistry};

use crate::input::{build_ball, builtin_complex, load_complex, load_gamma};
use crate::{emit, parse_kind, Limits, Outcome};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite to run; repeat for several. All suites run when absent.
    #[arg(long = "suite")]
    pub suites: Vec<String>,
    /// List the registered suites and exit.
    #[arg(long)]
    pub list: bool,
    /// Builtin complex or defining graph; repeat for several.
    #[arg(long)]
    pub builtin: Vec<String>,
    /// Complex JSON file; repeat for several.
    #[arg(long)]
    pub input: Vec<PathBuf>,
    /// Random median complexes with RNG seeds 1..=N.
    #[arg(long)]
    pub random_count: Option<u64>,
    #[arg(long, default_value_t = 6)]
    pub random_dim: usize,
    #[arg(long, default_value_t = 5)]
    pub random_seeds: usize,
    /// Defining graph (file or builtin) whose balls are checked.
    #[arg(long)]
    pub graph: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Ball kind; by default every kind the selected suites use.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<GroupKind>,
    /// Interior margin for balls.
    #[arg(long, default_value_t = 2)]
    pub margin: usize,
    /// Record the running time of each suite in the report.
    #[arg(long)]
    pub timing: bool,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &VerifyArgs, limits: &Limits) -> Result<Outcome> {
    let registry = SuiteRegistry::default();
    if args.list {
        for name in registry.names() {
            println!("{name}");
        }
        return Ok(Outcome::Done);
    }
    for name in &args.suites {
        registry.get(name)?;
    }
    let mut ctx = Context::new(instances(args, &registry, limits)?);
    ctx.mode = limits.reduced_mode;
    ctx.clique_cap = limits.cap_cliques;
    ctx.margin = args.margin;
    let report = registry.run(&args.suites, &ctx, args.timing)?;
    emit(args.out.as_ref(), &to_pretty(&report))?;
    match report.first_violation() {
        None => Ok(Outcome::Done),
        Some(w) => {
            eprintln!("violation: {w}");
            Ok(Outcome::Violation)
        }
    }
}

fn instances(args: &VerifyArgs, registry: &SuiteRegistry, limits: &Limits) -> Result<Vec<Instance>> {
    let kinds: BTreeSet<GroupKind> = match args.kind {
        Some(k) => [k].into(),
        None => {
            let names: Vec<&str> = if args.suites.is_empty() { registry.names() } else { args.suites.iter().map(String::as_str).collect() };
            names.iter().flat_map(|n| registry.get(n).expect("checked").kinds().iter().copied()).collect()
        }
    };
    let mut graphs = args.graph.clone();
    let mut out = Vec::new();
    for name in &args.builtin {
        if GAMMA_NAMES.contains(&name.as_str()) {
            graphs.push(name.clone());
        } else {
            out.push(Instance::complex(name.clone(), builtin_complex(name)?));
        }
    }
    for path in &args.input {
        out.push(Instance::complex(path.display().to_string(), load_complex(path, limits)?));
    }
    if let Some(n) = args.random_count {
        for seed in 1..=n {
            let cx = random_median_complex(args.random_dim, args.random_seeds, seed, limits.cap_vertices)
                .with_context(|| format!("random complex with seed {seed}"))?;
            out.push(Instance::complex(format!("random/{}/{}/{seed}", args.random_dim, args.random_seeds), cx));
        }
    }
    for g in &graphs {
        let (stem, gamma) = load_gamma(g)?;
        for &kind in &kinds {
            let ball = build_ball(gamma.clone(), kind, args.radius, limits)?;
            out.push(Instance::ball(format!("{stem}/{kind}/R{}", args.radius), ball));
        }
    }
    if out.is_empty() {
        for name in builtins::COMPLEX_NAMES {
            out.push(Instance::complex(*name, builtin_complex(name)?));
        }
    }
    Ok(out)
}
