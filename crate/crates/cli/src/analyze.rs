//! `analyze` and `reconstruct`.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use cubetact::contact::all_interaction_sets;
use cubetact::graph::isomorphism;
use cubetact::io::{
    complex_dot, family_dot, hyperplane_docs, parse_contact_graph, reconstruction_doc, to_pretty, AtlasDoc, ComplexDoc, FamilyDoc,
};
use cubetact::reconstruction::{reconstruct, CliqueAtlas, Reconstruction};
use cubetact::{ContactFamily, CubeComplex};
use serde_json::{json, Value};

use crate::input::{builtin_complex, load_complex, read};
use crate::{emit, Limits, Outcome};

const ISOMORPHISM_BUDGET: usize = 1_000_000;

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "builtin"])))]
pub struct AnalyzeArgs {
    /// Complex JSON file.
    pub input: Option<PathBuf>,
    /// Analyze a builtin complex instead of a file.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Directory for one file per report; a single JSON document goes to stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write complex.dot and family.dot.
    #[arg(long, requires = "out")]
    pub dot: bool,
}

#[derive(Args, Debug)]
pub struct ReconstructArgs {
    /// Contact graph JSON, either a bare graph or the family document written by `analyze`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print clique counts and whether the result is a median graph to stderr.
    #[arg(long)]
    pub diagnostics: bool,
}

pub fn run(args: &AnalyzeArgs, limits: &Limits) -> Result<Outcome> {
    let cx = match (&args.input, &args.builtin) {
        (Some(path), _) => load_complex(path, limits)?,
        (None, Some(name)) => builtin_complex(name)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let family = ContactFamily::build(&cx, limits.reduced_mode);
    let atlas = CliqueAtlas::build(&cx, &family, limits.cap_cliques)?;
    let rebuilt = reconstruct(&family.contact, limits.cap_cliques)?;
    let sections = [
        ("hyperplanes", serde_json::to_value(hyperplane_docs(&cx))?),
        ("family", serde_json::to_value(FamilyDoc::of(&family))?),
        ("atlas", serde_json::to_value(AtlasDoc::of(&cx, &atlas))?),
        ("interaction", serde_json::to_value(all_interaction_sets(&cx))?),
        ("reconstruction", roundtrip_report(&cx, &atlas, &rebuilt)),
    ];
    match &args.out {
        None => {
            let mut doc = serde_json::Map::new();
            doc.insert("vertices".into(), json!(cx.order()));
            doc.insert("dimension".into(), json!(cx.dimension()));
            for (k, v) in sections {
                doc.insert(k.into(), v);
            }
            emit(None, &to_pretty(&doc))?;
        }
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            for (k, v) in &sections {
                write(dir, &format!("{k}.json"), &to_pretty(v))?;
            }
            if args.dot {
                write(dir, "complex.dot", &complex_dot(&cx))?;
                write(dir, "family.dot", &family_dot(&family))?;
            }
        }
    }
    Ok(Outcome::Done)
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    emit(Some(&dir.join(name)), text)
}

/// The rebuilt graph and whether it is isomorphic to the 1-skeleton.
/// `isomorphic` is null when the search gives up.
fn roundtrip_report(cx: &CubeComplex, atlas: &CliqueAtlas, r: &Reconstruction) -> Value {
    let isomorphic = match clique_identification(cx, atlas, r) {
        Some(same) => Some(same),
        None => isomorphism(cx.graph(), &r.graph, ISOMORPHISM_BUDGET).ok().map(|m| m.is_some()),
    };
    json!({
        "complex": reconstruction_doc(r),
        "vertices": r.graph.order(),
        "edges": r.graph.edge_count(),
        "isomorphic": isomorphic,
    })
}

/// When no vertex is extremal, `v ↦ 𝒲_v` is the candidate isomorphism;
/// checks it directly.
fn clique_identification(cx: &CubeComplex, atlas: &CliqueAtlas, r: &Reconstruction) -> Option<bool> {
    if atlas.extremal.iter().any(|&e| e) || r.cliques.len() != cx.order() {
        return None;
    }
    let index: std::collections::HashMap<&Vec<usize>, usize> = r.cliques.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let map: Vec<usize> = atlas.clique_of.iter().map(|c| index.get(c).copied()).collect::<Option<_>>()?;
    Some(cx.edges().iter().all(|&(u, v)| r.graph.has_edge(map[u], map[v])) && cx.graph().edge_count() == r.graph.edge_count())
}

pub fn run_reconstruct(args: &ReconstructArgs, limits: &Limits) -> Result<Outcome> {
    let contact = parse_contact_graph(&read(&args.input)?).with_context(|| format!("invalid contact graph {}", args.input.display()))?;
    let r = reconstruct(&contact, limits.cap_cliques)?;
    let doc = reconstruction_doc(&r);
    if args.diagnostics {
        eprintln!("hyperplanes: {}", contact.order());
        eprintln!("maximal cliques: {}", r.cliques.len());
        eprintln!("edges: {}", r.graph.edge_count());
        match ComplexDoc::clone(&doc).build() {
            Ok(cx) => eprintln!("median: yes, {} hyperplanes, dimension {}", cx.hyperplane_count(), cx.dimension()),
            Err(e) => eprintln!("median: no, {e}"),
        }
    }
    emit(args.out.as_ref(), &to_pretty(&doc))?;
    Ok(Outcome::Done)
}
