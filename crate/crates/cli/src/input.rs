//! Loading instances from files or builtin names.

use std::path::Path;

use anyhow::{bail, Context, Result};
use cubetact::io::{parse_complex, parse_gamma};
use cubetact::ra::gamma::GAMMA_NAMES;
use cubetact::ra::{Ball, DefiningGraph, GroupKind};
use cubetact::{builtins, CubeComplex};

use crate::Limits;

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn check_size(cx: &CubeComplex, limits: &Limits) -> Result<()> {
    if cx.order() > limits.cap_vertices {
        bail!("complex has {} vertices, cap is {}", cx.order(), limits.cap_vertices);
    }
    Ok(())
}

pub fn load_complex(path: &Path, limits: &Limits) -> Result<CubeComplex> {
    let cx = parse_complex(&read(path)?).with_context(|| format!("invalid complex {}", path.display()))?;
    check_size(&cx, limits)?;
    Ok(cx)
}

pub fn builtin_complex(name: &str) -> Result<CubeComplex> {
    if !builtins::COMPLEX_NAMES.contains(&name) {
        bail!("unknown builtin complex {name:?} (known: {})", builtins::COMPLEX_NAMES.join(", "));
    }
    Ok(builtins::complex(name)?)
}

/// A defining graph from a JSON file, or a builtin name when no such file exists.
pub fn load_gamma(source: &str) -> Result<(String, DefiningGraph)> {
    let path = Path::new(source);
    if path.exists() {
        let gamma = parse_gamma(&read(path)?).with_context(|| format!("invalid defining graph {source}"))?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| source.into());
        return Ok((stem, gamma));
    }
    if GAMMA_NAMES.contains(&source) {
        return Ok((source.to_string(), DefiningGraph::builtin(source)?));
    }
    bail!("{source} is neither a file nor a builtin defining graph ({})", GAMMA_NAMES.join(", "))
}

pub fn build_ball(gamma: DefiningGraph, kind: GroupKind, radius: usize, limits: &Limits) -> Result<Ball> {
    Ball::build(gamma, kind, radius, limits.cap_vertices).context("cannot build ball")
}
