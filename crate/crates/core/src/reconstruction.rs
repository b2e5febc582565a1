//! Vertices as maximal cliques of the contact graph, the adjacency
//! criterion, the maps `ι` and `ρ`, and the kernel generators.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::automorphism::{AutomorphismError, GraphAutomorphism, PartialMap};
use crate::cliques::{maximal_cliques, CliqueLimitExceeded};
use crate::contact::{all_interaction_sets, ContactFamily};
use crate::graph::{bitset_from, is_subset, Graph};
use crate::median::{ComplexError, CubeComplex, HyperplaneId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    CliqueLimit(#[from] CliqueLimitExceeded),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("clique {clique:?} is attained by several vertices {vertices:?}")]
    AmbiguousClique { clique: Vec<HyperplaneId>, vertices: Vec<VertexId> },
    #[error("clique {0:?} is not the hyperplane set of any vertex")]
    UnknownClique(Vec<HyperplaneId>),
}

/// Maximal cliques of the contact graph matched against the sets `𝒲_v`.
#[derive(Clone, Debug)]
pub struct CliqueAtlas {
    /// Canonically ordered maximal cliques.
    pub cliques: Vec<Vec<HyperplaneId>>,
    /// For each maximal clique, the vertices `v` with `𝒲_v` equal to it.
    pub vertices_of: Vec<Vec<VertexId>>,
    /// `𝒲_v` for every vertex, sorted.
    pub clique_of: Vec<Vec<HyperplaneId>>,
    /// Whether `lk v` is a cone.
    pub extremal: Vec<bool>,
    by_set: HashMap<Vec<HyperplaneId>, Vec<VertexId>>,
}

impl CliqueAtlas {
    /// Enumerates maximal cliques and checks that every one is some `𝒲_v`,
    /// and that `𝒲_v ⊆ 𝒲_w` for some `w ≠ v` exactly when `lk v` is a cone.
    pub fn build(cx: &CubeComplex, family: &ContactFamily, cap: usize) -> Result<Self, ReconstructionError> {
        let n = cx.order();
        let h = cx.hyperplane_count();
        let cliques = maximal_cliques(&family.contact, cap)?;
        let clique_of: Vec<Vec<HyperplaneId>> =
            (0..n).map(|v| cx.hyperplanes_at(v).map(|s| s.ones().collect())).collect::<Result<_, _>>()?;
        let extremal: Vec<bool> = (0..n).map(|v| cx.is_extremal(v)).collect();
        let mut by_set: HashMap<Vec<HyperplaneId>, Vec<VertexId>> = HashMap::new();
        for (v, c) in clique_of.iter().enumerate() {
            by_set.entry(c.clone()).or_default().push(v);
        }

        let sets: Vec<FixedBitSet> = clique_of.iter().map(|c| bitset_from(h, c.iter().copied())).collect();
        let mut vertices_of = Vec::with_capacity(cliques.len());
        for c in &cliques {
            let cs = bitset_from(h, c.iter().copied());
            if !sets.iter().any(|s| is_subset(&cs, s)) {
                return Err(ReconstructionError::LemmaViolation(format!("clique {c:?} lies in no 𝒲_v")));
            }
            match by_set.get(c) {
                Some(vs) => vertices_of.push(vs.clone()),
                None => return Err(ReconstructionError::LemmaViolation(format!("maximal clique {c:?} is no 𝒲_v"))),
            }
        }
        for v in 0..n {
            let dominated = (0..n).any(|w| w != v && is_subset(&sets[v], &sets[w]));
            if dominated != extremal[v] {
                return Err(ReconstructionError::LemmaViolation(format!(
                    "vertex {}: dominated={dominated}, cone link={}",
                    cx.name(v),
                    extremal[v]
                )));
            }
            let maximal_unique = cliques.binary_search(&clique_of[v]).is_ok() && by_set[&clique_of[v]].len() == 1;
            if maximal_unique == extremal[v] {
                return Err(ReconstructionError::LemmaViolation(format!(
                    "vertex {}: maximal and unique={maximal_unique}, cone link={}",
                    cx.name(v),
                    extremal[v]
                )));
            }
        }
        Ok(CliqueAtlas { cliques, vertices_of, clique_of, extremal, by_set })
    }

    /// The unique vertex whose hyperplane set is `clique` (any order).
    pub fn resolve(&self, clique: &[HyperplaneId]) -> Result<VertexId, ReconstructionError> {
        let mut key = clique.to_vec();
        key.sort_unstable();
        match self.by_set.get(&key) {
            None => Err(ReconstructionError::UnknownClique(key)),
            Some(vs) if vs.len() == 1 => Ok(vs[0]),
            Some(vs) => Err(ReconstructionError::AmbiguousClique { clique: key, vertices: vs.clone() }),
        }
    }

    pub fn extremal_vertices(&self) -> Vec<VertexId> {
        (0..self.extremal.len()).filter(|&v| self.extremal[v]).collect()
    }
}

/// Outcome of the adjacency criterion for a vertex pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionOutcome {
    /// True when no witness exists.
    pub holds: bool,
    /// Some `x ∉ {v, w}` with `𝒲_v ∩ 𝒲_w ⊆ 𝒲_v ∩ 𝒲_x`.
    pub witness: Option<VertexId>,
}

pub fn adjacency_criterion(cx: &CubeComplex, v: VertexId, w: VertexId) -> Result<CriterionOutcome, ComplexError> {
    cx.check_vertex(v)?;
    cx.check_vertex(w)?;
    if v == w {
        return Err(ComplexError::InvalidParameter("adjacency criterion needs distinct vertices".into()));
    }
    let mut common = cx.hyperplanes_at(v)?.clone();
    common.intersect_with(cx.hyperplanes_at(w)?);
    let near = cx.graph().neighbors(v);
    let rest = (0..cx.order()).filter(|&x| !cx.graph().has_edge(v, x));
    let witness = near.chain(rest).filter(|&x| x != v && x != w).find(|&x| is_subset(&common, cx.hyperplanes_at(x).expect("valid")));
    Ok(CriterionOutcome { holds: witness.is_none(), witness })
}

/// Candidate 1-skeleton rebuilt from a contact graph alone.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub cliques: Vec<Vec<HyperplaneId>>,
    pub graph: Graph,
}

/// Vertices are maximal cliques; `C1` and `C2` are joined unless a third
/// maximal clique contains `C1 ∩ C2`.
pub fn reconstruct(contact: &Graph, cap: usize) -> Result<Reconstruction, CliqueLimitExceeded> {
    let cliques = maximal_cliques(contact, cap)?;
    let h = contact.order();
    let sets: Vec<FixedBitSet> = cliques.iter().map(|c| bitset_from(h, c.iter().copied())).collect();
    let k = cliques.len();
    let mut graph = Graph::new(k);
    for a in 0..k {
        for b in a + 1..k {
            let mut common = sets[a].clone();
            common.intersect_with(&sets[b]);
            let blocked = (0..k).any(|c| c != a && c != b && is_subset(&common, &sets[c]));
            if !blocked {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(Reconstruction { cliques, graph })
}

/// Hyperplane image of a dual edge under a vertex map, if both endpoints map.
fn edge_image(cx: &CubeComplex, map: &dyn Fn(VertexId) -> Option<VertexId>, e: usize) -> Result<Option<HyperplaneId>, AutomorphismError> {
    let (u, v) = cx.edges()[e];
    match (map(u), map(v)) {
        (Some(a), Some(b)) => match cx.find_edge(a, b) {
            Some(f) => Ok(Some(cx.edge_hyperplane(f))),
            None => Err(AutomorphismError::NotAnAutomorphism(format!(
                "edge {}-{} maps to non-edge {}-{}",
                cx.name(u),
                cx.name(v),
                cx.name(a),
                cx.name(b)
            ))),
        },
        _ => Ok(None),
    }
}

fn hyperplane_map(cx: &CubeComplex, map: &dyn Fn(VertexId) -> Option<VertexId>) -> Result<PartialMap, AutomorphismError> {
    let mut out = PartialMap::new();
    for e in 0..cx.edges().len() {
        if let Some(img) = edge_image(cx, map, e)? {
            let w = cx.edge_hyperplane(e);
            if let Some(&prev) = out.get(&w) {
                if prev != img {
                    return Err(AutomorphismError::HyperplaneNotPreserved(format!(
                        "dual edges of hyperplane {w} map into hyperplanes {prev} and {img}"
                    )));
                }
            }
            out.insert(w, img);
        }
    }
    Ok(out)
}

/// `ι(g)`: the permutation of hyperplanes induced by an automorphism of
/// the 1-skeleton, certified to preserve the contact graph.
pub fn induce_iota(cx: &CubeComplex, contact: &Graph, g: &GraphAutomorphism) -> Result<GraphAutomorphism, AutomorphismError> {
    g.check_preserves(cx.graph())?;
    let map = hyperplane_map(cx, &|v| Some(g.apply(v)))?;
    let perm: Vec<usize> = (0..cx.hyperplane_count()).map(|w| map[&w]).collect();
    GraphAutomorphism::new(contact, perm)
}

/// `ι` for a vertex map defined on part of the complex (for instance a
/// group translation restricted to the vertices it keeps inside a ball).
/// Returns the hyperplane map on every hyperplane with a dual edge inside
/// the domain.
pub fn induce_iota_partial(cx: &CubeComplex, g: &PartialMap) -> Result<PartialMap, AutomorphismError> {
    hyperplane_map(cx, &|v| g.get(&v).copied())
}

/// `ρ(φ)(v)`: the vertex whose hyperplane set is `φ(𝒲_v)`.
pub fn rho_at(
    atlas: &CliqueAtlas,
    phi: &dyn Fn(HyperplaneId) -> Option<HyperplaneId>,
    v: VertexId,
) -> Result<VertexId, ReconstructionError> {
    let mut image = Vec::with_capacity(atlas.clique_of[v].len());
    for &w in &atlas.clique_of[v] {
        match phi(w) {
            Some(x) => image.push(x),
            None => return Err(ReconstructionError::UnknownClique(atlas.clique_of[v].clone())),
        }
    }
    atlas.resolve(&image)
}

/// `ρ(φ)` on `domain`, split into resolved values and per-vertex failures.
#[derive(Clone, Debug, Default)]
pub struct RhoMap {
    pub map: PartialMap,
    pub failures: BTreeMap<VertexId, ReconstructionError>,
}

pub fn induce_rho(
    atlas: &CliqueAtlas,
    phi: &dyn Fn(HyperplaneId) -> Option<HyperplaneId>,
    domain: impl IntoIterator<Item = VertexId>,
) -> RhoMap {
    let mut out = RhoMap::default();
    for v in domain {
        match rho_at(atlas, phi, v) {
            Ok(x) => {
                out.map.insert(v, x);
            }
            Err(e) => {
                out.failures.insert(v, e);
            }
        }
    }
    out
}

/// A transposition inside one `I⁰` class.
#[derive(Clone, Debug)]
pub struct KernelGenerator {
    pub class: Vec<HyperplaneId>,
    pub swap: (HyperplaneId, HyperplaneId),
    pub automorphism: GraphAutomorphism,
}

/// The `I⁰` classes of all hyperplanes, sorted by least element.
pub fn i0_classes(cx: &CubeComplex) -> Result<Vec<Vec<HyperplaneId>>, ReconstructionError> {
    let sets = all_interaction_sets(cx);
    let mut classes: Vec<Vec<HyperplaneId>> = Vec::new();
    let mut seen = vec![false; sets.len()];
    for s in &sets {
        if seen[s.base] {
            continue;
        }
        for &u in &s.i0 {
            if sets[u].i0 != s.i0 {
                return Err(ReconstructionError::LemmaViolation(format!("I⁰({}) = {:?} but I⁰({u}) = {:?}", s.base, s.i0, sets[u].i0)));
            }
            seen[u] = true;
        }
        classes.push(s.i0.clone());
    }
    Ok(classes)
}

/// Every transposition inside every non-singleton `I⁰` class, each
/// certified to be a contact automorphism fixing all maximal cliques.
pub fn kernel_subgroup(cx: &CubeComplex, family: &ContactFamily, atlas: &CliqueAtlas) -> Result<Vec<KernelGenerator>, ReconstructionError> {
    let h = cx.hyperplane_count();
    let mut out = Vec::new();
    for class in i0_classes(cx)? {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                let t = GraphAutomorphism::transposition(h, a, b);
                t.check_preserves(&family.contact).map_err(|e| ReconstructionError::LemmaViolation(format!("swap ({a} {b}): {e}")))?;
                for c in &atlas.cliques {
                    let mut img: Vec<usize> = c.iter().map(|&x| t.apply(x)).collect();
                    img.sort_unstable();
                    if &img != c {
                        return Err(ReconstructionError::LemmaViolation(format!("swap ({a} {b}) moves clique {c:?}")));
                    }
                }
                out.push(KernelGenerator { class: class.clone(), swap: (a, b), automorphism: t });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::contact::ReducedMode;

    fn setup(name: &str) -> (CubeComplex, ContactFamily, CliqueAtlas) {
        let cx = builtins::complex(name).unwrap();
        let f = ContactFamily::build(&cx, ReducedMode::SelfExclusive);
        let a = CliqueAtlas::build(&cx, &f, 1000).unwrap();
        (cx, f, a)
    }

    #[test]
    fn atlas_examples() {
        let (_, _, sq) = setup("SQUARE");
        assert_eq!(sq.cliques.len(), 1);
        assert!(sq.extremal.iter().all(|&e| e));
        assert!(matches!(sq.resolve(&[0, 1]), Err(ReconstructionError::AmbiguousClique { .. })));

        let (cx, _, tri) = setup("TRIPOD");
        assert_eq!(tri.cliques, vec![vec![0, 1, 2]]);
        let c = cx.vertex("c").unwrap();
        assert_eq!(tri.resolve(&[2, 0, 1]).unwrap(), c);
        assert!(!tri.extremal[c]);
        assert!(matches!(tri.resolve(&[0, 1]), Err(ReconstructionError::UnknownClique(_))));
    }

    #[test]
    fn square_breaks_strict_domination() {
        // Every 𝒲_v of the square is the same set, so no 𝒲_v is strictly
        // contained in another while every link is a cone.
        let (cx, _, atlas) = setup("SQUARE");
        for v in 0..4 {
            assert!(atlas.extremal[v]);
            assert!((0..4).all(|w| atlas.clique_of[w] == atlas.clique_of[v]));
        }
        let _ = cx;
    }

    #[test]
    fn domino_criterion() {
        let cx = builtins::complex("DOMINO").unwrap();
        let v = |s: &str| cx.vertex(s).unwrap();
        assert!(adjacency_criterion(&cx, v("1,0"), v("1,1")).unwrap().holds);
        let out = adjacency_criterion(&cx, v("0,0"), v("2,0")).unwrap();
        assert_eq!(out.witness, Some(v("1,0")));
        assert!(adjacency_criterion(&cx, 0, 0).is_err());
    }

    #[test]
    fn reconstructions() {
        let (_, f, _) = setup("DOMINO");
        let r = reconstruct(&f.contact, 100).unwrap();
        assert_eq!(r.graph.order(), 1);
        let (_, f, _) = setup("TRIPOD");
        assert_eq!(reconstruct(&f.contact, 100).unwrap().graph.order(), 1);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let r = reconstruct(&path, 100).unwrap();
        assert_eq!(r.cliques, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(r.graph.edge_count(), 1);
    }

    #[test]
    fn iota_and_rho() {
        let (cx, f, atlas) = setup("SQUARE");
        // 00 -> 01 -> 11 -> 10 -> 00
        let rot = GraphAutomorphism::new(cx.graph(), vec![1, 2, 3, 0]).unwrap();
        let iota = induce_iota(&cx, &f.contact, &rot).unwrap();
        assert_eq!(iota.permutation(), &[1, 0]);
        let id = induce_iota(&cx, &f.contact, &GraphAutomorphism::identity(4)).unwrap();
        assert!(id.is_identity());
        let rho = induce_rho(&atlas, &|w| Some(w), 0..4);
        assert_eq!(rho.failures.len(), 4);

        let (cx, f, atlas) = setup("TRIPOD");
        let (l1, l2) = (cx.vertex("l1").unwrap(), cx.vertex("l2").unwrap());
        let g = GraphAutomorphism::new(cx.graph(), GraphAutomorphism::transposition(4, l1, l2).permutation().to_vec()).unwrap();
        let iota = induce_iota(&cx, &f.contact, &g).unwrap();
        let c = cx.vertex("c").unwrap();
        assert_eq!(rho_at(&atlas, &|w| Some(iota.apply(w)), c).unwrap(), c);
    }

    #[test]
    fn kernels() {
        let (cx, f, atlas) = setup("SQUARE");
        let gens = kernel_subgroup(&cx, &f, &atlas).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].automorphism.order(), 2);
        let (cx, f, atlas) = setup("TRIPOD");
        assert!(kernel_subgroup(&cx, &f, &atlas).unwrap().is_empty());
    }
}
