//! Truncated extension graphs of right-angled Artin groups, compared with
//! the reduced crossing graph of the ball.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::ball::Ball;
use super::gamma::{DefiningGraph, Generator};
use super::word::{Group, GroupKind, Letter, NormalForm};
use super::RaError;
use crate::contact::{reduced_classes, ReducedMode};
use crate::median::HyperplaneId;
use crate::Graph;

/// A parallelism class of standard geodesics with label `gen`: the lines
/// `g⟨gen⟩` for `g` in one coset `rep·⟨St gen⟩`, with `rep` shortest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey {
    pub gen: Generator,
    pub rep: NormalForm,
}

pub fn class_key(group: &Group, element: &NormalForm, gen: Generator) -> ClassKey {
    ClassKey { gen, rep: group.min_left_coset_rep(element, &group.gamma.star(gen)) }
}

/// The class of the standard geodesics crossing hyperplane `w`.
pub fn hyperplane_class(ball: &Ball, w: HyperplaneId) -> ClassKey {
    let e = ball.complex.hyperplanes()[w].dual_edges[0];
    let (u, _) = ball.complex.edges()[e];
    class_key(&ball.group, ball.element(u), ball.labels[w])
}

/// Exact key of the hyperplane of `X_Γ` dual to the ball hyperplane `w`:
/// the label `x` and the coset `p·A_{lk x}`, where `(p, p·x)` is a dual edge.
pub fn wall_key(ball: &Ball, w: HyperplaneId) -> ClassKey {
    let cx = &ball.complex;
    let e = cx.hyperplanes()[w].dual_edges[0];
    let (u, v) = cx.edges()[e];
    let x = ball.labels[w];
    let step = ball.group.mul(&ball.group.inverse(ball.element(u)), ball.element(v));
    let tail = if step.letters()[0].inverse { v } else { u };
    ClassKey { gen: x, rep: ball.group.min_left_coset_rep(ball.element(tail), &ball.gamma().link(x)) }
}

/// Whether two hyperplanes of `X_Γ`, given by [`wall_key`], cross: their
/// labels commute and the cosets `g·A_{lk x}` and `h·A_{lk y}` meet.
pub fn walls_transverse(group: &Group, h: &ClassKey, k: &ClassKey) -> bool {
    if h.gen == k.gen || !group.gamma.commute(h.gen, k.gen) {
        return false;
    }
    let d = group.mul(&group.inverse(&h.rep), &k.rep);
    group.min_double_coset_rep(&d, &group.gamma.link(h.gen), &group.gamma.link(k.gen)).is_empty()
}

/// Whether two conjugates of generators commute: the labels are adjacent
/// and the cosets of the stars meet.
pub fn classes_adjacent(group: &Group, a: &ClassKey, b: &ClassKey) -> bool {
    if a.gen == b.gen || !group.gamma.commute(a.gen, b.gen) {
        return false;
    }
    let d = group.mul(&group.inverse(&a.rep), &b.rep);
    group.min_double_coset_rep(&d, &group.gamma.star(a.gen), &group.gamma.star(b.gen)).is_empty()
}

#[derive(Clone, Debug)]
pub struct ExtensionGraph {
    pub classes: Vec<ClassKey>,
    pub graph: Graph,
    /// Class index of every hyperplane of the ball.
    pub class_of: Vec<usize>,
}

/// The subgraph of `Γᵉ` spanned by the parallelism classes met by ball
/// edges. Edges are decided in the group, not in the ball.
pub fn extension_graph_ball(ball: &Ball) -> Result<ExtensionGraph, RaError> {
    if ball.kind() != GroupKind::Artin {
        return Err(RaError::WrongKind("extension graphs are built for Artin balls".into()));
    }
    let h = ball.complex.hyperplane_count();
    let keys: Vec<ClassKey> = (0..h).map(|w| hyperplane_class(ball, w)).collect();
    let classes: Vec<ClassKey> = keys.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let pos: HashMap<&ClassKey, usize> = classes.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let class_of: Vec<usize> = keys.iter().map(|k| pos[k]).collect();
    let mut graph = Graph::new(classes.len());
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes_adjacent(&ball.group, &classes[i], &classes[j]) {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(ExtensionGraph { classes, graph, class_of })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionComparison {
    pub skipped: Option<String>,
    pub reduced_classes: usize,
    pub extension_vertices: usize,
    pub reduced_edges: usize,
    pub extension_edges: usize,
    /// Twin classes and parallelism classes of interior hyperplanes coincide
    /// and the two graphs agree.
    pub isomorphic: bool,
    pub mismatches: Vec<String>,
    /// Failures of the weaker statement that the reduced crossing graph is
    /// the extension graph with twin vertices identified.
    pub quotient_mismatches: Vec<String>,
    /// A pair `x ≠ z` with `lk x ⊆ lk z`, and whether the walls `x@1` and
    /// `x@z` were found to be twins from different parallelism classes.
    pub link_containment: Option<LinkContainment>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkContainment {
    pub smaller: String,
    pub larger: String,
    pub twins_confirmed: bool,
}

/// First pair `x ≠ z` with `lk x ⊆ lk z`. For such a pair, multiplying by
/// `z` preserves the set of hyperplanes crossing an `x`-hyperplane, so the
/// walls `x@1` and `x@z` are twins, while `z x z⁻¹ ≠ x` puts them in
/// different parallelism classes.
pub fn link_containment(gamma: &DefiningGraph) -> Option<(Generator, Generator)> {
    let n = gamma.order();
    (0..n).flat_map(|x| (0..n).map(move |z| (x, z))).find(|&(x, z)| x != z && gamma.link(x).is_subset(&gamma.link(z)))
}

/// Compares the reduced crossing graph on the interior hyperplanes with
/// the extension graph on their parallelism classes.
///
/// Crossing is decided exactly for every hyperplane met by the ball, twin
/// classes are formed over all of them and then restricted to interior
/// hyperplanes. Each twin class must be one parallelism class, and the two
/// graphs must agree under that identification.
pub fn compare_with_reduced(ball: &Ball, margin: usize) -> Result<ExtensionComparison, RaError> {
    let gamma = ball.gamma();
    let mut out = ExtensionComparison {
        skipped: None,
        reduced_classes: 0,
        extension_vertices: 0,
        reduced_edges: 0,
        extension_edges: 0,
        isomorphic: false,
        mismatches: Vec::new(),
        quotient_mismatches: Vec::new(),
        link_containment: None,
    };
    for a in 0..gamma.order() {
        for b in a + 1..gamma.order() {
            if gamma.link(a) == gamma.link(b) {
                out.skipped = Some(format!("{} and {} have the same link", gamma.name(a), gamma.name(b)));
                return Ok(out);
            }
        }
    }
    let ext = extension_graph_ball(ball)?;
    let group = &ball.group;
    let h = ball.complex.hyperplane_count();

    // distinct hyperplanes of X_Γ met by the ball
    let mut walls: Vec<ClassKey> = Vec::new();
    let mut index: HashMap<ClassKey, usize> = HashMap::new();
    let mut class_of_wall = Vec::new();
    let wall_of: Vec<usize> = (0..h)
        .map(|w| {
            let k = wall_key(ball, w);
            let next = walls.len();
            *index.entry(k.clone()).or_insert_with(|| {
                walls.push(k);
                class_of_wall.push(ext.class_of[w]);
                next
            })
        })
        .collect();
    let mut crossing = Graph::new(walls.len());
    for i in 0..walls.len() {
        for j in i + 1..walls.len() {
            if walls_transverse(group, &walls[i], &walls[j]) {
                crossing.add_edge(i, j);
            }
        }
    }
    let (classes, quotient) = reduced_classes(&crossing, ReducedMode::SelfExclusive);
    let interior: Vec<usize> = ball.interior_hyperplanes(margin).ones().map(|w| wall_of[w]).collect::<BTreeSet<_>>().into_iter().collect();

    if let Some((x, z)) = link_containment(gamma) {
        let lk = gamma.link(x);
        let at = |g: NormalForm| ClassKey { gen: x, rep: group.min_left_coset_rep(&g, &lk) };
        let zl = group.normal_form(&[Letter { gen: z, inverse: false }]);
        let (u, v) = (at(NormalForm::identity()), at(zl));
        let twins_confirmed = match (index.get(&u), index.get(&v)) {
            (Some(&i), Some(&j)) => quotient[i] == quotient[j] && class_of_wall[i] != class_of_wall[j],
            _ => false,
        };
        out.link_containment =
            Some(LinkContainment { smaller: gamma.name(x).to_string(), larger: gamma.name(z).to_string(), twins_confirmed });
    }

    // the quotient statement: parallel walls are twins, and crossing
    // between walls is adjacency between their parallelism classes
    for (n, &i) in interior.iter().enumerate() {
        for &j in &interior[n + 1..] {
            let (ci, cj) = (class_of_wall[i], class_of_wall[j]);
            if ci == cj && quotient[i] != quotient[j] {
                out.quotient_mismatches.push(format!(
                    "parallel walls {} and {} are not twins",
                    describe(ball, &walls[i]),
                    describe(ball, &walls[j])
                ));
            }
            if ci != cj && crossing.has_edge(i, j) != ext.graph.has_edge(ci, cj) {
                out.quotient_mismatches.push(format!(
                    "{} and {}: crossing {}, commuting conjugates {}",
                    describe(ball, &walls[i]),
                    describe(ball, &walls[j]),
                    crossing.has_edge(i, j),
                    ext.graph.has_edge(ci, cj)
                ));
            }
        }
    }

    // the isomorphism statement: twin classes are parallelism classes
    let interior_set: BTreeSet<usize> = interior.iter().copied().collect();
    let mut twin_ids: Vec<usize> = interior.iter().map(|&i| quotient[i]).collect();
    twin_ids.sort_unstable();
    twin_ids.dedup();
    let mut target = Vec::with_capacity(twin_ids.len());
    for &t in &twin_ids {
        let members: Vec<usize> = classes[t].iter().copied().filter(|m| interior_set.contains(m)).collect();
        let first = class_of_wall[members[0]];
        for &m in &members[1..] {
            if class_of_wall[m] != first {
                out.mismatches.push(format!(
                    "walls {} and {} are twins in different parallelism classes",
                    describe(ball, &walls[members[0]]),
                    describe(ball, &walls[m])
                ));
            }
        }
        target.push(first);
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (i, &c) in target.iter().enumerate() {
        if let Some(&j) = seen.get(&c) {
            out.mismatches.push(format!(
                "twin classes {} and {} share a parallelism class",
                describe(ball, &walls[classes[twin_ids[j]][0]]),
                describe(ball, &walls[classes[twin_ids[i]][0]])
            ));
        }
        seen.insert(c, i);
    }
    let n = twin_ids.len();
    for a in 0..n {
        for b in a + 1..n {
            let (ua, ub) = (classes[twin_ids[a]][0], classes[twin_ids[b]][0]);
            let reduced = crossing.has_edge(ua, ub);
            let extension = ext.graph.has_edge(target[a], target[b]);
            out.reduced_edges += reduced as usize;
            out.extension_edges += extension as usize;
        }
    }
    out.reduced_classes = n;
    out.extension_vertices = seen.len();
    out.isomorphic = out.mismatches.is_empty() && out.quotient_mismatches.is_empty();
    Ok(out)
}

fn describe(ball: &Ball, k: &ClassKey) -> String {
    format!("{}@{}", ball.gamma().name(k.gen), k.rep.display(ball.gamma()))
}
