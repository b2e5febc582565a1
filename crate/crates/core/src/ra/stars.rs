//! Star containments in the defining graph and the matching structure of
//! interaction sets in Coxeter balls.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::ball::Ball;
use super::gamma::{DefiningGraph, Generator};
use super::word::GroupKind;
use super::RaError;
use crate::graph::is_subset;
use crate::median::HyperplaneId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    /// Ordered pairs `(a, b)`, `a ≠ b`, with `St a ⊆ St b`.
    pub star_containments: Vec<(String, String)>,
    /// Unordered pairs with `St a = St b`.
    pub equal_stars: Vec<(String, String)>,
    /// Unordered pairs with `lk a = lk b`.
    pub equal_links: Vec<(String, String)>,
    /// Vertices joined to all others.
    pub cone_part: Vec<String>,
    pub rest: Vec<String>,
    pub is_cone: bool,
}

pub fn graph_star_analysis(gamma: &DefiningGraph) -> StarReport {
    let n = gamma.order();
    let name = |g: Generator| gamma.name(g).to_string();
    let mut report = StarReport {
        star_containments: Vec::new(),
        equal_stars: Vec::new(),
        equal_links: Vec::new(),
        cone_part: Vec::new(),
        rest: Vec::new(),
        is_cone: false,
    };
    for a in 0..n {
        for b in 0..n {
            if a != b && gamma.star_contained(a, b) {
                report.star_containments.push((name(a), name(b)));
            }
            if a < b && gamma.star(a) == gamma.star(b) {
                report.equal_stars.push((name(a), name(b)));
            }
            if a < b && gamma.link(a) == gamma.link(b) {
                report.equal_links.push((name(a), name(b)));
            }
        }
    }
    let (cone, rest) = gamma.join_decomposition();
    report.is_cone = !cone.is_empty();
    report.cone_part = cone.into_iter().map(name).collect();
    report.rest = rest.into_iter().map(name).collect();
    report
}

/// `I(w)` in a ball, intersecting `𝒲_v` only over carrier vertices whose
/// neighbours all lie in the ball (depth ≥ 1).
pub fn ball_interaction_set(ball: &Ball, w: HyperplaneId) -> FixedBitSet {
    let cx = &ball.complex;
    let mut acc: Option<FixedBitSet> = None;
    for v in cx.hyperplanes()[w].carrier.ones().filter(|&v| ball.depth[v] >= 1) {
        let wv = cx.hyperplanes_at(v).expect("valid vertex");
        match acc.as_mut() {
            None => acc = Some(wv.clone()),
            Some(a) => a.intersect_with(wv),
        }
    }
    acc.unwrap_or_else(|| FixedBitSet::with_capacity(cx.hyperplane_count()))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct StarInclusionReport {
    pub hyperplanes_checked: usize,
    /// Sizes of the interior `I⁰` classes that have more than one element.
    pub nontrivial_i0: Vec<Vec<HyperplaneId>>,
    pub largest_i: usize,
    pub mismatches: Vec<String>,
}

/// Compares `I(w)` and `I⁰(w)` with the star formulas for every hyperplane
/// adjacent to a vertex of depth at least `margin`.
pub fn star_inclusion_check(ball: &Ball, margin: usize) -> Result<StarInclusionReport, RaError> {
    if ball.kind() != GroupKind::Coxeter {
        return Err(RaError::WrongKind("star inclusion check needs a Coxeter ball".into()));
    }
    if margin < 2 {
        return Err(RaError::InvalidParameter("star inclusion check needs margin at least 2".into()));
    }
    let cx = &ball.complex;
    let gamma = ball.gamma();
    let interior = ball.interior_hyperplanes(margin);
    let h = cx.hyperplane_count();
    let i_sets: Vec<Option<FixedBitSet>> = (0..h).map(|w| interior.contains(w).then(|| ball_interaction_set(ball, w))).collect();
    let mut report = StarInclusionReport::default();
    for w in interior.ones() {
        report.hyperplanes_checked += 1;
        let i = i_sets[w].as_ref().expect("interior");
        report.largest_i = report.largest_i.max(i.count_ones(..));
        let sw = gamma.star(ball.labels[w]);
        let formula: FixedBitSet = (0..h)
            .filter(|&u| {
                !cx.hyperplanes()[u].carrier.is_disjoint(&cx.hyperplanes()[w].carrier) && is_subset(&sw, &gamma.star(ball.labels[u]))
            })
            .collect();
        let mut formula_set = FixedBitSet::with_capacity(h);
        formula_set.union_with(&formula);
        if *i != formula_set {
            report.mismatches.push(format!(
                "I({w}) = {:?} but star formula gives {:?}",
                i.ones().collect::<Vec<_>>(),
                formula_set.ones().collect::<Vec<_>>()
            ));
            continue;
        }
        let i0: Vec<HyperplaneId> = i.ones().filter(|&u| i_sets[u].as_ref().is_some_and(|iu| iu.contains(w))).collect();
        let i0_formula: Vec<HyperplaneId> = i.ones().filter(|&u| gamma.star(ball.labels[u]) == sw).collect();
        if i0 != i0_formula {
            report.mismatches.push(format!("I⁰({w}) = {i0:?} but equal stars give {i0_formula:?}"));
        } else if i0.len() > 1 && i0[0] == w {
            report.nontrivial_i0.push(i0);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn analyses() {
        let p4 = graph_star_analysis(&DefiningGraph::builtin("P4").unwrap());
        assert!(p4.star_containments.contains(&pair("a", "b")));
        assert!(p4.equal_stars.is_empty());
        assert!(!p4.is_cone);
        let c5 = graph_star_analysis(&DefiningGraph::builtin("C5").unwrap());
        assert!(c5.star_containments.is_empty() && c5.equal_stars.is_empty() && c5.equal_links.is_empty());
        let k5 = graph_star_analysis(&DefiningGraph::builtin("K5").unwrap());
        assert!(k5.is_cone);
        assert_eq!(k5.cone_part.len(), 5);
        assert!(k5.rest.is_empty());
        let eq = graph_star_analysis(&DefiningGraph::builtin("STAR_EQ5").unwrap());
        assert_eq!(eq.equal_stars, vec![pair("a", "b")]);
    }

    #[test]
    fn c5_interior_sets_are_singletons() {
        let b = Ball::build(DefiningGraph::builtin("C5").unwrap(), GroupKind::Coxeter, 3, 10_000).unwrap();
        let r = star_inclusion_check(&b, 2).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        assert_eq!(r.largest_i, 1);
        assert!(r.nontrivial_i0.is_empty());
    }
}
