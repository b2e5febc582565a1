//! The syllable metric restricted to a ball, and the shuffle isometries of
//! a join with a central generator.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::ball::Ball;
use super::extension::class_key;
use super::gamma::Generator;
use super::word::{GroupKind, Letter, NormalForm};
use super::RaError;
use crate::graph::Graph;
use crate::median::VertexId;

/// Vertices joined when they differ by a single syllable `g^k`, `k ≠ 0`.
pub fn syllable_graph(ball: &Ball) -> Graph {
    let n = ball.order();
    let mut g = Graph::new(n);
    let signs: &[bool] = match ball.kind() {
        GroupKind::Artin => &[false, true],
        GroupKind::Coxeter => &[false],
    };
    let reach = 2 * ball.radius + 2;
    for v in 0..n {
        for gen in 0..ball.gamma().order() {
            for &inverse in signs {
                let mut cur = ball.element(v).clone();
                for _ in 0..reach {
                    cur = ball.group.mul_letter(&cur, Letter::new(gen, inverse));
                    if let Some(u) = ball.vertex_of(&cur) {
                        g.add_edge(v, u);
                    }
                }
            }
        }
    }
    g
}

fn bfs(g: &Graph, root: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.order()];
    d[root] = 0;
    let mut q = VecDeque::from([root]);
    while let Some(u) = q.pop_front() {
        for v in g.neighbors(u) {
            if d[v] == usize::MAX {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
        }
    }
    d
}

/// Syllable distances between all ball vertices, along paths inside the
/// ball. Each value bounds the true syllable distance from above.
pub fn syllable_distances(ball: &Ball) -> Vec<Vec<usize>> {
    let g = syllable_graph(ball);
    (0..g.order()).map(|v| bfs(&g, v)).collect()
}

pub fn syllable_distance(ball: &Ball, x: VertexId, y: VertexId) -> Result<usize, RaError> {
    for v in [x, y] {
        if v >= ball.order() {
            return Err(RaError::Complex(crate::median::ComplexError::UnknownVertex(v.to_string())));
        }
    }
    Ok(bfs(&syllable_graph(ball), x)[y])
}

#[derive(Clone, Debug, Serialize)]
pub struct ShuffleReport {
    pub apex: String,
    /// Vertices whose image stays in the ball.
    pub domain: usize,
    pub pairs_checked: usize,
    pub syllable_violations: Vec<String>,
    /// A pair whose word distance changes: `(u, v, d_w(u, v), d_w(σu, σv))`.
    pub word_metric_witness: Option<(String, String, usize, usize)>,
    pub extension_identity: bool,
    /// The map on the domain, by vertex id.
    #[serde(skip)]
    pub map: BTreeMap<VertexId, VertexId>,
}

/// Writes each element as `g·z^n` with `z` central and `g` free of `z`.
fn split_central(ball: &Ball, el: &NormalForm, z: Generator) -> (NormalForm, i64) {
    let mut n = 0;
    let mut rest = Vec::new();
    for &l in el.letters() {
        if l.gen == z {
            n += if l.inverse { -1 } else { 1 };
        } else {
            rest.push(l);
        }
    }
    (ball.group.normal_form(&rest), n)
}

/// `(g, n) ↦ (g, σ(n))` for `Γ = Δ * {z}`, where `sigma` lists the pairs
/// moved by a permutation of `-R..=R`.
pub fn syllable_shuffle(ball: &Ball, apex: Option<Generator>, sigma: &BTreeMap<i64, i64>) -> Result<ShuffleReport, RaError> {
    if ball.kind() != GroupKind::Artin {
        return Err(RaError::WrongKind("syllable shuffles act on Artin balls".into()));
    }
    let gamma = ball.gamma();
    let (cone, _) = gamma.join_decomposition();
    let z = match apex {
        Some(z) if cone.contains(&z) => z,
        Some(_) => return Err(RaError::NotACone),
        None => *cone.first().ok_or(RaError::NotACone)?,
    };
    let r = ball.radius as i64;
    let mut seen_targets = std::collections::HashSet::new();
    for (&a, &b) in sigma {
        if a.abs() > r || b.abs() > r || !seen_targets.insert(b) {
            return Err(RaError::InvalidParameter("sigma must permute -R..=R".into()));
        }
    }
    let mut sources: Vec<i64> = sigma.keys().copied().collect();
    let mut targets: Vec<i64> = sigma.values().copied().collect();
    sources.sort_unstable();
    targets.sort_unstable();
    if sources != targets {
        return Err(RaError::InvalidParameter("sigma must permute -R..=R".into()));
    }
    let s = |n: i64| sigma.get(&n).copied().unwrap_or(n);
    let zl = |k: i64| -> Vec<Letter> { (0..k.unsigned_abs()).map(|_| Letter::new(z, k < 0)).collect() };

    let mut map = BTreeMap::new();
    for v in 0..ball.order() {
        let (g, n) = split_central(ball, ball.element(v), z);
        let image = ball.group.mul(&g, &ball.group.normal_form(&zl(s(n))));
        if let Some(u) = ball.vertex_of(&image) {
            map.insert(v, u);
        }
    }

    let dist = syllable_distances(ball);
    let cx = &ball.complex;
    let mut report = ShuffleReport {
        apex: gamma.name(z).to_string(),
        domain: map.len(),
        pairs_checked: 0,
        syllable_violations: Vec::new(),
        word_metric_witness: None,
        extension_identity: true,
        map: map.clone(),
    };
    let items: Vec<(VertexId, VertexId)> = map.iter().map(|(&a, &b)| (a, b)).collect();
    for (i, &(u, fu)) in items.iter().enumerate() {
        for &(v, fv) in &items[i + 1..] {
            // A syllable path of length ≤ 2 either is a single syllable,
            // which never leaves the ball, or passes through one corner;
            // in the diamond-shaped balls used here one of the two corners
            // is always inside. So truncated distances ≤ 2 are exact.
            let (d0, d1) = (dist[u][v], dist[fu][fv]);
            if d0.min(d1) <= 2 {
                report.pairs_checked += 1;
                if d0 != d1 {
                    report.syllable_violations.push(format!("d_r({}, {}) = {d0} but d_r of images = {d1}", cx.name(u), cx.name(v)));
                }
            }
        }
    }
    'outer: for &(u, fu) in &items {
        for &(v, fv) in &items {
            if cx.distance(u, v) != cx.distance(fu, fv) {
                report.word_metric_witness = Some((cx.name(u).into(), cx.name(v).into(), cx.distance(u, v), cx.distance(fu, fv)));
                break 'outer;
            }
        }
    }
    for &(u, v) in cx.edges() {
        let (Some(&fu), Some(&fv)) = (map.get(&u), map.get(&v)) else { continue };
        let gen = ball.labels[cx.edge_hyperplane(cx.edge_id(u, v))];
        let step = ball.group.mul(&ball.group.inverse(ball.element(fu)), ball.element(fv));
        let single = ball.group.normal_form(step.letters()).syllables(gamma);
        if single.len() != 1 || single[0].0 != gen {
            report.extension_identity = false;
            continue;
        }
        if class_key(&ball.group, ball.element(u), gen) != class_key(&ball.group, ball.element(fu), gen) {
            report.extension_identity = false;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra::DefiningGraph;

    fn z2(r: usize) -> Ball {
        Ball::build(DefiningGraph::builtin("K2").unwrap(), GroupKind::Artin, r, 10_000).unwrap()
    }

    #[test]
    fn distances() {
        let b = z2(3);
        let v = |w: &str| b.parse_vertex(w).unwrap();
        assert_eq!(syllable_distance(&b, v("1"), v("1")).unwrap(), 0);
        assert_eq!(syllable_distance(&b, v("1"), v("x^2")).unwrap(), 1);
        assert_eq!(syllable_distance(&b, v("x"), v("y^2")).unwrap(), 2);
    }

    #[test]
    fn shuffles() {
        let b = z2(3);
        let id = syllable_shuffle(&b, Some(1), &BTreeMap::new()).unwrap();
        assert!(id.map.iter().all(|(a, b)| a == b));
        assert!(id.word_metric_witness.is_none());
        let swap: BTreeMap<i64, i64> = [(1, 2), (2, 1)].into_iter().collect();
        let r = syllable_shuffle(&b, Some(1), &swap).unwrap();
        assert!(r.syllable_violations.is_empty(), "{:?}", r.syllable_violations);
        assert!(r.extension_identity);
        let (u, v, d0, d1) = r.word_metric_witness.unwrap();
        assert_eq!((u.as_str(), v.as_str(), d0, d1), ("1", "y", 1, 2));

        let c4 = Ball::build(DefiningGraph::builtin("C4").unwrap(), GroupKind::Artin, 2, 10_000).unwrap();
        assert!(matches!(syllable_shuffle(&c4, None, &BTreeMap::new()), Err(RaError::NotACone)));
    }
}
