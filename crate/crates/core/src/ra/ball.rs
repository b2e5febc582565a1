//! Balls around the identity in the Cayley graph of a right-angled group,
//! completed to a median graph.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::gamma::{DefiningGraph, Generator};
use super::word::{alphabet, Group, GroupKind, Letter, NormalForm};
use super::RaError;
use crate::automorphism::PartialMap;
use crate::median::{CubeComplex, HyperplaneId, VertexId};

/// A finite convex piece of `X_Γ` (Artin) or `Y_Γ` (Coxeter) containing
/// the word-metric ball of the given radius.
///
/// The word ball alone is median when `Γ` has no triangles. Otherwise three
/// pairwise-commuting letters at a vertex can leave the three square
/// corners inside the ball and the cube corner outside, so the ball is
/// closed under cube completion before validation. Completion vertices get
/// negative depth.
#[derive(Clone, Debug)]
pub struct Ball {
    pub group: Group,
    pub radius: usize,
    elements: Vec<NormalForm>,
    index: HashMap<NormalForm, VertexId>,
    pub complex: CubeComplex,
    /// Generator labelling each hyperplane.
    pub labels: Vec<Generator>,
    /// `radius - word length` for each vertex.
    pub depth: Vec<i64>,
}

impl Ball {
    pub fn build(gamma: DefiningGraph, kind: GroupKind, radius: usize, cap: usize) -> Result<Self, RaError> {
        if radius == 0 {
            return Err(RaError::InvalidParameter("radius must be at least 1".into()));
        }
        let group = Group::new(gamma, kind);
        let letters = alphabet(&group.gamma, kind);
        let mut elements = vec![NormalForm::identity()];
        let mut index = HashMap::from([(NormalForm::identity(), 0)]);
        let mut layer_start = 0;
        for len in 0..radius {
            let layer_end = elements.len();
            for i in layer_start..layer_end {
                for &l in &letters {
                    let next = group.mul_letter(&elements[i], l);
                    if next.len() == len + 1 && !index.contains_key(&next) {
                        index.insert(next.clone(), elements.len());
                        elements.push(next);
                        if elements.len() > cap {
                            return Err(RaError::SizeLimitExceeded { found: elements.len(), cap });
                        }
                    }
                }
            }
            layer_start = layer_end;
        }

        complete_cubes(&group, &letters, &mut elements, &mut index, cap)?;

        let mut edges = Vec::new();
        for (v, el) in elements.iter().enumerate() {
            for &l in letters.iter().filter(|l| !l.inverse) {
                if let Some(&u) = index.get(&group.mul_letter(el, l)) {
                    edges.push((v, u));
                }
            }
        }
        let names: Vec<String> = elements.iter().map(|e| e.display(&group.gamma)).collect();
        let complex = CubeComplex::from_indexed(names, &edges)?;

        let mut labels = vec![usize::MAX; complex.hyperplane_count()];
        for (e, &(u, v)) in complex.edges().iter().enumerate() {
            let g = edge_generator(&group, &elements[u], &elements[v]);
            let w = complex.edge_hyperplane(e);
            if labels[w] == usize::MAX {
                labels[w] = g;
            } else if labels[w] != g {
                return Err(RaError::LabelIncoherent(w));
            }
        }
        let depth = elements.iter().map(|e| radius as i64 - e.len() as i64).collect();
        Ok(Ball { group, radius, elements, index, complex, labels, depth })
    }

    pub fn gamma(&self) -> &DefiningGraph {
        &self.group.gamma
    }

    pub fn kind(&self) -> GroupKind {
        self.group.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, v: VertexId) -> &NormalForm {
        &self.elements[v]
    }

    pub fn elements(&self) -> &[NormalForm] {
        &self.elements
    }

    pub fn vertex_of(&self, g: &NormalForm) -> Option<VertexId> {
        self.index.get(g).copied()
    }

    pub fn identity_vertex(&self) -> VertexId {
        0
    }

    pub fn parse_vertex(&self, word: &str) -> Result<VertexId, RaError> {
        let g = self.group.parse(word)?;
        self.vertex_of(&g).ok_or_else(|| RaError::InvalidParameter(format!("{word:?} is not in the ball")))
    }

    /// The hyperplane dual to the edge `(v, v·l)`, if that edge is in the ball.
    pub fn hyperplane_at(&self, v: VertexId, l: Letter) -> Option<HyperplaneId> {
        let u = self.vertex_of(&self.group.mul_letter(&self.elements[v], l))?;
        Some(self.complex.edge_hyperplane(self.complex.find_edge(u, v)?))
    }

    pub fn is_interior_vertex(&self, v: VertexId, margin: usize) -> bool {
        self.depth[v] >= margin as i64
    }

    pub fn interior_vertices(&self, margin: usize) -> Vec<VertexId> {
        (0..self.order()).filter(|&v| self.is_interior_vertex(v, margin)).collect()
    }

    /// Hyperplanes adjacent to some vertex of depth at least `margin`.
    pub fn interior_hyperplanes(&self, margin: usize) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.complex.hyperplane_count());
        for v in self.interior_vertices(margin) {
            s.union_with(self.complex.hyperplanes_at(v).expect("valid vertex"));
        }
        s
    }

    /// Left multiplication by `g`, on the vertices it keeps in the ball.
    pub fn left_multiplication(&self, g: &NormalForm) -> PartialMap {
        let mut map = PartialMap::new();
        for (v, el) in self.elements.iter().enumerate() {
            if let Some(u) = self.vertex_of(&self.group.mul(g, el)) {
                map.insert(v, u);
            }
        }
        map
    }
}

fn edge_generator(group: &Group, a: &NormalForm, b: &NormalForm) -> Generator {
    let d = group.mul(&group.inverse(a), b);
    debug_assert_eq!(d.len(), 1);
    d.letters()[0].gen
}

fn complete_cubes(
    group: &Group,
    letters: &[Letter],
    elements: &mut Vec<NormalForm>,
    index: &mut HashMap<NormalForm, VertexId>,
    cap: usize,
) -> Result<(), RaError> {
    let k = letters.len();
    let mut triples = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for m in j + 1..k {
                let (a, b, c) = (letters[i], letters[j], letters[m]);
                if group.commute(a, b) && group.commute(a, c) && group.commute(b, c) {
                    triples.push([a, b, c]);
                }
            }
        }
    }
    if triples.is_empty() {
        return Ok(());
    }
    loop {
        let mut added = Vec::new();
        for p in elements.iter() {
            for t in &triples {
                let present = |w: &[Letter]| {
                    let mut x = p.clone();
                    for &l in w {
                        x = group.mul_letter(&x, l);
                    }
                    index.contains_key(&x)
                };
                if [t[0], t[1], t[2]].iter().all(|&l| present(&[l]))
                    && present(&[t[0], t[1]])
                    && present(&[t[0], t[2]])
                    && present(&[t[1], t[2]])
                {
                    let corner = group.mul_letter(&group.mul_letter(&group.mul_letter(p, t[0]), t[1]), t[2]);
                    if !index.contains_key(&corner) {
                        added.push(corner);
                    }
                }
            }
        }
        if added.is_empty() {
            return Ok(());
        }
        added.sort();
        added.dedup();
        for c in added {
            index.insert(c.clone(), elements.len());
            elements.push(c);
        }
        if elements.len() > cap {
            return Err(RaError::SizeLimitExceeded { found: elements.len(), cap });
        }
    }
}

/// Expected link of a vertex with every neighbour present: one node per
/// letter, joined when the generators commute.
pub fn expected_link(group: &Group) -> crate::graph::Graph {
    let letters = alphabet(&group.gamma, group.kind);
    let mut g = crate::graph::Graph::new(letters.len());
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if group.commute(letters[i], letters[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(name: &str, kind: GroupKind, r: usize) -> Ball {
        Ball::build(DefiningGraph::builtin(name).unwrap(), kind, r, 10_000).unwrap()
    }

    #[test]
    fn small_balls() {
        let b = ball("K1", GroupKind::Coxeter, 1);
        assert_eq!((b.order(), b.complex.edges().len()), (2, 1));
        // lattice points with |x| + |y| <= 2
        let oracle = (-2i32..=2).flat_map(|x| (-2i32..=2).map(move |y| (x, y))).filter(|(x, y)| x.abs() + y.abs() <= 2).count();
        let z2 = ball("K2", GroupKind::Artin, 2);
        assert_eq!(z2.order(), oracle);
        assert_eq!(z2.order(), 13);
        let f2 = ball("F2", GroupKind::Artin, 2);
        assert_eq!(f2.order(), 1 + 4 + 12);
    }

    #[test]
    fn labels_and_links() {
        let b = ball("C5", GroupKind::Coxeter, 3);
        let expected = expected_link(&b.group);
        for v in b.interior_vertices(2) {
            let link = b.complex.link_graph(v).unwrap();
            assert_eq!(link.nodes.len(), 5);
            assert_eq!(link.graph.edge_count(), expected.edge_count());
        }
        for (e, &(u, v)) in b.complex.edges().iter().enumerate() {
            assert_eq!(b.labels[b.complex.edge_hyperplane(e)], edge_generator(&b.group, b.element(u), b.element(v)));
        }
    }

    #[test]
    fn triangles_need_completion() {
        let b = ball("STAR_EQ5", GroupKind::Coxeter, 3);
        assert!(b.depth.iter().any(|&d| d < 0));
        let k5 = ball("K5", GroupKind::Coxeter, 2);
        // all of (Z/2)^5 once closed
        assert_eq!(k5.order(), 32);
    }
}
