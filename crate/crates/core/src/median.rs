//! Finite CAT(0) cube complexes, represented by their 1-skeleta.
//!
//! A finite graph is the 1-skeleton of a CAT(0) cube complex exactly when it
//! is a median graph, so [`CubeComplex::new`] certifies the median property
//! and derives everything else (squares, hyperplanes, halfspaces, carriers,
//! links) from the graph alone.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{bitset_from, Graph};

pub type VertexId = usize;
pub type HyperplaneId = usize;

/// Default cap on the number of vertices of generated or loaded complexes.
pub const DEFAULT_VERTEX_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown hyperplane {0}")]
    UnknownHyperplane(HyperplaneId),
    #[error("graph is not connected: {unreachable:?} cannot be reached from {root:?}")]
    NotConnected { root: String, unreachable: String },
    #[error("graph is not median: triple ({}, {}, {}) has {medians} medians", .triple[0], .triple[1], .triple[2])]
    NotMedian { triple: [String; 3], medians: usize },
    #[error("graph is not median (no witness triple found): {0}")]
    NotMedianNoWitness(String),
    #[error("size limit exceeded: {found} vertices, cap is {cap}")]
    SizeLimitExceeded { found: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A hyperplane: one equivalence class of edges under square-opposite
/// parallelism, together with its two halfspaces and its carrier.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    pub id: HyperplaneId,
    /// Indices into [`CubeComplex::edges`].
    pub dual_edges: Vec<usize>,
    /// The side containing vertex 0.
    pub side_a: FixedBitSet,
    pub side_b: FixedBitSet,
    pub carrier: FixedBitSet,
}

impl Hyperplane {
    /// The side of this hyperplane containing `v`.
    pub fn side_of(&self, v: VertexId) -> &FixedBitSet {
        if self.side_a.contains(v) {
            &self.side_a
        } else {
            &self.side_b
        }
    }
}

/// The link of a vertex: hyperplanes adjacent to it, joined when they span a
/// square at that vertex.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub base: VertexId,
    /// Hyperplane ids, sorted; node `i` of `graph` is `nodes[i]`.
    pub nodes: Vec<HyperplaneId>,
    pub graph: Graph,
}

impl LinkGraph {
    pub fn is_cone(&self) -> bool {
        self.graph.is_cone()
    }

    /// A hyperplane transverse to every other hyperplane at the base vertex.
    pub fn apex(&self) -> Option<HyperplaneId> {
        self.graph.cone_apex().map(|i| self.nodes[i])
    }
}

/// A validated finite median graph together with its cubical data.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    graph: Graph,
    edges: Vec<(VertexId, VertexId)>,
    edge_index: HashMap<(VertexId, VertexId), usize>,
    dist: Vec<u16>,
    squares: Vec<[VertexId; 4]>,
    squares_at: Vec<Vec<usize>>,
    hyperplanes: Vec<Hyperplane>,
    edge_hyperplane: Vec<HyperplaneId>,
    adjacent_hyperplanes: Vec<FixedBitSet>,
    transverse: Vec<FixedBitSet>,
    dimension: usize,
}

impl CubeComplex {
    /// Validates a named graph. Edges may be listed in either orientation;
    /// repeated edges are merged.
    pub fn new(names: Vec<String>, edges: &[(String, String)]) -> Result<Self, ComplexError> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(name.clone()));
            }
        }
        let mut indexed = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = *index.get(a).ok_or_else(|| ComplexError::UnknownVertex(a.clone()))?;
            let v = *index.get(b).ok_or_else(|| ComplexError::UnknownVertex(b.clone()))?;
            indexed.push((u, v));
        }
        Self::from_indexed(names, &indexed)
    }

    /// Validates a graph given by vertex names and index pairs.
    pub fn from_indexed(names: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self, ComplexError> {
        let n = names.len();
        if n == 0 {
            return Err(ComplexError::Empty);
        }
        if n > u16::MAX as usize {
            return Err(ComplexError::SizeLimitExceeded { found: n, cap: u16::MAX as usize });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(name.clone()));
            }
        }
        let mut graph = Graph::new(n);
        let mut normalized = Vec::new();
        let mut edge_index = HashMap::new();
        for &(a, b) in edges {
            if a >= n {
                return Err(ComplexError::UnknownVertex(a.to_string()));
            }
            if b >= n {
                return Err(ComplexError::UnknownVertex(b.to_string()));
            }
            if a == b {
                return Err(ComplexError::SelfLoop(names[a].clone()));
            }
            let key = (a.min(b), a.max(b));
            if let std::collections::hash_map::Entry::Vacant(e) = edge_index.entry(key) {
                e.insert(normalized.len());
                normalized.push(key);
                graph.add_edge(a, b);
            }
        }

        let mut cx = CubeComplex {
            names,
            index,
            graph,
            edges: normalized,
            edge_index,
            dist: Vec::new(),
            squares: Vec::new(),
            squares_at: Vec::new(),
            hyperplanes: Vec::new(),
            edge_hyperplane: Vec::new(),
            adjacent_hyperplanes: Vec::new(),
            transverse: Vec::new(),
            dimension: 0,
        };
        cx.check_connected()?;
        cx.compute_distances();
        cx.check_triangle_free()?;
        cx.compute_squares()?;
        cx.compute_hyperplanes()?;
        cx.check_isometric_embedding()?;
        cx.check_majority_closed()?;
        cx.compute_transversality();
        cx.dimension = (0..n).map(|v| cx.link_clique_number(v)).max().unwrap_or(0);
        Ok(cx)
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let d = bfs(&self.graph, 0);
        if let Some(v) = d.iter().position(|&x| x == u16::MAX) {
            return Err(ComplexError::NotConnected { root: self.names[0].clone(), unreachable: self.names[v].clone() });
        }
        Ok(())
    }

    fn compute_distances(&mut self) {
        let n = self.order();
        let mut dist = Vec::with_capacity(n * n);
        for v in 0..n {
            dist.extend(bfs(&self.graph, v));
        }
        self.dist = dist;
    }

    fn check_triangle_free(&self) -> Result<(), ComplexError> {
        for &(u, v) in &self.edges {
            let mut common = self.graph.neighbor_set(u).clone();
            common.intersect_with(self.graph.neighbor_set(v));
            if let Some(w) = common.ones().next() {
                return Err(self.not_median([u, v, w]));
            }
        }
        Ok(())
    }

    fn compute_squares(&mut self) -> Result<(), ComplexError> {
        let n = self.order();
        let mut squares = Vec::new();
        for v in 0..n {
            let nbrs: Vec<usize> = self.graph.neighbors(v).filter(|&a| a > v).collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    let mut common = self.graph.neighbor_set(a).clone();
                    common.intersect_with(self.graph.neighbor_set(b));
                    for x in common.ones().filter(|&x| x > v) {
                        if self.graph.has_edge(v, x) || self.graph.has_edge(a, b) {
                            return Err(self.not_median([v, a, x]));
                        }
                        squares.push([v, a, x, b]);
                    }
                }
            }
        }
        let mut squares_at = vec![Vec::new(); n];
        for (i, sq) in squares.iter().enumerate() {
            for &v in sq {
                squares_at[v].push(i);
            }
        }
        self.squares = squares;
        self.squares_at = squares_at;
        Ok(())
    }

    fn compute_hyperplanes(&mut self) -> Result<(), ComplexError> {
        let m = self.edges.len();
        let n = self.order();
        let mut uf = UnionFind::new(m);
        for sq in &self.squares {
            let [v, a, x, b] = *sq;
            uf.union(self.edge_id(v, a), self.edge_id(b, x));
            uf.union(self.edge_id(v, b), self.edge_id(a, x));
        }
        // Classes are numbered by their first edge in input order.
        let mut class_of_root = HashMap::new();
        let mut edge_hyperplane = vec![0; m];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (e, slot) in edge_hyperplane.iter_mut().enumerate() {
            let r = uf.find(e);
            let id = *class_of_root.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[id].push(e);
            *slot = id;
        }

        let mut hyperplanes = Vec::with_capacity(classes.len());
        for (id, dual_edges) in classes.into_iter().enumerate() {
            let removed: HashSet<usize> = dual_edges.iter().copied().collect();
            let side_a = self.component_avoiding(0, &removed);
            let side_b = {
                let mut s = side_a.clone();
                s.toggle_range(..);
                s
            };
            let mut carrier = FixedBitSet::with_capacity(n);
            for &e in &dual_edges {
                let (u, v) = self.edges[e];
                if side_a.contains(u) == side_a.contains(v) {
                    return Err(self.median_failure());
                }
                carrier.insert(u);
                carrier.insert(v);
            }
            let b_root = match side_b.ones().next() {
                Some(r) => r,
                None => return Err(self.median_failure()),
            };
            if self.component_avoiding(b_root, &removed) != side_b {
                return Err(self.median_failure());
            }
            hyperplanes.push(Hyperplane { id, dual_edges, side_a, side_b, carrier });
        }

        let mut adjacent = vec![FixedBitSet::with_capacity(hyperplanes.len()); n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adjacent[u].insert(edge_hyperplane[e]);
            adjacent[v].insert(edge_hyperplane[e]);
        }
        self.hyperplanes = hyperplanes;
        self.edge_hyperplane = edge_hyperplane;
        self.adjacent_hyperplanes = adjacent;
        Ok(())
    }

    fn component_avoiding(&self, root: VertexId, removed: &HashSet<usize>) -> FixedBitSet {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(root);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for v in self.graph.neighbors(u) {
                if removed.contains(&self.edge_id(u, v)) {
                    continue;
                }
                if !seen.put(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Bit `i` of the sign vector of `v` is set when `v` lies on side B of
    /// hyperplane `i`.
    fn sign_vectors(&self) -> Vec<FixedBitSet> {
        let h = self.hyperplanes.len();
        let mut signs = vec![FixedBitSet::with_capacity(h); self.order()];
        for hp in &self.hyperplanes {
            for v in hp.side_b.ones() {
                signs[v].insert(hp.id);
            }
        }
        signs
    }

    fn check_isometric_embedding(&self) -> Result<(), ComplexError> {
        let signs = self.sign_vectors();
        let n = self.order();
        for u in 0..n {
            for v in u + 1..n {
                let sep = signs[u].symmetric_difference(&signs[v]).count();
                if sep != self.distance(u, v) {
                    return Err(self.median_failure());
                }
            }
        }
        Ok(())
    }

    /// In a partial cube the only possible median of a triple is its
    /// coordinatewise majority, so the graph is median iff the vertex sign
    /// vectors are closed under majority.
    fn check_majority_closed(&self) -> Result<(), ComplexError> {
        let signs = self.sign_vectors();
        let n = self.order();
        let words: Vec<Vec<u64>> = signs.iter().map(to_words).collect();
        let lookup: HashSet<&[u64]> = words.iter().map(|w| w.as_slice()).collect();
        let threads = std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1).min(16);
        let next = std::sync::atomic::AtomicUsize::new(0);
        let failure = std::sync::Mutex::new(None::<[usize; 3]>);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| {
                    let mut maj = vec![0u64; words.first().map_or(0, |w| w.len())];
                    loop {
                        let a = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if a >= n || failure.lock().unwrap().is_some() {
                            break;
                        }
                        for b in a + 1..n {
                            for c in b + 1..n {
                                let (wa, wb, wc) = (&words[a], &words[b], &words[c]);
                                for k in 0..maj.len() {
                                    maj[k] = (wa[k] & wb[k]) | (wb[k] & wc[k]) | (wa[k] & wc[k]);
                                }
                                if maj == *wa || maj == *wb || maj == *wc {
                                    continue;
                                }
                                if !lookup.contains(maj.as_slice()) {
                                    *failure.lock().unwrap() = Some([a, b, c]);
                                    return;
                                }
                            }
                        }
                    }
                });
            }
        });
        match failure.into_inner().unwrap() {
            Some(t) => Err(self.not_median(t)),
            None => Ok(()),
        }
    }

    fn compute_transversality(&mut self) {
        let h = self.hyperplanes.len();
        let mut transverse = vec![FixedBitSet::with_capacity(h); h];
        for i in 0..h {
            for j in i + 1..h {
                let (p, q) = (&self.hyperplanes[i], &self.hyperplanes[j]);
                let crosses = !p.side_a.is_disjoint(&q.side_a)
                    && !p.side_a.is_disjoint(&q.side_b)
                    && !p.side_b.is_disjoint(&q.side_a)
                    && !p.side_b.is_disjoint(&q.side_b);
                if crosses {
                    transverse[i].insert(j);
                    transverse[j].insert(i);
                }
            }
        }
        self.transverse = transverse;
    }

    fn link_clique_number(&self, v: VertexId) -> usize {
        let link = self.link_graph_unchecked(v);
        crate::cliques::clique_number(&link.graph)
    }

    /// Number of medians of a triple, counted by brute force on distances.
    pub fn count_medians(&self, a: VertexId, b: VertexId, c: VertexId) -> usize {
        (0..self.order())
            .filter(|&m| {
                self.distance(a, m) + self.distance(m, b) == self.distance(a, b)
                    && self.distance(b, m) + self.distance(m, c) == self.distance(b, c)
                    && self.distance(a, m) + self.distance(m, c) == self.distance(a, c)
            })
            .count()
    }

    fn not_median(&self, t: [usize; 3]) -> ComplexError {
        ComplexError::NotMedian { triple: t.map(|v| self.names[v].clone()), medians: self.count_medians(t[0], t[1], t[2]) }
    }

    /// Structural failure without a ready witness: search all triples.
    fn median_failure(&self) -> ComplexError {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.count_medians(a, b, c) != 1 {
                        return self.not_median([a, b, c]);
                    }
                }
            }
        }
        ComplexError::NotMedianNoWitness("hyperplane structure is inconsistent".into())
    }

    // ---- accessors ----

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, ComplexError> {
        self.index.get(name).copied().ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> usize {
        self.edge_index[&(u.min(v), u.max(v))]
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> usize {
        self.dist[u * self.order() + v] as usize
    }

    /// Squares as 4-cycles `[v, a, x, b]` (v adjacent to a and b, x opposite v).
    pub fn squares(&self) -> &[[VertexId; 4]] {
        &self.squares
    }

    pub fn squares_at(&self, v: VertexId) -> impl Iterator<Item = &[VertexId; 4]> {
        self.squares_at[v].iter().map(move |&i| &self.squares[i])
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, w: HyperplaneId) -> Result<&Hyperplane, ComplexError> {
        self.hyperplanes.get(w).ok_or(ComplexError::UnknownHyperplane(w))
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn edge_hyperplane(&self, e: usize) -> HyperplaneId {
        self.edge_hyperplane[e]
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), ComplexError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(ComplexError::UnknownVertex(v.to_string()))
        }
    }

    /// The set of hyperplanes adjacent to `v` (bitset over hyperplane ids).
    pub fn hyperplanes_at(&self, v: VertexId) -> Result<&FixedBitSet, ComplexError> {
        self.check_vertex(v)?;
        Ok(&self.adjacent_hyperplanes[v])
    }

    /// Hyperplanes with all of `a` on one side and all of `b` on the other.
    pub fn separating(&self, a: &[VertexId], b: &[VertexId]) -> Result<Vec<HyperplaneId>, ComplexError> {
        for &v in a.iter().chain(b) {
            self.check_vertex(v)?;
        }
        if a.is_empty() || b.is_empty() {
            return Err(ComplexError::InvalidParameter("separating needs nonempty vertex sets".into()));
        }
        Ok(self
            .hyperplanes
            .iter()
            .filter(|h| {
                let a_in_a = a.iter().all(|&v| h.side_a.contains(v));
                let a_in_b = a.iter().all(|&v| h.side_b.contains(v));
                let b_in_a = b.iter().all(|&v| h.side_a.contains(v));
                let b_in_b = b.iter().all(|&v| h.side_b.contains(v));
                (a_in_a && b_in_b) || (a_in_b && b_in_a)
            })
            .map(|h| h.id)
            .collect())
    }

    pub fn link_graph(&self, v: VertexId) -> Result<LinkGraph, ComplexError> {
        self.check_vertex(v)?;
        Ok(self.link_graph_unchecked(v))
    }

    fn link_graph_unchecked(&self, v: VertexId) -> LinkGraph {
        let nodes: Vec<HyperplaneId> = self.adjacent_hyperplanes[v].ones().collect();
        let pos: HashMap<HyperplaneId, usize> = nodes.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut graph = Graph::new(nodes.len());
        for sq in self.squares_at(v) {
            let k = sq.iter().position(|&x| x == v).unwrap();
            let (p, q) = (sq[(k + 1) % 4], sq[(k + 3) % 4]);
            let hp = self.edge_hyperplane[self.edge_id(v, p)];
            let hq = self.edge_hyperplane[self.edge_id(v, q)];
            graph.add_edge(pos[&hp], pos[&hq]);
        }
        LinkGraph { base: v, nodes, graph }
    }

    /// Whether `v` is extremal, i.e. its link is a cone.
    pub fn is_extremal(&self, v: VertexId) -> bool {
        self.link_graph_unchecked(v).is_cone()
    }

    /// Four-quadrant transversality.
    pub fn transverse(&self, u: HyperplaneId, w: HyperplaneId) -> bool {
        self.transverse[u].contains(w)
    }

    pub fn transverse_set(&self, u: HyperplaneId) -> &FixedBitSet {
        &self.transverse[u]
    }

    /// Whether some square has one edge dual to `u` and one dual to `w`.
    pub fn share_square(&self, u: HyperplaneId, w: HyperplaneId) -> bool {
        self.squares.iter().any(|&[v, a, x, _]| {
            let h1 = self.edge_hyperplane[self.edge_id(v, a)];
            let h2 = self.edge_hyperplane[self.edge_id(a, x)];
            (h1 == u && h2 == w) || (h1 == w && h2 == u)
        })
    }

    /// The cubical structure induced on a hyperplane: one vertex per dual
    /// edge, joined when the two edges are opposite in a square.
    pub fn hyperplane_complex(&self, w: HyperplaneId) -> Result<CubeComplex, ComplexError> {
        let hp = self.hyperplane(w)?;
        let pos: HashMap<usize, usize> = hp.dual_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let names: Vec<String> = hp
            .dual_edges
            .iter()
            .map(|&e| {
                let (u, v) = self.edges[e];
                format!("{}|{}", self.names[u], self.names[v])
            })
            .collect();
        let mut edges = Vec::new();
        for &[v, a, x, b] in &self.squares {
            for (e1, e2) in [((v, a), (b, x)), ((v, b), (a, x))] {
                let (i, j) = (self.edge_id(e1.0, e1.1), self.edge_id(e2.0, e2.1));
                if let (Some(&p), Some(&q)) = (pos.get(&i), pos.get(&j)) {
                    edges.push((p, q));
                }
            }
        }
        CubeComplex::from_indexed(names, &edges)
    }

    /// The carrier vertex of hyperplane `w` incident to `v`'s dual edge, i.e.
    /// the dual edge of `w` at `v`, if `v` is in the carrier.
    pub fn dual_edge_at(&self, w: HyperplaneId, v: VertexId) -> Option<usize> {
        self.graph.neighbors(v).map(|u| self.edge_id(v, u)).find(|&e| self.edge_hyperplane[e] == w)
    }

    /// The neighbour of `v` across hyperplane `w`.
    pub fn across(&self, w: HyperplaneId, v: VertexId) -> Option<VertexId> {
        self.dual_edge_at(w, v).map(|e| {
            let (a, b) = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    /// Exhaustive geodesic-convexity check. Returns a witness `(a, b, x)`
    /// with `a, b` in the set and `x` outside it on a geodesic from `a` to `b`.
    pub fn convexity_violation(&self, set: &FixedBitSet) -> Option<(VertexId, VertexId, VertexId)> {
        let members: Vec<usize> = set.ones().collect();
        let outside: Vec<usize> = (0..self.order()).filter(|&v| !set.contains(v)).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let dab = self.distance(a, b);
                if let Some(&x) = outside.iter().find(|&&x| self.distance(a, x) + self.distance(x, b) == dab) {
                    return Some((a, b, x));
                }
            }
        }
        None
    }

    pub fn vertex_set(&self, items: impl IntoIterator<Item = VertexId>) -> FixedBitSet {
        bitset_from(self.order(), items)
    }
}

fn bfs(g: &Graph, root: usize) -> Vec<u16> {
    let mut d = vec![u16::MAX; g.order()];
    d[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if d[v] == u16::MAX {
                d[v] = d[u] + 1;
                queue.push_back(v);
            }
        }
    }
    d
}

fn to_words(s: &FixedBitSet) -> Vec<u64> {
    let len = s.len().div_ceil(64);
    let mut out = vec![0u64; len];
    for i in s.ones() {
        out[i / 64] |= 1 << (i % 64);
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Median closure of a set of 0/1-vectors of length `dim`, made connected
/// inside the hypercube.
///
/// A median-closed subset of a hypercube can be disconnected (two antipodal
/// corners of a square, say), so after closing we repeatedly add one
/// hypercube step from a closest pair of components and close again.
pub fn median_closure(dim: usize, seeds: &[u32], cap: usize) -> Result<Vec<u32>, ComplexError> {
    if !(1..=12).contains(&dim) {
        return Err(ComplexError::InvalidParameter(format!("ambient dimension {dim} not in 1..=12")));
    }
    if seeds.is_empty() {
        return Err(ComplexError::InvalidParameter("need at least one seed vector".into()));
    }
    let mask = (1u32 << dim) - 1;
    let mut set: Vec<u32> = seeds.iter().map(|s| s & mask).collect();
    set.sort_unstable();
    set.dedup();
    loop {
        close_under_majority(&mut set, cap)?;
        let comps = hypercube_components(&set);
        if comps.len() == 1 {
            return Ok(set);
        }
        let mut best = (u32::MAX, 0, 0);
        for &p in &comps[0] {
            for comp in &comps[1..] {
                for &q in comp {
                    let d = (p ^ q).count_ones();
                    if d < best.0 {
                        best = (d, p, q);
                    }
                }
            }
        }
        let (_, p, q) = best;
        let bit = (p ^ q).trailing_zeros();
        set.push(p ^ (1 << bit));
        set.sort_unstable();
        set.dedup();
        if set.len() > cap {
            return Err(ComplexError::SizeLimitExceeded { found: set.len(), cap });
        }
    }
}

fn close_under_majority(set: &mut Vec<u32>, cap: usize) -> Result<(), ComplexError> {
    let mut members: HashSet<u32> = set.iter().copied().collect();
    loop {
        let current: Vec<u32> = {
            let mut v: Vec<u32> = members.iter().copied().collect();
            v.sort_unstable();
            v
        };
        let mut added = false;
        for (i, &a) in current.iter().enumerate() {
            for (j, &b) in current.iter().enumerate().skip(i + 1) {
                for &c in &current[j + 1..] {
                    let m = (a & b) | (b & c) | (a & c);
                    if members.insert(m) {
                        added = true;
                        if members.len() > cap {
                            return Err(ComplexError::SizeLimitExceeded { found: members.len(), cap });
                        }
                    }
                }
            }
        }
        if !added {
            *set = current;
            return Ok(());
        }
    }
}

fn hypercube_components(set: &[u32]) -> Vec<Vec<u32>> {
    let members: HashSet<u32> = set.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut comps = Vec::new();
    for &root in set {
        if !seen.insert(root) {
            continue;
        }
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for bit in 0..32 {
                let v = u ^ (1 << bit);
                if members.contains(&v) && seen.insert(v) {
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Induced subgraph of the `dim`-cube on the given vectors; vertex names are
/// the binary strings of the vectors, most significant coordinate first.
pub fn hypercube_subgraph(dim: usize, vectors: &[u32]) -> Result<CubeComplex, ComplexError> {
    let mut vs = vectors.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let pos: HashMap<u32, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let names = vs.iter().map(|&v| format!("{:0width$b}", v, width = dim)).collect();
    let mut edges = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        for bit in 0..dim {
            let u = v ^ (1 << bit);
            if let Some(&j) = pos.get(&u) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    CubeComplex::from_indexed(names, &edges)
}

/// Median graph from explicit seed vectors.
pub fn median_complex_from_seeds(dim: usize, seeds: &[u32], cap: usize) -> Result<CubeComplex, ComplexError> {
    let closed = median_closure(dim, seeds, cap)?;
    hypercube_subgraph(dim, &closed)
}

/// Random median graph: `seed_count` random vectors in the `dim`-cube,
/// closed as in [`median_closure`]. Deterministic in `rng_seed`.
pub fn random_median_complex(dim: usize, seed_count: usize, rng_seed: u64, cap: usize) -> Result<CubeComplex, ComplexError> {
    if seed_count == 0 {
        return Err(ComplexError::InvalidParameter("seed count must be at least 1".into()));
    }
    if !(1..=12).contains(&dim) {
        return Err(ComplexError::InvalidParameter(format!("ambient dimension {dim} not in 1..=12")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seeds: Vec<u32> = (0..seed_count).map(|_| rng.gen_range(0..(1u32 << dim))).collect();
    median_complex_from_seeds(dim, &seeds, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn square_and_cube_validate() {
        let sq = builtins::complex("SQUARE").unwrap();
        assert_eq!(sq.order(), 4);
        assert_eq!(sq.squares().len(), 1);
        assert_eq!(sq.dimension(), 2);
        let q3 = builtins::complex("Q3").unwrap();
        assert_eq!(q3.order(), 8);
        assert_eq!(q3.squares().len(), 6);
        assert_eq!(q3.dimension(), 3);
    }

    #[test]
    fn triangle_is_not_median() {
        let names = vec!["a".to_string(), "b".into(), "c".into()];
        let err = CubeComplex::from_indexed(names, &[(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert!(matches!(err, ComplexError::NotMedian { medians: 0, .. }), "{err:?}");
    }

    #[test]
    fn k23_and_cycles_are_not_median() {
        // K_{2,3}: the three degree-2 vertices have two medians.
        let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let err = CubeComplex::from_indexed(names, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap_err();
        assert!(matches!(err, ComplexError::NotMedian { medians: 2, .. }), "{err:?}");
        // 6-cycle: antipodal-ish triple has no median.
        let names: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let err = CubeComplex::from_indexed(names, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap_err();
        assert!(matches!(err, ComplexError::NotMedian { medians: 0, .. }), "{err:?}");
    }

    #[test]
    fn disconnected_rejected() {
        let names = vec!["a".to_string(), "b".into()];
        assert!(matches!(CubeComplex::from_indexed(names, &[]), Err(ComplexError::NotConnected { .. })));
    }

    #[test]
    fn hyperplane_counts() {
        let sq = builtins::complex("SQUARE").unwrap();
        assert_eq!(sq.hyperplane_count(), 2);
        for h in sq.hyperplanes() {
            assert_eq!(h.dual_edges.len(), 2);
            assert_eq!(h.carrier.count_ones(..), 4);
        }
        let p3 = builtins::complex("PATH3").unwrap();
        assert_eq!(p3.hyperplane_count(), 3);
        assert!(p3.hyperplanes().iter().all(|h| h.dual_edges.len() == 1));
        let q3 = builtins::complex("Q3").unwrap();
        assert_eq!(q3.hyperplane_count(), 3);
        assert!(q3.hyperplanes().iter().all(|h| h.dual_edges.len() == 4));
    }

    #[test]
    fn hyperplanes_at_vertices() {
        let sq = builtins::complex("SQUARE").unwrap();
        for v in 0..4 {
            assert_eq!(sq.hyperplanes_at(v).unwrap().count_ones(..), 2);
        }
        let tri = builtins::complex("TRIPOD").unwrap();
        let c = tri.vertex("c").unwrap();
        assert_eq!(tri.hyperplanes_at(c).unwrap().count_ones(..), 3);
        assert_eq!(tri.hyperplanes_at(tri.vertex("l1").unwrap()).unwrap().count_ones(..), 1);
        assert!(matches!(tri.hyperplanes_at(99), Err(ComplexError::UnknownVertex(_))));
    }

    #[test]
    fn domino_middle_sees_all_three() {
        // Brute force: a hyperplane is adjacent to v iff some edge at v is
        // in its class; the domino has 3 classes and the middle-bottom
        // vertex has edges in each.
        let d = builtins::complex("DOMINO").unwrap();
        let mid = d.vertex("1,0").unwrap();
        assert_eq!(d.hyperplane_count(), 3);
        assert_eq!(d.hyperplanes_at(mid).unwrap().count_ones(..), 3);
    }

    #[test]
    fn separating_sets() {
        let sq = builtins::complex("SQUARE").unwrap();
        let (a, c) = (sq.vertex("00").unwrap(), sq.vertex("11").unwrap());
        assert_eq!(sq.separating(&[a], &[c]).unwrap().len(), 2);
        assert!(sq.separating(&[a], &[a]).unwrap().is_empty());

        let d = builtins::complex("DOMINO").unwrap();
        let left = [d.vertex("0,0").unwrap(), d.vertex("0,1").unwrap()];
        let right = [d.vertex("2,0").unwrap(), d.vertex("2,1").unwrap()];
        let sep = d.separating(&left, &right).unwrap();
        assert_eq!(sep.len(), 2);
        for w in sep {
            // vertical hyperplanes are dual to horizontal edges
            let (u, v) = d.edges()[d.hyperplanes()[w].dual_edges[0]];
            assert_ne!(d.name(u).split(',').next(), d.name(v).split(',').next());
        }
    }

    #[test]
    fn links() {
        let sq = builtins::complex("SQUARE").unwrap();
        let l = sq.link_graph(0).unwrap();
        assert_eq!((l.nodes.len(), l.graph.edge_count()), (2, 1));
        let tri = builtins::complex("TRIPOD").unwrap();
        let l = tri.link_graph(tri.vertex("c").unwrap()).unwrap();
        assert_eq!((l.nodes.len(), l.graph.edge_count()), (3, 0));
        assert!(!l.is_cone());
        let q3 = builtins::complex("Q3").unwrap();
        let l = q3.link_graph(0).unwrap();
        assert_eq!((l.nodes.len(), l.graph.edge_count()), (3, 3));
    }

    #[test]
    fn hyperplane_complexes() {
        let sq = builtins::complex("SQUARE").unwrap();
        let h = sq.hyperplane_complex(0).unwrap();
        assert_eq!((h.order(), h.edges().len()), (2, 1));
        let p3 = builtins::complex("PATH3").unwrap();
        assert_eq!(p3.hyperplane_complex(1).unwrap().order(), 1);
        let q3 = builtins::complex("Q3").unwrap();
        let h = q3.hyperplane_complex(2).unwrap();
        assert_eq!((h.order(), h.edges().len(), h.squares().len()), (4, 4, 1));
        assert!(matches!(q3.hyperplane_complex(7), Err(ComplexError::UnknownHyperplane(7))));
    }

    #[test]
    fn generator_examples() {
        let e = median_complex_from_seeds(1, &[0, 1], DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((e.order(), e.edges().len()), (2, 1));
        let q3 = median_complex_from_seeds(3, &(0..8).collect::<Vec<_>>(), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((q3.order(), q3.squares().len()), (8, 6));
        // antipodal square corners close to a disconnected set; the
        // generator must connect them.
        let c = median_complex_from_seeds(2, &[0b00, 0b11], DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(c.order(), 3);
        let r = random_median_complex(6, 5, 42, DEFAULT_VERTEX_CAP).unwrap();
        let again = random_median_complex(6, 5, 42, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.names(), again.names());
        assert!(r.order() >= 1);
        assert!(matches!(random_median_complex(13, 5, 1, 10), Err(ComplexError::InvalidParameter(_))));
        assert!(matches!(median_complex_from_seeds(10, &[0, 1023], 4), Err(ComplexError::SizeLimitExceeded { .. })));
    }
}
