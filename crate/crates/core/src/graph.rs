//! Small undirected simple graphs over dense vertex indices.
//!
//! Adjacency is stored as one bitset row per vertex, which keeps clique
//! enumeration and neighbourhood comparisons cheap for the graph sizes this
//! crate deals with (a few thousand vertices at most).

use fixedbitset::FixedBitSet;

/// An undirected simple graph on the vertices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(order: usize) -> Self {
        Self { adj: (0..order).map(|_| FixedBitSet::with_capacity(order)).collect() }
    }

    /// Builds a graph from an edge list. Self-loops are ignored.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(order);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adj.iter().enumerate() {
            out.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// The subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// A vertex adjacent to every other vertex, if one exists.
    pub fn cone_apex(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&v| self.degree(v) + 1 == n)
    }

    /// Whether the graph is the join of some graph with a singleton. The
    /// empty graph counts as a cone over nothing.
    pub fn is_cone(&self) -> bool {
        self.order() == 0 || self.cone_apex().is_some()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen.put(v) {
                    stack.push(v);
                }
            }
        }
        seen.count_ones(..) == n
    }

    /// Closed neighbourhood of `v`.
    pub fn star(&self, v: usize) -> FixedBitSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }
}

/// Outcome of [`isomorphism`] when the search budget runs out first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudgetExceeded;

/// An isomorphism `g → h` as a vertex map, `None` when the graphs are not
/// isomorphic. Plain backtracking over vertices in BFS order, pruned by
/// degree; gives up after `budget` partial assignments.
pub fn isomorphism(g: &Graph, h: &Graph, budget: usize) -> Result<Option<Vec<usize>>, SearchBudgetExceeded> {
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let (pg, ph) = (dg.clone(), dh.clone());
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(None);
    }
    let order = bfs_order(g);
    let mut map = vec![usize::MAX; n];
    let mut used = FixedBitSet::with_capacity(n);
    let mut steps = 0;
    let found = extend(g, h, &pg, &ph, &order, 0, &mut map, &mut used, &mut steps, budget)?;
    Ok(found.then_some(map))
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen.put(root) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in g.neighbors(u) {
                if !seen.put(v) {
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    pg: &[usize],
    ph: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut FixedBitSet,
    steps: &mut usize,
    budget: usize,
) -> Result<bool, SearchBudgetExceeded> {
    let Some(&u) = order.get(depth) else { return Ok(true) };
    for x in 0..h.order() {
        if used.contains(x) || ph[x] != pg[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| g.has_edge(u, w) == h.has_edge(x, map[w]));
        if !consistent {
            continue;
        }
        *steps += 1;
        if *steps > budget {
            return Err(SearchBudgetExceeded);
        }
        map[u] = x;
        used.insert(x);
        if extend(g, h, pg, ph, order, depth + 1, map, used, steps, budget)? {
            return Ok(true);
        }
        used.set(x, false);
        map[u] = usize::MAX;
    }
    Ok(false)
}

/// `a ⊆ b` for bitsets that may have different lengths.
pub(crate) fn is_subset(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.ones().all(|i| b.contains(i))
}

pub(crate) fn bitset_from(len: usize, items: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(len);
    for i in items {
        s.insert(i);
    }
    s
}
