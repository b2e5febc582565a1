//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting, outer
//! loop in degeneracy order).

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;

pub const DEFAULT_CLIQUE_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("more than {cap} maximal cliques")]
pub struct CliqueLimitExceeded {
    pub cap: usize,
}

/// All inclusion-maximal cliques of `g`. Each clique is sorted and the list
/// is sorted lexicographically. The empty graph has no cliques.
pub fn maximal_cliques(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>, CliqueLimitExceeded> {
    let n = g.order();
    let mut out = Vec::new();
    let order = degeneracy_order(g);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let mut p = FixedBitSet::with_capacity(n);
        let mut x = FixedBitSet::with_capacity(n);
        for u in g.neighbors(v) {
            if position[u] > position[v] {
                p.insert(u);
            } else {
                x.insert(u);
            }
        }
        let mut r = vec![v];
        expand(g, &mut r, p, x, &mut out, cap)?;
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), CliqueLimitExceeded> {
    if p.is_clear() {
        if x.is_clear() {
            if out.len() == cap {
                return Err(CliqueLimitExceeded { cap });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p.ones().chain(x.ones()).max_by_key(|&u| p.intersection(g.neighbor_set(u)).count()).expect("p is nonempty");
    let candidates: Vec<usize> = p.difference(g.neighbor_set(pivot)).collect();
    for v in candidates {
        let nv = g.neighbor_set(v);
        let mut p2 = p.clone();
        p2.intersect_with(nv);
        let mut x2 = x.clone();
        x2.intersect_with(nv);
        r.push(v);
        expand(g, r, p2, x2, out, cap)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| degree[v]).unwrap();
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    order
}

/// Size of a largest clique.
pub fn clique_number(g: &Graph) -> usize {
    maximal_cliques(g, usize::MAX).expect("uncapped").iter().map(Vec::len).max().unwrap_or(0)
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices.iter().enumerate().all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(maximal_cliques(&tri, 10).unwrap(), vec![vec![0, 1, 2]]);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(maximal_cliques(&path, 10).unwrap(), vec![vec![0, 1], vec![1, 2]]);
        let isolated = Graph::new(2);
        assert_eq!(maximal_cliques(&isolated, 10).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(maximal_cliques(&path, 1), Err(CliqueLimitExceeded { cap: 1 }));
    }

    /// Oracle: test every vertex subset.
    fn brute_force(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.order();
        let cliques: Vec<u32> = (1u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                is_clique(g, &vs)
            })
            .collect();
        let mut out: Vec<Vec<usize>> = cliques
            .iter()
            .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..10, bits in proptest::collection::vec(any::<bool>(), 45)) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            prop_assert_eq!(maximal_cliques(&g, usize::MAX).unwrap(), brute_force(&g));
        }
    }
}
