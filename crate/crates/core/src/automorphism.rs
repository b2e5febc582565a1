//! Certified graph automorphisms and partial vertex maps.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomorphismError {
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("hyperplane not preserved: {0}")]
    HyperplaneNotPreserved(String),
}

/// A permutation of `0..n` checked to preserve adjacency and non-adjacency
/// of the graph it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphAutomorphism {
    perm: Vec<usize>,
}

/// A partially defined vertex map, kept in key order.
pub type PartialMap = BTreeMap<usize, usize>;

impl GraphAutomorphism {
    pub fn new(g: &Graph, perm: Vec<usize>) -> Result<Self, AutomorphismError> {
        let a = Self::permutation_only(perm)?;
        if a.perm.len() != g.order() {
            return Err(AutomorphismError::NotAnAutomorphism(format!(
                "permutation has length {}, graph has order {}",
                a.perm.len(),
                g.order()
            )));
        }
        a.check_preserves(g)?;
        Ok(a)
    }

    /// A bijection of `0..n` with no graph attached.
    pub fn permutation_only(perm: Vec<usize>) -> Result<Self, AutomorphismError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(AutomorphismError::NotAnAutomorphism(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        Self { perm }
    }

    pub fn check_preserves(&self, g: &Graph) -> Result<(), AutomorphismError> {
        if self.perm.len() != g.order() {
            return Err(AutomorphismError::NotAnAutomorphism("size mismatch".into()));
        }
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) != g.has_edge(self.perm[u], self.perm[v]) {
                    return Err(AutomorphismError::NotAnAutomorphism(format!(
                        "pair ({u}, {v}) maps to ({}, {}) with different adjacency",
                        self.perm[u], self.perm[v]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { perm: other.perm.iter().map(|&v| self.perm[v]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        Self { perm: inv }
    }

    pub fn order(&self) -> usize {
        let mut acc = 1usize;
        let mut seen = vec![false; self.perm.len()];
        for start in 0..self.perm.len() {
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.perm[v];
                len += 1;
            }
            if len > 0 {
                acc = lcm(acc, len);
            }
        }
        acc
    }

    pub fn moved(&self) -> Vec<usize> {
        (0..self.perm.len()).filter(|&i| self.perm[i] != i).collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Checks that a partial map is injective and preserves adjacency and
/// non-adjacency between any two points of its domain.
pub fn check_partial_isomorphism(g: &Graph, map: &PartialMap) -> Result<(), AutomorphismError> {
    let mut targets = std::collections::HashSet::new();
    for (&k, &v) in map {
        if !targets.insert(v) {
            return Err(AutomorphismError::NotAnAutomorphism(format!("{k} collides at {v}")));
        }
    }
    let items: Vec<(usize, usize)> = map.iter().map(|(&k, &v)| (k, v)).collect();
    for (i, &(a, fa)) in items.iter().enumerate() {
        for &(b, fb) in &items[i + 1..] {
            if g.has_edge(a, b) != g.has_edge(fa, fb) {
                return Err(AutomorphismError::NotAnAutomorphism(format!("pair ({a}, {b}) maps to ({fa}, {fb}) with different adjacency")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_operations() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let r = GraphAutomorphism::new(&c4, vec![1, 2, 3, 0]).unwrap();
        assert_eq!(r.order(), 4);
        assert!(r.compose(&r.inverse()).is_identity());
        assert_eq!(r.compose(&r).permutation(), &[2, 3, 0, 1]);
        assert!(GraphAutomorphism::new(&c4, vec![0, 2, 1, 3]).is_err());
        assert!(GraphAutomorphism::new(&c4, vec![0, 0, 1, 3]).is_err());
        assert_eq!(GraphAutomorphism::transposition(4, 1, 3).order(), 2);
        assert_eq!(GraphAutomorphism::identity(0).order(), 1);
    }

    #[test]
    fn partial_maps() {
        let p = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let ok: PartialMap = [(0, 2), (1, 1)].into_iter().collect();
        check_partial_isomorphism(&p, &ok).unwrap();
        let bad: PartialMap = [(0, 0), (1, 2)].into_iter().collect();
        assert!(check_partial_isomorphism(&p, &bad).is_err());
    }
}
