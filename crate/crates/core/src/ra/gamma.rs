//! Defining graphs of right-angled Artin and Coxeter groups.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::RaError;
use crate::graph::Graph;

pub type Generator = usize;

pub const GAMMA_NAMES: &[&str] = &["K1", "K2", "F2", "P4", "C4", "C5", "K5", "STAR_EQ5"];

/// A finite simple graph whose vertices name the group generators. The
/// vertex order fixes the letter order used by normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: HashMap<String, Generator>,
    graph: Graph,
}

#[derive(Serialize, Deserialize)]
struct GammaJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl DefiningGraph {
    pub fn new(names: Vec<String>, edges: &[(String, String)]) -> Result<Self, RaError> {
        if names.is_empty() {
            return Err(RaError::InvalidGraph("defining graph has no vertices".into()));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || n.chars().any(|c| c.is_whitespace() || c == '^' || c.is_ascii_digit() || c == '-') {
                return Err(RaError::InvalidGraph(format!("generator name {n:?} must be nonempty without digits, spaces, '^' or '-'")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(RaError::InvalidGraph(format!("duplicate generator {n:?}")));
            }
        }
        let mut graph = Graph::new(names.len());
        for (a, b) in edges {
            let u = *index.get(a).ok_or_else(|| RaError::UnknownGenerator(a.clone()))?;
            let v = *index.get(b).ok_or_else(|| RaError::UnknownGenerator(b.clone()))?;
            if u == v {
                return Err(RaError::InvalidGraph(format!("self-loop at {a:?}")));
            }
            graph.add_edge(u, v);
        }
        Ok(Self { names, index, graph })
    }

    fn from_strs(names: &[&str], edges: &[(&str, &str)]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            &edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>(),
        )
        .expect("builtin defining graphs are valid")
    }

    /// One of [`GAMMA_NAMES`] (case-insensitive).
    pub fn builtin(name: &str) -> Result<Self, RaError> {
        Ok(match name.to_ascii_uppercase().as_str() {
            "K1" => Self::from_strs(&["x"], &[]),
            "K2" => Self::from_strs(&["x", "y"], &[("x", "y")]),
            "F2" => Self::from_strs(&["x", "y"], &[]),
            "P4" => Self::from_strs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]),
            "C4" => Self::from_strs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
            "C5" => Self::from_strs(&["a", "b", "c", "d", "e"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")]),
            "K5" => {
                let names = ["a", "b", "c", "d", "e"];
                let mut edges = Vec::new();
                for i in 0..5 {
                    for j in i + 1..5 {
                        edges.push((names[i], names[j]));
                    }
                }
                Self::from_strs(&names, &edges)
            }
            "STAR_EQ5" => Self::from_strs(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("e", "c"), ("e", "d")],
            ),
            _ => return Err(RaError::InvalidGraph(format!("unknown builtin defining graph {name:?}"))),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, RaError> {
        let raw: GammaJson = serde_json::from_str(text).map_err(|e| RaError::InvalidGraph(e.to_string()))?;
        let edges: Vec<(String, String)> = raw.edges.into_iter().map(|[a, b]| (a, b)).collect();
        Self::new(raw.vertices, &edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<[String; 2]> = self.graph.edges().into_iter().map(|(u, v)| [self.names[u].clone(), self.names[v].clone()]).collect();
        serde_json::to_value(GammaJson { vertices: self.names.clone(), edges }).expect("serializable")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g]
    }

    pub fn generator(&self, name: &str) -> Result<Generator, RaError> {
        self.index.get(name).copied().ok_or_else(|| RaError::UnknownGenerator(name.to_string()))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Distinct and joined by an edge.
    pub fn commute(&self, a: Generator, b: Generator) -> bool {
        a != b && self.graph.has_edge(a, b)
    }

    pub fn star(&self, a: Generator) -> FixedBitSet {
        self.graph.star(a)
    }

    pub fn link(&self, a: Generator) -> FixedBitSet {
        self.graph.neighbor_set(a).clone()
    }

    pub fn star_contained(&self, a: Generator, b: Generator) -> bool {
        crate::graph::is_subset(&self.star(a), &self.star(b))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.graph.edge_count() == n * (n - 1) / 2
    }

    /// Vertices joined to every other vertex, and the rest. The second part
    /// spans a subgraph that is not a cone (or is empty).
    pub fn join_decomposition(&self) -> (Vec<Generator>, Vec<Generator>) {
        let n = self.order();
        (0..n).partition(|&v| self.graph.degree(v) + 1 == n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_and_json() {
        for name in GAMMA_NAMES {
            let g = DefiningGraph::builtin(name).unwrap();
            let back = DefiningGraph::from_json(&g.to_json().to_string()).unwrap();
            assert_eq!(back.graph(), g.graph());
        }
        assert!(DefiningGraph::builtin("nope").is_err());
        assert!(matches!(DefiningGraph::from_json(r#"{"vertices":["a"],"edges":[["a","z"]]}"#), Err(RaError::UnknownGenerator(_))));
    }

    #[test]
    fn decompositions() {
        let k5 = DefiningGraph::builtin("K5").unwrap();
        assert_eq!(k5.join_decomposition(), (vec![0, 1, 2, 3, 4], vec![]));
        let c5 = DefiningGraph::builtin("C5").unwrap();
        assert_eq!(c5.join_decomposition().0, Vec::<usize>::new());
        let p4 = DefiningGraph::builtin("P4").unwrap();
        assert!(p4.star_contained(0, 1));
        assert!(!p4.star_contained(1, 0));
    }
}
