//! JSON and DOT formats. Every emitter lists vertices, edges and map keys in
//! id order so that repeated runs produce identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contact::ContactFamily;
use crate::graph::Graph;
use crate::median::{ComplexError, CubeComplex, HyperplaneId, VertexId};
use crate::ra::{Ball, DefiningGraph, GroupKind, RaError};
use crate::reconstruction::{CliqueAtlas, Reconstruction};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] RaError),
    #[error("invalid document: {0}")]
    Invalid(String),
}

/// `{"vertices": [name], "edges": [[name, name]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl ComplexDoc {
    pub fn of(cx: &CubeComplex) -> Self {
        let names = cx.names();
        ComplexDoc { vertices: names.to_vec(), edges: cx.edges().iter().map(|&(u, v)| (names[u].clone(), names[v].clone())).collect() }
    }

    pub fn build(self) -> Result<CubeComplex, ComplexError> {
        CubeComplex::new(self.vertices, &self.edges)
    }
}

pub fn parse_complex(text: &str) -> Result<CubeComplex, IoError> {
    let doc: ComplexDoc = serde_json::from_str(text)?;
    Ok(doc.build()?)
}

pub fn complex_json(cx: &CubeComplex) -> String {
    to_pretty(&ComplexDoc::of(cx))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneDoc {
    pub id: HyperplaneId,
    pub edges: Vec<(String, String)>,
    #[serde(rename = "sideA")]
    pub side_a: Vec<String>,
    #[serde(rename = "sideB")]
    pub side_b: Vec<String>,
    pub carrier: Vec<String>,
}

pub fn hyperplane_docs(cx: &CubeComplex) -> Vec<HyperplaneDoc> {
    let names = |s: &fixedbitset::FixedBitSet| s.ones().map(|v| cx.name(v).to_string()).collect();
    cx.hyperplanes()
        .iter()
        .map(|h| HyperplaneDoc {
            id: h.id,
            edges: h
                .dual_edges
                .iter()
                .map(|&e| {
                    let (u, v) = cx.edges()[e];
                    (cx.name(u).to_string(), cx.name(v).to_string())
                })
                .collect(),
            side_a: names(&h.side_a),
            side_b: names(&h.side_b),
            carrier: names(&h.carrier),
        })
        .collect()
}

/// A graph on `0..n`: `{"vertices": [id], "edges": [[i, j]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphDoc {
    pub fn of(g: &Graph) -> Self {
        GraphDoc { vertices: (0..g.order()).collect(), edges: g.edges() }
    }

    /// Relabels vertex ids to their positions in `vertices`.
    pub fn build(&self) -> Result<Graph, IoError> {
        let pos: BTreeMap<usize, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != self.vertices.len() {
            return Err(IoError::Invalid("repeated vertex id".into()));
        }
        let mut g = Graph::new(self.vertices.len());
        for &(a, b) in &self.edges {
            let (Some(&i), Some(&j)) = (pos.get(&a), pos.get(&b)) else {
                return Err(IoError::Invalid(format!("edge ({a}, {b}) uses an unknown vertex")));
            };
            if i == j {
                return Err(IoError::Invalid(format!("loop at {a}")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReducedDoc {
    pub classes: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub mode: String,
    pub contact: GraphDoc,
    pub crossing: GraphDoc,
    pub reduced: ReducedDoc,
}

impl FamilyDoc {
    pub fn of(f: &ContactFamily) -> Self {
        FamilyDoc {
            mode: f.mode.to_string(),
            contact: GraphDoc::of(&f.contact),
            crossing: GraphDoc::of(&f.crossing),
            reduced: ReducedDoc { classes: f.classes.clone(), edges: f.reduced.edges() },
        }
    }
}

/// Reads a contact graph from either a bare graph document or a contact
/// family document.
pub fn parse_contact_graph(text: &str) -> Result<Graph, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let doc: GraphDoc = match value.get("contact") {
        Some(inner) => serde_json::from_value(inner.clone())?,
        None => serde_json::from_value(value)?,
    };
    doc.build()
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasVertex {
    pub extremal: bool,
    pub clique: Vec<HyperplaneId>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasDoc {
    pub cliques: Vec<Vec<HyperplaneId>>,
    pub vertices: BTreeMap<String, AtlasVertex>,
}

impl AtlasDoc {
    pub fn of(cx: &CubeComplex, atlas: &CliqueAtlas) -> Self {
        let vertices = (0..cx.order())
            .map(|v| (cx.name(v).to_string(), AtlasVertex { extremal: atlas.extremal[v], clique: atlas.clique_of[v].clone() }))
            .collect();
        AtlasDoc { cliques: atlas.cliques.clone(), vertices }
    }
}

/// Name of a reconstructed vertex: its clique, e.g. `{0,3,5}`.
pub fn clique_name(c: &[HyperplaneId]) -> String {
    let items: Vec<String> = c.iter().map(|h| h.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn reconstruction_doc(r: &Reconstruction) -> ComplexDoc {
    let names: Vec<String> = r.cliques.iter().map(|c| clique_name(c)).collect();
    ComplexDoc { edges: r.graph.edges().into_iter().map(|(a, b)| (names[a].clone(), names[b].clone())).collect(), vertices: names }
}

/// The complex schema plus group data, hyperplane labels and vertex depths.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub kind: GroupKind,
    pub radius: usize,
    pub gamma: serde_json::Value,
    pub labels: BTreeMap<HyperplaneId, String>,
    pub depth: BTreeMap<VertexId, i64>,
}

impl BallDoc {
    pub fn of(ball: &Ball) -> Self {
        let ComplexDoc { vertices, edges } = ComplexDoc::of(&ball.complex);
        BallDoc {
            vertices,
            edges,
            kind: ball.kind(),
            radius: ball.radius,
            gamma: ball.gamma().to_json(),
            labels: ball.labels.iter().enumerate().map(|(h, &g)| (h, ball.gamma().name(g).to_string())).collect(),
            depth: ball.depth.iter().copied().enumerate().collect(),
        }
    }
}

pub fn parse_gamma(text: &str) -> Result<DefiningGraph, IoError> {
    Ok(DefiningGraph::from_json(text)?)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The 1-skeleton, each edge labelled by its hyperplane.
pub fn complex_dot(cx: &CubeComplex) -> String {
    let mut out = String::from("graph complex {\n");
    for v in 0..cx.order() {
        let _ = writeln!(out, "  {};", quote(cx.name(v)));
    }
    for (e, &(u, v)) in cx.edges().iter().enumerate() {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", quote(cx.name(u)), quote(cx.name(v)), cx.edge_hyperplane(e));
    }
    out.push_str("}\n");
    out
}

pub fn graph_dot(name: &str, g: &Graph) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

pub fn family_dot(f: &ContactFamily) -> String {
    let mut out = graph_dot("contact", &f.contact);
    out.push_str(&graph_dot("crossing", &f.crossing));
    out.push_str(&graph_dot("reduced", &f.reduced));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn complex_roundtrip() {
        for name in builtins::COMPLEX_NAMES {
            let cx = builtins::complex(name).unwrap();
            let text = complex_json(&cx);
            let back = parse_complex(&text).unwrap();
            assert_eq!(complex_json(&back), text);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_complex("{"), Err(IoError::Json(_))));
        let k3 = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#;
        assert!(matches!(parse_complex(k3), Err(IoError::Complex(_))));
        assert!(matches!(parse_contact_graph(r#"{"vertices":[0],"edges":[[0,1]]}"#), Err(IoError::Invalid(_))));
    }

    #[test]
    fn family_document() {
        let cx = builtins::complex("DOMINO").unwrap();
        let f = ContactFamily::build(&cx, Default::default());
        let text = to_pretty(&FamilyDoc::of(&f));
        assert_eq!(parse_contact_graph(&text).unwrap(), f.contact);
        let dot = family_dot(&f);
        assert_eq!(dot.matches("graph ").count(), 3);
    }

    #[test]
    fn hyperplane_report() {
        let cx = builtins::complex("SQUARE").unwrap();
        let docs = hyperplane_docs(&cx);
        assert_eq!(docs.len(), 2);
        assert!(docs.iter().all(|d| d.edges.len() == 2 && d.carrier.len() == 4 && d.side_a.len() == 2));
        let dot = complex_dot(&cx);
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    #[test]
    fn ball_document_keys_are_numeric_order() {
        let b = Ball::build(DefiningGraph::builtin("K2").unwrap(), GroupKind::Artin, 2, 1000).unwrap();
        let text = to_pretty(&BallDoc::of(&b));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 13);
        assert_eq!(v["depth"]["0"], 2);
        assert!(text.find("\"2\":").unwrap() < text.find("\"10\":").unwrap());
        let doc: ComplexDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.build().unwrap().order(), 13);
    }
}
