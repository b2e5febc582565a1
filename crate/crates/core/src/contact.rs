//! Contact, crossing and reduced crossing graphs of a cube complex, and the
//! interaction sets `I(w)` and `I⁰(w)`.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::automorphism::{AutomorphismError, GraphAutomorphism};
use crate::graph::{is_subset, Graph};
use crate::median::{ComplexError, CubeComplex, HyperplaneId};

/// How a pair of hyperplanes sits in the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interaction {
    Equal,
    Transverse,
    ContactOsculating,
    Separated,
}

impl fmt::Display for Interaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interaction::Equal => "equal",
            Interaction::Transverse => "transverse",
            Interaction::ContactOsculating => "contact_osculating",
            Interaction::Separated => "separated",
        })
    }
}

pub fn interaction(cx: &CubeComplex, u: HyperplaneId, w: HyperplaneId) -> Result<Interaction, ComplexError> {
    let (hu, hw) = (cx.hyperplane(u)?, cx.hyperplane(w)?);
    Ok(if u == w {
        Interaction::Equal
    } else if cx.transverse(u, w) {
        Interaction::Transverse
    } else if !hu.carrier.is_disjoint(&hw.carrier) {
        Interaction::ContactOsculating
    } else {
        Interaction::Separated
    })
}

/// Whether some third hyperplane has `u` and `w` on opposite sides.
pub fn separated_by_third(cx: &CubeComplex, u: HyperplaneId, w: HyperplaneId) -> bool {
    let (hu, hw) = (&cx.hyperplanes()[u], &cx.hyperplanes()[w]);
    cx.hyperplanes().iter().any(|h| {
        h.id != u
            && h.id != w
            && ((is_subset(&hu.carrier, &h.side_a) && is_subset(&hw.carrier, &h.side_b))
                || (is_subset(&hu.carrier, &h.side_b) && is_subset(&hw.carrier, &h.side_a)))
    })
}

/// Which neighbourhoods are compared when forming reduced classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ReducedMode {
    /// `u ~ v` iff `N(u) \ {v} = N(v) \ {u}`.
    #[default]
    SelfExclusive,
    /// `u ~ v` iff `N(u) = N(v)`.
    Strict,
}

impl FromStr for ReducedMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "self-exclusive" => Ok(ReducedMode::SelfExclusive),
            "strict" => Ok(ReducedMode::Strict),
            other => Err(format!("unknown reduced mode {other:?} (expected self-exclusive or strict)")),
        }
    }
}

impl fmt::Display for ReducedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReducedMode::SelfExclusive => "self-exclusive",
            ReducedMode::Strict => "strict",
        })
    }
}

pub fn twins(g: &Graph, u: usize, v: usize, mode: ReducedMode) -> bool {
    if u == v {
        return true;
    }
    let (mut nu, mut nv) = (g.neighbor_set(u).clone(), g.neighbor_set(v).clone());
    if mode == ReducedMode::SelfExclusive {
        nu.set(v, false);
        nv.set(u, false);
    }
    nu == nv
}

/// Twin classes of `g` sorted by least element, and the class index of
/// every vertex.
pub fn reduced_classes(g: &Graph, mode: ReducedMode) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.order();
    let mut quotient = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if quotient[u] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let members: Vec<usize> = (u..n).filter(|&v| quotient[v] == usize::MAX && twins(g, u, v, mode)).collect();
        for &v in &members {
            quotient[v] = id;
        }
        classes.push(members);
    }
    (classes, quotient)
}

/// The three graphs over hyperplane ids plus the twin quotient.
#[derive(Clone, Debug)]
pub struct ContactFamily {
    pub contact: Graph,
    pub crossing: Graph,
    pub classes: Vec<Vec<usize>>,
    pub quotient: Vec<usize>,
    pub reduced: Graph,
    pub mode: ReducedMode,
}

impl ContactFamily {
    pub fn build(cx: &CubeComplex, mode: ReducedMode) -> Self {
        let h = cx.hyperplane_count();
        let mut contact = Graph::new(h);
        let mut crossing = Graph::new(h);
        for u in 0..h {
            for w in u + 1..h {
                if cx.transverse(u, w) {
                    crossing.add_edge(u, w);
                    contact.add_edge(u, w);
                } else if !cx.hyperplanes()[u].carrier.is_disjoint(&cx.hyperplanes()[w].carrier) {
                    contact.add_edge(u, w);
                }
            }
        }
        Self::from_graphs(contact, crossing, mode)
    }

    /// Builds the family from a contact graph and its crossing subgraph.
    pub fn from_graphs(contact: Graph, crossing: Graph, mode: ReducedMode) -> Self {
        let (classes, quotient) = reduced_classes(&crossing, mode);
        let mut reduced = Graph::new(classes.len());
        for (u, w) in crossing.edges() {
            if quotient[u] != quotient[w] {
                reduced.add_edge(quotient[u], quotient[w]);
            }
        }
        ContactFamily { contact, crossing, classes, quotient, reduced, mode }
    }

    pub fn hyperplane_count(&self) -> usize {
        self.contact.order()
    }

    /// Whether every pair in every class is a twin pair and reduced edges
    /// are all-or-nothing between classes. Returns the first failing pair.
    pub fn check_quotient(&self) -> Result<(), (usize, usize)> {
        for class in &self.classes {
            for (i, &u) in class.iter().enumerate() {
                for &v in &class[i + 1..] {
                    if !twins(&self.crossing, u, v, self.mode) {
                        return Err((u, v));
                    }
                }
            }
        }
        for (a, ca) in self.classes.iter().enumerate() {
            for (b, cb) in self.classes.iter().enumerate().skip(a + 1) {
                let edge = self.reduced.has_edge(a, b);
                for &u in ca {
                    for &v in cb {
                        if self.crossing.has_edge(u, v) != edge {
                            return Err((u, v));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `I(w)` by definition and `I⁰(w)` from it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InteractionSets {
    pub base: HyperplaneId,
    pub i: Vec<HyperplaneId>,
    pub i0: Vec<HyperplaneId>,
}

/// Intersection of all `𝒲_v` with `v` in the carrier of `w`.
pub fn interaction_set(cx: &CubeComplex, w: HyperplaneId) -> Result<FixedBitSet, ComplexError> {
    let hp = cx.hyperplane(w)?;
    let mut acc: Option<FixedBitSet> = None;
    for v in hp.carrier.ones() {
        let wv = cx.hyperplanes_at(v)?;
        match acc.as_mut() {
            None => acc = Some(wv.clone()),
            Some(a) => a.intersect_with(wv),
        }
    }
    Ok(acc.expect("carriers are nonempty"))
}

pub fn interaction_sets(cx: &CubeComplex, w: HyperplaneId) -> Result<InteractionSets, ComplexError> {
    let i = interaction_set(cx, w)?;
    let mut i0 = Vec::new();
    for u in i.ones() {
        if interaction_set(cx, u)?.contains(w) {
            i0.push(u);
        }
    }
    Ok(InteractionSets { base: w, i: i.ones().collect(), i0 })
}

/// All interaction sets, indexed by hyperplane id.
pub fn all_interaction_sets(cx: &CubeComplex) -> Vec<InteractionSets> {
    let sets: Vec<FixedBitSet> = (0..cx.hyperplane_count()).map(|w| interaction_set(cx, w).expect("valid id")).collect();
    (0..sets.len())
        .map(|w| InteractionSets { base: w, i: sets[w].ones().collect(), i0: sets[w].ones().filter(|&u| sets[u].contains(w)).collect() })
        .collect()
}

/// `u ∈ I(w)` characterised by transversality alone: `u = w`, or `u` is
/// transverse to `w` and to every other hyperplane transverse to `w`.
pub fn characterized_interaction_set(cx: &CubeComplex, w: HyperplaneId) -> Result<Vec<HyperplaneId>, ComplexError> {
    cx.hyperplane(w)?;
    let tw = cx.transverse_set(w);
    Ok((0..cx.hyperplane_count()).filter(|&u| u == w || (tw.contains(u) && tw.ones().all(|x| x == u || cx.transverse(u, x)))).collect())
}

/// Induced permutation of reduced classes. Fails when `phi` is not an
/// automorphism of the crossing graph or does not map classes onto classes.
pub fn pushforward_reduced(f: &ContactFamily, phi: &GraphAutomorphism) -> Result<GraphAutomorphism, AutomorphismError> {
    phi.check_preserves(&f.crossing)?;
    let k = f.classes.len();
    let mut image = vec![usize::MAX; k];
    for (c, members) in f.classes.iter().enumerate() {
        let target = f.quotient[phi.apply(members[0])];
        if members.iter().any(|&u| f.quotient[phi.apply(u)] != target) || f.classes[target].len() != members.len() {
            return Err(AutomorphismError::NotAnAutomorphism(format!("class {c} is not mapped onto a class")));
        }
        image[c] = target;
    }
    GraphAutomorphism::new(&f.reduced, image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn family(name: &str) -> (CubeComplex, ContactFamily) {
        let cx = builtins::complex(name).unwrap();
        let f = ContactFamily::build(&cx, ReducedMode::SelfExclusive);
        (cx, f)
    }

    #[test]
    fn interactions() {
        let sq = builtins::complex("SQUARE").unwrap();
        assert_eq!(interaction(&sq, 0, 1).unwrap(), Interaction::Transverse);
        assert_eq!(interaction(&sq, 0, 0).unwrap(), Interaction::Equal);
        let tri = builtins::complex("TRIPOD").unwrap();
        assert_eq!(interaction(&tri, 0, 2).unwrap(), Interaction::ContactOsculating);
        let p3 = builtins::complex("PATH3").unwrap();
        assert_eq!(interaction(&p3, 0, 2).unwrap(), Interaction::Separated);
        assert!(separated_by_third(&p3, 0, 2));
        assert!(!separated_by_third(&p3, 0, 1));
        assert!(interaction(&p3, 0, 9).is_err());
    }

    #[test]
    fn q3_family() {
        let (_, f) = family("Q3");
        assert_eq!(f.contact.edge_count(), 3);
        assert_eq!(f.crossing.edge_count(), 3);
        assert_eq!(f.classes, vec![vec![0, 1, 2]]);
        assert_eq!(f.reduced.edge_count(), 0);
        // strict neighbourhoods of a triangle are pairwise distinct
        let strict = ContactFamily::build(&builtins::complex("Q3").unwrap(), ReducedMode::Strict);
        assert_eq!(strict.classes.len(), 3);
        assert_eq!(strict.reduced.edge_count(), 3);
    }

    #[test]
    fn tripod_family() {
        let (_, f) = family("TRIPOD");
        assert_eq!(f.contact.edge_count(), 3);
        assert_eq!(f.crossing.edge_count(), 0);
        assert_eq!(f.classes.len(), 1);
    }

    #[test]
    fn domino_family() {
        let (cx, f) = family("DOMINO");
        assert_eq!(f.contact.edge_count(), 3);
        assert_eq!(f.crossing.edge_count(), 2);
        // the horizontal hyperplane crosses both vertical ones
        let h = (0..3).find(|&w| f.crossing.degree(w) == 2).unwrap();
        let verticals: Vec<usize> = (0..3).filter(|&w| w != h).collect();
        assert_eq!(f.classes.len(), 2);
        assert_eq!(f.quotient[verticals[0]], f.quotient[verticals[1]]);
        assert_eq!(f.reduced.edge_count(), 1);
        f.check_quotient().unwrap();
        let _ = cx;
    }

    #[test]
    fn interaction_set_examples() {
        let sq = builtins::complex("SQUARE").unwrap();
        let s = interaction_sets(&sq, 0).unwrap();
        assert_eq!((s.i.clone(), s.i0.clone()), (vec![0, 1], vec![0, 1]));
        let tri = builtins::complex("TRIPOD").unwrap();
        let s = interaction_sets(&tri, 0).unwrap();
        assert_eq!((s.i, s.i0), (vec![0], vec![0]));
        let r = crate::median::random_median_complex(6, 5, 42, 4096).unwrap();
        for w in 0..r.hyperplane_count() {
            assert_eq!(interaction_sets(&r, w).unwrap().i, characterized_interaction_set(&r, w).unwrap());
        }
    }

    #[test]
    fn pushforwards() {
        let (_, f) = family("DOMINO");
        let id = GraphAutomorphism::identity(3);
        assert!(pushforward_reduced(&f, &id).unwrap().is_identity());
        let h = (0..3).find(|&w| f.crossing.degree(w) == 2).unwrap();
        let v: Vec<usize> = (0..3).filter(|&w| w != h).collect();
        let swap = GraphAutomorphism::new(&f.crossing, GraphAutomorphism::transposition(3, v[0], v[1]).permutation().to_vec()).unwrap();
        assert!(pushforward_reduced(&f, &swap).unwrap().is_identity());

        let (_, q) = family("Q3");
        let rot = GraphAutomorphism::new(&q.crossing, vec![1, 2, 0]).unwrap();
        assert!(pushforward_reduced(&q, &rot).unwrap().is_identity());
    }
}
