//! Hyperplanes, contact graphs and clique reconstruction for finite CAT(0)
//! cube complexes, with balls in right-angled Artin and Coxeter groups as
//! the main source of examples.

pub mod automorphism;
pub mod builtins;
pub mod cliques;
pub mod contact;
pub mod graph;
pub mod io;
pub mod median;
pub mod ra;
pub mod reconstruction;
pub mod verify;

pub use automorphism::{AutomorphismError, GraphAutomorphism, PartialMap};
pub use cliques::{maximal_cliques, CliqueLimitExceeded, DEFAULT_CLIQUE_CAP};
pub use contact::{ContactFamily, Interaction, InteractionSets, ReducedMode};
pub use graph::Graph;
pub use median::{ComplexError, CubeComplex, Hyperplane, HyperplaneId, LinkGraph, VertexId, DEFAULT_VERTEX_CAP};
