//! Five notions of a "simple" permutation — segment-, cycle-, group-, braid-
//! and tree-simple — with exact classifiers, closed-form and exhaustive
//! counts, the induced Cayley subgraphs Γ(A) and their planarity, the
//! polygonal reduction calculus behind the component structure of Γ(cSₙ) and
//! Γ(gSₙ), and the permutahedron / order subcomplexes with homology evidence.

pub mod cayley;
pub mod classify;
pub mod complexes;
pub mod enumerate;
mod error;
pub mod perm;
pub mod planar;
pub mod polygon;
pub mod snf;

pub use error::{Error, Result};
pub use perm::{
    build_tree, coxeter_length, coxeter_normal_form, cycle_decomposition, evaluate_word,
    standard_sequence, CoxeterWord, CycleDecomposition, Permutation, PlaneTree,
};
pub use classify::{profile, SimplicityProfile};
pub use enumerate::{census, CensusReport, SigmaTriangle};
pub use cayley::{LabeledGraph, SimpleClass};
pub use complexes::CellComplex;
