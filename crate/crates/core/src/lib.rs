//! Enumeration and analysis of the combinatorics of simple polytopes.
//!
//! A simple d-polytope with n facets is represented by its face lattice
//! (dimension-stratified faces with downward links) together with its
//! vertex-edge graph. Starting from the d-simplex, every further type is
//! produced by truncating a valid set of vertices with a single hyperplane,
//! which adds one facet. The crate provides:
//!
//! - [`lattice`]: face lattices, f-vectors, structural validation, JSON form;
//! - [`canon`]: canonical labeling, isomorphism tests, vertex orbits;
//! - [`graph6`]: the compact printable graph encoding used for catalog keys;
//! - [`cutsets`]: validity tests and isomorphism-free search for cuttable
//!   vertex sets;
//! - [`cutter`]: the lattice surgery performed by one hyperplane cut, the
//!   facet-sweep variant, and a graph-only fast path;
//! - [`enumerate`]: the breadth-first catalog builder with dedup by canonical
//!   key, persistence, and resume;
//! - [`analyze`]: diameters, Hirsch margins, Dantzig figures, exact-rational
//!   expansion constants, and separator scans.

pub mod analyze;
pub mod canon;
pub mod cutsets;
pub mod cutter;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod lattice;

pub use canon::{are_isomorphic, canonical_key, vertex_orbits, CanonicalKey, OrbitPartition};
pub use cutsets::{enumerate_cutsets, is_valid_cutset, CutPolicy, Cutset, CutsetValidity};
pub use cutter::{cut_graph_only, cut_polytope, push_facet, CutResult};
pub use enumerate::{enumerate_all, resume, Catalog, CatalogEntry, EnumerateConfig};
pub use graph::PolytopeGraph;
pub use lattice::{make_simplex, FVector, Face, FaceId, FaceLattice};
