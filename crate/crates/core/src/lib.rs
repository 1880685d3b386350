//! Hyperplanes, complexes of hyperplanes and exact homology for finite
//! quasi-median graphs, plus the coset calculus of graph products with cyclic
//! vertex groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`graph`]: simple graphs, cliques, joins, blocks, products.
//! * [`qm`]: hyperplanes, gated subgraphs, prisms, validation, generators.
//! * [`complexes`]: simplicial complexes stored by maximal faces and every
//!   complex built from hyperplanes or gated families.
//! * [`homology`]: boundary operators, Smith normal form, signatures.
//! * [`graph_products`]: normal forms, parabolic cosets, coset intersection
//!   complexes and finite Cayley balls.

pub mod complexes;
pub mod graph;
pub mod graph_products;
pub mod homology;
pub mod qm;


pub use complexes::{ComplexError, GatedFamily, SimplicialComplex};
pub use graph::{Graph, GraphError, Vertex, VertexSet};

pub use homology::{HomologyError, HomologySignature, WedgeSupport};
pub use qm::{HyperplaneId, QMGraph, QmError};
