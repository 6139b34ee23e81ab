//! Finite state property systems, closure spaces and based complete
//! lattices, together with the structure-preserving passages between them
//! and a harness that checks the algebraic laws those passages obey.
//!
//! Everything is desk scale and exhaustive: orders are stored extensionally,
//! meets and joins are computed by brute force, and every boolean verdict
//! comes with a witness. See the `examples/` directory for one runnable
//! program per capability, and the `stateprop` binary for the JSON-document
//! command line.

pub mod closure;
pub mod document;
pub mod entity;
pub mod error;
pub mod functors;
pub mod galois;
pub mod generator;
pub mod order;
pub mod product;
pub mod spsys;

pub mod cli;

pub use closure::{ClosureSpace, ClosureViolation, PointMap};
pub use entity::{CompiledEntity, EntityViolation, StateTestEntity, TruesetIndex};
pub use error::StructuralError;
pub use functors::{BasedCompleteLattice, BclMorphism, BclMorphismViolation, BclViolation};
pub use galois::GaloisConnection;
pub use order::{ElementId, Lattice, LatticeMap, OrderViolation, Relation};
pub use product::ProductWitness;
pub use spsys::{MorphismViolation, SpMorphism, SpsViolation, StatePropertySystem};
