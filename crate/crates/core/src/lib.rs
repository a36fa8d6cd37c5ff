//! Exact partition functions of spin models on graphs, together with the
//! machinery for comparing a graph against its 2-lifts.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`graph`]: multigraphs, girth, bipartiteness, 2-lifts and k-lifts,
//!   graph transforms and girth-boosting lift sequences.
//! * [`models`]: spin models `(A, ν)`, named instances and matrix constructions.
//! * [`partition`]: `Z(G, A, ν)` by enumeration, independent-set and matching
//!   counts, and the random-cluster function by deletion–contraction.
//! * [`classes`]: TP₂/TN₂ tests and the sign-switching certificate deciding
//!   which 2-lift maximizes `Z`.
//! * [`bethe`]: belief-propagation fixed points and Bethe free energies on the
//!   infinite d-regular tree.
//! * [`verify`]: catalogs, exhaustive lift scans and identity suites.

pub mod bethe;
pub mod classes;
pub mod error;
pub mod graph;
pub mod models;
pub mod partition;
pub mod rng;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, Signing};
pub use models::{NamedModel, SpinModel};
pub use scalar::Scalar;
