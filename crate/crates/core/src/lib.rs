//! Relative outer automorphism groups of right-angled Artin groups:
//! generators, invariant special subgroups, restriction/projection exact
//! sequences, decomposition trees and vcd bounds.

pub mod autos;
pub mod decompose;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod orders;
pub mod peripheral;
pub mod vcd;
pub mod words;

pub use autos::{Automorphism, LaurenceGenerator};
pub use decompose::{Complexity, Descriptor, LeafClass, Node, RestrictMode, ScriptOp, Step};
pub use error::{Error, Result};
pub use graph::{DefiningGraph, Subgraph, VSet};
pub use orders::{DominationOrder, RelOrder, VertexClassGraph};
pub use peripheral::{NormalizeMode, PeripheralPair};
pub use words::{GroupWord, Letter, Verdict};
