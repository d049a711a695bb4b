//! Identifying, self-identifying and self-locating-dominating codes in
//! Hamming graphs `K_q^n`: constructions, verification, layer diagnostics
//! and small exhaustive searches.

pub mod bounds;
pub mod code;
pub mod construct3;
pub mod error;
pub mod exec;
pub mod field;
pub mod format;
pub mod graph;
pub mod latin;
pub mod linear;
pub mod search;
pub mod verify;

pub use code::Code;
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{GenericGraph, Graph, HammingGraph, Labels, Vertex};
pub use verify::{verify, Property, VerificationReport, Witness};
