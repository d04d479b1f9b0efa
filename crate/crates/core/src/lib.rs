//! Cost models and desk-scale simulators for compressed quantum logic array
//! (CQLA) architectures: tiled ion-trap machines specialized into dense
//! error-corrected memory and fast compute regions, joined by a code-transfer
//! network that moves logical qubits between encoding levels.
//!
//! The crate is organized around the questions such a design has to answer:
//!
//! - [`ecc`] — error-correction cost: per-code, per-level EC and logical gate
//!   times, recursive failure probabilities, and the level-1 time budget that
//!   keeps a mixed-level machine inside its fidelity target.
//! - [`circuit`] — a small logical-circuit IR with an assembly-like text form,
//!   a dependency graph, and a classical reversible simulator used as a
//!   correctness oracle.
//! - [`generators`] — workload generators: the carry-lookahead adder, the
//!   repeated-addition schedule for modular exponentiation, and the QFT.
//! - [`schedule`] — resource-constrained list scheduling: makespans,
//!   parallelism profiles, and compute-block utilization.
//! - [`layout`] — area accounting for memory/compute specialization against a
//!   homogeneous baseline, and perimeter-bandwidth sizing of superblocks.
//! - [`memhier`] — the memory hierarchy: code-transfer latencies, an LRU cache
//!   simulator with naive and lookahead fetch, level-1 adder speedups, and
//!   mixed-level execution timing.
//! - [`comms`] — communication-versus-computation accounting for Toffoli
//!   traffic and all-to-all exchange on the block mesh.
//!
//! Everything here is deterministic and allocation-only (`no_std` with
//! `alloc`); file formats, configuration, and the command-line driver live in
//! the companion `cqla-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod circuit;
pub mod comms;
pub mod ecc;
pub mod error;
mod fmath;
pub mod generators;
pub mod layout;
pub mod memhier;
pub mod schedule;

pub use circuit::{Circuit, DependencyGraph, Gate, GateKind, QubitId};
pub use ecc::{CodeCatalog, CodeId, CodeLevel, FidelityBudget, GateClass, TechnologyParams};
pub use error::Error;
