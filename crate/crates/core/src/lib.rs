//! Exact toolkit for λ-choosability of graphs.
//!
//! A partition λ = {k_1, …, k_q} of k refines the usual notion of list
//! colouring: a λ-assignment gives every vertex a k-list drawn from colour
//! groups C_1, …, C_q with exactly k_i colours per group, and a graph is
//! λ-choosable when it is colourable from every such assignment. With
//! λ = {k} this is k-choosability, with λ = {1, …, 1} it is k-colourability,
//! and the partitions in between form a hierarchy ordered by `partitions::le`.
//!
//! The crate provides:
//!
//! * [`partitions`] — integer-partition algebra: refinement, the order
//!   λ ≤ λ′ with explicit witnesses, and enumeration.
//! * [`graph`] — a small exact graph core: girth, degeneracy, chromatic
//!   decisions, and a line-oriented text format.
//! * [`assignments`] — λ-assignment validation, an exact list-colouring
//!   solver, enumeration of λ-assignments up to colour symmetry, and the
//!   λ-choosability decision with certificates.
//! * [`gadgets`] — the (k_i−1)-degenerate, girth ≥ g, non-(k_i−1)-colourable
//!   building blocks used by the construction.
//! * [`construct`] — the randomized pipeline that splits a sampled
//!   large-girth multipartite base graph, attaches gadget copies, and emits
//!   an adversarial assignment for a target partition, together with exact
//!   structural verification, Monte Carlo diagnostics, and feasibility
//!   reports for the asymptotic side conditions.
//!
//! All decision procedures are exact; randomized steps are driven by an
//! explicit 64-bit seed and are reproducible byte for byte.

pub mod assignments;
pub mod bitset;
pub mod construct;
pub mod gadgets;
pub mod graph;
pub mod partitions;
pub mod rng;
