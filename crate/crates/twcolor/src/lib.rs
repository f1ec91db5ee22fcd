//! Online coloring of triangle-free and clique-free graphs of bounded
//! tree-width.
//!
//! The crate provides, end to end:
//!
//! - simple graphs with exhaustive desk-scale oracles (independence, clique
//!   freeness, exact chromatic number, exact tree-width) in [`graph`] and
//!   [`oracle`];
//! - tree/path decompositions, validation, normalization to the nice form
//!   (empty first bag, one new vertex per step), and PACE-format I/O in
//!   [`decomposition`] and [`pace`];
//! - the online-coloring contract, a first-fit baseline, and the
//!   bounded-palette rule that colors triangle-free width-t reveals with at
//!   most ceil((t+3)/2) colors in [`online`];
//! - the offline driver that turns any online algorithm into an offline
//!   coloring procedure over a rooted nice tree decomposition in [`offline`];
//! - adaptive adversaries forcing any online algorithm to spend g(t,k)
//!   colors on K_k-free width-t inputs in [`adversary`];
//! - a seeded instance generator, suite orchestration, and reports in
//!   [`gen`] and [`experiments`].
//!
//! Batch workloads run data-parallel over rayon by default; build with
//! `--no-default-features` for the purely sequential fallback. Both modes
//! produce identical results.

pub mod adversary;
pub mod decomposition;
pub mod error;
pub mod experiments;
pub mod gen;
pub mod graph;
pub mod offline;
pub mod online;
pub mod oracle;
pub mod pace;
pub mod par;
pub mod victims;

pub use error::{Error, Result};
