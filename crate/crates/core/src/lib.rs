//! Latin bitrades and multi-fold MDS codes in the k-ary n-dimensional hypercube.
//!
//! The space `Q_k^n` is the set of words of length `n` over the alphabet
//! `{0, .., k-1}`. A *line* is a maximal axis-parallel set of `k` cells that
//! agree everywhere except in one coordinate. A *t-fold MDS code* meets every
//! line in exactly `t` cells; a *latin bitrade* meets every line in `0` or `2`
//! cells. Bitrades arise as symmetric differences of pairs of MDS codes, and
//! their possible sizes and embeddability are tightly constrained.
//!
//! The crate is organised in four layers:
//!
//! * [`cube`] — spaces, points, rank arithmetic, cell sets, lines, faces, and
//!   the Hamming adjacency induced on a cell set;
//! * [`verify`] — certified predicates: bitrade, t-fold MDS, bipartiteness,
//!   minimality, embeddability. Every verdict carries a witness;
//! * [`construct`] — explicit families: parity-driven bitrades on `Q_3^n`,
//!   the size-`2^{n+1} - 2^{s+1}` family, linear MDS codes, quasigroup
//!   graphs, and pair functions whose lifts are 2-fold MDS codes in `Q_4^n`;
//! * [`search`] — exhaustive engines: bitrade and MDS enumeration, pairwise
//!   symmetric-difference spectra, splittability, embedding search, and
//!   partial quasigroup completion.
//!
//! All enumeration is deterministic: identical inputs produce identical
//! reports, independent of the worker count.

pub mod construct;
pub mod cube;
mod error;
pub mod rng;
pub mod search;
pub mod verify;

pub use error::{Error, Result};
