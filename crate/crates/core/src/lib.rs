//! Exact tools for state-independent contextuality (SIC) sets of rank-one
//! projectors and the graph theory around them.
//!
//! * [`graph`]: bit-matrix graphs, graph6, canonical forms, independent sets.
//! * [`exact`]: rationals, an exact simplex solver, exact PSD checks.
//! * [`coloring`]: chromatic and fractional chromatic numbers.
//! * [`enumeration`]: square-free connected graphs by canonical augmentation.
//! * [`certify`]: the SIC decision procedure and its inequality.
//! * [`realize`]: numerical search for orthogonal representations.

pub mod certify;
pub mod coloring;
pub mod enumeration;
pub mod exact;
pub mod graph;
pub mod realize;
