//! Exact geometry of convex n-partitions of R^d.
//!
//! A convex n-partition is an ordered list of n disjoint nonempty open convex
//! regions whose closures cover R^d. Everything here works on the spherical
//! side: each region lifts to the upper hemisphere of S^d inside R^{d+1}, with
//! one extra region for the lower hemisphere. Partitions are encoded by
//! oriented central hyperplane arrangements (one projective normal per
//! unordered pair of labels), and all combinatorial predicates are decided in
//! exact rational arithmetic.
//!
//! Module map:
//! - [`exactgeom`]: rationals, homogeneous vectors, cones, and the strict
//!   feasibility LP kernel.
//! - [`arrangement`]: sign-vector regions, tournament sources, the carrying
//!   test, and the projection from arrangements to partitions.
//! - [`faces`]: index sets, the face poset, half-linear faces, subfaces,
//!   pi-angles, and the adjacency graph.
//! - [`nodes`]: node systems, the refined cell complex, node frames,
//!   orientations, and combinatorial-type certificates.
//! - [`metric`]: spherical measures and the symmetric-difference distance.
//! - [`realization`]: the node-assignment constraint system, cone facet
//!   enumeration, the cone-tiling check, and reconstruction.
//! - [`atlas`]: closed-form small cases (d = 1 types, 2-partitions).

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arrangement;
pub mod atlas;
pub mod error;
pub mod exactgeom;
pub mod faces;
pub mod fixtures;
pub mod metric;
pub mod nodes;
pub mod realization;

pub use error::Error;
pub use exactgeom::{HVector, HomogeneousCone, Rat};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
