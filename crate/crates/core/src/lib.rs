//! Eccentricity and diameter computations on trees, systems and products of
//! trees, and cube-free median graphs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

/// Node weights and query results of the weighted tree routines. The
/// infinities are used as explicit markers: `-inf` for an absent weight,
/// `+inf` for "no candidate yet".
pub type Weight = f64;

pub mod centroid;
pub mod graph;
pub mod heavy_path;
pub mod median;
pub mod odot;
pub mod oracle;
pub mod range_tree;
pub mod reductions;
pub mod rmq;
pub mod subset_ecc;
pub mod tree;

pub use centroid::{CentroidAncestor, CentroidIndex};
pub use graph::{Graph, GraphError};
pub use heavy_path::{HeavyPathError, HeavyPathIndex, PathId};
pub use median::{
    boundary_dp, check_cube_free, check_median, diameter_cube_free, diameter_report, median_centroid,
    star_decomposition, DiameterReport, MedianError, StarDecomposition,
};
pub use odot::{MaxIndex, MinIndex, OdotError, PlusIndex, TreeSystem};
pub use range_tree::{CoordConstraint, Interval, RangeTree, RangeTreeError, ValuedPoint};
pub use reductions::{ecc_all, subset_ecc_via_min, EccReport, Embedding, EmbeddingMode, Quality, SubsetViaMin};
pub use rmq::CartesianRmq;
pub use subset_ecc::{QueryTrace, SubsetEccError, SubsetEccIndex};
pub use tree::{NodeId, Tree, TreeError};
