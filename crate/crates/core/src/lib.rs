//! Layout and crossing minimization for binary tanglegrams.
//!
//! A tanglegram is a pair of rooted binary trees over the same leaf labels,
//! drawn facing each other with straight segments joining equal labels. A
//! layout fixes the child order at every inner node; the goal is a layout
//! with few segment crossings.
//!
//! The crate provides
//! - exact crossing counting ([`count_crossings`]) and the pairwise crossing
//!   tables ([`CrossingTables`]) that decompose the count per pair of inner nodes,
//! - the recursive 2-approximation for complete trees ([`rec_split`]) and its
//!   heuristic extension to arbitrary binary trees ([`approx_general`]),
//! - a fixed-parameter search in the number of crossings ([`solve_fpt`]),
//! - a brute-force optimum used as the reference oracle ([`solve_exact`]),
//! - the reduction of the non-crossing-pairs objective to a constrained
//!   max-cut problem ([`dual`]),
//! - instance generators and an SVG renderer.

pub mod approx;
pub mod crossings;
pub mod dual;
mod error;
pub mod exact;
pub mod fpt;
pub mod generators;
mod instance;
mod layout;
pub mod lca;
pub mod newick;
pub mod record;
pub mod render;
mod tree;

pub use approx::{approx_general, rec_split, ApproxResult, SwapHistory};
pub use crossings::{
    build_tables, count_crossings, count_crossings_pairwise, crossings_from_tables, edges_cross,
    CrossingTables,
};
pub use error::{Error, Result};
pub use exact::{solve_exact, solve_exact_with_cap, DEFAULT_EXACT_CAP};
pub use fpt::{is_planar, min_crossings_fpt, solve_fpt};
pub use instance::{build_instance, TanglegramInstance};
pub use layout::{leaf_order, mirror, Layout, Side};
pub use lca::LcaIndex;
pub use newick::{parse_binary_newick, parse_newick, serialize_newick};
pub use tree::{Node, NodeId, Subtree, Tree};

/// Number of unordered pairs of inter-tree edges in an `n`-leaf instance.
pub fn total_pairs(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}
