use crate::layout::Side;
use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("newick syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate leaf label {0:?}")]
    DuplicateLabel(String),
    #[error("empty leaf label at byte {pos}")]
    EmptyLabel { pos: usize },
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("inner node {node} has {arity} children, expected 2")]
    NotBinary { node: NodeId, arity: usize },
    #[error("leaf label {0:?} does not occur in both trees")]
    LabelMismatch(String),
    #[error("trees have different leaf counts ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("{side} swap vector has length {found}, expected {expected}")]
    LayoutDimension {
        side: Side,
        expected: usize,
        found: usize,
    },
    #[error("instance is not a pair of complete binary trees of equal depth; use approx_general or solve_exact")]
    NotComplete,
    #[error("swap history does not match the ancestors of node {node} on the {side} side")]
    HistoryMismatch { side: Side, node: NodeId },
    #[error("instance needs {needed} enumeration variables, cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("cut does not separate constrained pair {0}")]
    ConstraintViolation(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
