use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tree::{NodeId, Tree};

/// A validated pair of binary trees over the same leaf labels. Each label
/// defines one inter-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TanglegramInstance {
    left: Tree,
    right: Tree,
    n: usize,
    /// Right leaf paired with each left leaf, keyed by left node id.
    partner_of_left: Vec<Option<NodeId>>,
    partner_of_right: Vec<Option<NodeId>>,
    left_by_label: HashMap<String, NodeId>,
    right_by_label: HashMap<String, NodeId>,
}

impl TanglegramInstance {
    pub fn new(left: Tree, right: Tree) -> Result<Self> {
        left.check_binary()?;
        right.check_binary()?;
        if left.leaf_count() != right.leaf_count() {
            return Err(Error::SizeMismatch {
                left: left.leaf_count(),
                right: right.leaf_count(),
            });
        }
        let by_label = |t: &Tree| -> HashMap<String, NodeId> {
            t.leaves()
                .iter()
                .map(|&l| (t.label(l).unwrap().to_string(), l))
                .collect()
        };
        let left_by_label = by_label(&left);
        let right_by_label = by_label(&right);
        let mut partner_of_left = vec![None; left.len()];
        let mut partner_of_right = vec![None; right.len()];
        for &l in left.leaves() {
            let label = left.label(l).unwrap();
            let r = *right_by_label
                .get(label)
                .ok_or_else(|| Error::LabelMismatch(label.to_string()))?;
            partner_of_left[l] = Some(r);
            partner_of_right[r] = Some(l);
        }
        Ok(TanglegramInstance {
            n: left.leaf_count(),
            left,
            right,
            partner_of_left,
            partner_of_right,
            left_by_label,
            right_by_label,
        })
    }

    pub fn left(&self) -> &Tree {
        &self.left
    }

    pub fn right(&self) -> &Tree {
        &self.right
    }

    /// Leaf count of either tree.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner_of_left(&self, leaf: NodeId) -> NodeId {
        self.partner_of_left[leaf].expect("not a left leaf")
    }

    pub fn partner_of_right(&self, leaf: NodeId) -> NodeId {
        self.partner_of_right[leaf].expect("not a right leaf")
    }

    pub fn left_leaf(&self, label: &str) -> Option<NodeId> {
        self.left_by_label.get(label).copied()
    }

    pub fn right_leaf(&self, label: &str) -> Option<NodeId> {
        self.right_by_label.get(label).copied()
    }

    /// Both trees complete and of the same depth.
    pub fn is_complete(&self) -> bool {
        self.left.is_complete()
            && self.right.is_complete()
            && self.left.height() == self.right.height()
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }
}

/// Validates `left` and `right` as a tanglegram instance.
pub fn build_instance(left: Tree, right: Tree) -> Result<TanglegramInstance> {
    TanglegramInstance::new(left, right)
}
