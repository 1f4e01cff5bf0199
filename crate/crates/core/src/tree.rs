use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Preorder index of a node within its tree. The root is always `0`.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub children: Vec<NodeId>,
    /// Present exactly on leaves.
    pub label: Option<String>,
}

/// Nested form of a tree, used for construction and serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subtree {
    Leaf(String),
    Inner(Vec<Subtree>),
}

impl Subtree {
    pub fn leaf(label: impl Into<String>) -> Self {
        Subtree::Leaf(label.into())
    }

    pub fn pair(first: Subtree, second: Subtree) -> Self {
        Subtree::Inner(vec![first, second])
    }
}

/// A rooted ordered tree with unique leaf labels.
///
/// Nodes are stored in preorder with children visited in their stored order,
/// so node ids double as the stable addressing used by swap vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    nodes: Vec<Node>,
    parent: Vec<Option<NodeId>>,
    depth: Vec<usize>,
    inner: Vec<NodeId>,
    inner_rank: Vec<Option<usize>>,
    leaves: Vec<NodeId>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", crate::newick::serialize_newick(self))
    }
}

impl Tree {
    pub fn from_subtree(shape: &Subtree) -> Result<Tree> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut parent = Vec::new();
        let mut depth = Vec::new();
        let mut stack: Vec<(&Subtree, Option<NodeId>)> = vec![(shape, None)];
        let mut seen = HashSet::new();
        while let Some((sub, par)) = stack.pop() {
            let id = nodes.len();
            let d = par.map_or(0, |p| depth[p] + 1);
            if let Some(p) = par {
                nodes[p].children.push(id);
            }
            parent.push(par);
            depth.push(d);
            match sub {
                Subtree::Leaf(label) => {
                    if label.is_empty() {
                        return Err(Error::EmptyLabel { pos: 0 });
                    }
                    if !seen.insert(label.as_str()) {
                        return Err(Error::DuplicateLabel(label.clone()));
                    }
                    nodes.push(Node {
                        children: Vec::new(),
                        label: Some(label.clone()),
                    });
                }
                Subtree::Inner(children) => {
                    if children.is_empty() {
                        return Err(Error::MalformedTree(
                            "inner node without children".to_string(),
                        ));
                    }
                    nodes.push(Node {
                        children: Vec::with_capacity(children.len()),
                        label: None,
                    });
                    for child in children.iter().rev() {
                        stack.push((child, Some(id)));
                    }
                }
            }
        }
        Ok(Self::index(nodes, parent, depth))
    }

    fn index(nodes: Vec<Node>, parent: Vec<Option<NodeId>>, depth: Vec<usize>) -> Tree {
        let mut inner = Vec::new();
        let mut inner_rank = vec![None; nodes.len()];
        let mut leaves = Vec::new();
        for (id, node) in nodes.iter().enumerate() {
            if node.children.is_empty() {
                leaves.push(id);
            } else {
                inner_rank[id] = Some(inner.len());
                inner.push(id);
            }
        }
        Tree {
            nodes,
            parent,
            depth,
            inner,
            inner_rank,
            leaves,
        }
    }

    pub fn to_subtree(&self) -> Subtree {
        self.subtree_at(0)
    }

    fn subtree_at(&self, id: NodeId) -> Subtree {
        let node = &self.nodes[id];
        match &node.label {
            Some(label) if node.children.is_empty() => Subtree::Leaf(label.clone()),
            _ => Subtree::Inner(node.children.iter().map(|&c| self.subtree_at(c)).collect()),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn label(&self, id: NodeId) -> Option<&str> {
        self.nodes[id].label.as_deref()
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.nodes[id].children.is_empty()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn depth(&self, id: NodeId) -> usize {
        self.depth[id]
    }

    /// Inner nodes in preorder. Position in this slice is the node's inner rank.
    pub fn inner_nodes(&self) -> &[NodeId] {
        &self.inner
    }

    pub fn inner_count(&self) -> usize {
        self.inner.len()
    }

    pub fn inner_rank(&self, id: NodeId) -> Option<usize> {
        self.inner_rank[id]
    }

    /// Leaves in stored (all-zero layout) order.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Proper ancestors of `id`, root first.
    pub fn ancestors(&self, id: NodeId) -> Vec<NodeId> {
        let mut path = Vec::with_capacity(self.depth[id]);
        let mut cur = self.parent[id];
        while let Some(p) = cur {
            path.push(p);
            cur = self.parent[p];
        }
        path.reverse();
        path
    }

    pub fn height(&self) -> usize {
        self.leaves
            .iter()
            .map(|&l| self.depth[l])
            .max()
            .unwrap_or(0)
    }

    pub fn is_binary(&self) -> bool {
        self.inner
            .iter()
            .all(|&v| self.nodes[v].children.len() == 2)
    }

    pub fn check_binary(&self) -> Result<()> {
        match self
            .inner
            .iter()
            .find(|&&v| self.nodes[v].children.len() != 2)
        {
            Some(&node) => Err(Error::NotBinary {
                node,
                arity: self.nodes[node].children.len(),
            }),
            None => Ok(()),
        }
    }

    /// Binary with every leaf at the same depth.
    pub fn is_complete(&self) -> bool {
        let h = self.height();
        self.is_binary() && self.leaves.iter().all(|&l| self.depth[l] == h)
    }

    /// Copy of the tree with the children of every inner node whose bit is
    /// set reversed. `swaps` is indexed by inner rank.
    pub fn reordered(&self, swaps: &[bool]) -> Tree {
        assert_eq!(swaps.len(), self.inner.len());
        fn rec(tree: &Tree, id: NodeId, swaps: &[bool]) -> Subtree {
            let node = &tree.nodes[id];
            match tree.inner_rank[id] {
                None => Subtree::Leaf(node.label.clone().unwrap_or_default()),
                Some(rank) => {
                    let mut kids: Vec<Subtree> =
                        node.children.iter().map(|&c| rec(tree, c, swaps)).collect();
                    if swaps[rank] {
                        kids.reverse();
                    }
                    Subtree::Inner(kids)
                }
            }
        }
        Tree::from_subtree(&rec(self, 0, swaps)).expect("reordering preserves validity")
    }

    /// Leaf count below every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![0; self.nodes.len()];
        for id in (0..self.nodes.len()).rev() {
            size[id] = if self.is_leaf(id) {
                1
            } else {
                self.nodes[id].children.iter().map(|&c| size[c]).sum()
            };
        }
        size
    }
}
