use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::TanglegramInstance;
use crate::tree::{NodeId, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One swap bit per inner node of each tree, indexed by preorder inner rank.
/// A set bit reverses the node's two children relative to the stored order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    #[serde(with = "bits")]
    pub left_swaps: Vec<bool>,
    #[serde(with = "bits")]
    pub right_swaps: Vec<bool>,
}

impl Layout {
    pub fn new(left_swaps: Vec<bool>, right_swaps: Vec<bool>) -> Self {
        Layout {
            left_swaps,
            right_swaps,
        }
    }

    /// The stored child order on both sides.
    pub fn identity(instance: &TanglegramInstance) -> Self {
        Layout {
            left_swaps: vec![false; instance.left().inner_count()],
            right_swaps: vec![false; instance.right().inner_count()],
        }
    }

    pub fn swaps(&self, side: Side) -> &[bool] {
        match side {
            Side::Left => &self.left_swaps,
            Side::Right => &self.right_swaps,
        }
    }

    pub fn check(&self, instance: &TanglegramInstance) -> Result<()> {
        for (side, tree) in [
            (Side::Left, instance.left()),
            (Side::Right, instance.right()),
        ] {
            let found = self.swaps(side).len();
            if found != tree.inner_count() {
                return Err(Error::LayoutDimension {
                    side,
                    expected: tree.inner_count(),
                    found,
                });
            }
        }
        Ok(())
    }

    /// Concatenated bit string, left side first.
    pub fn bit_string(&self) -> String {
        self.left_swaps
            .iter()
            .chain(&self.right_swaps)
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }
}

/// Leaves of `tree` from top to bottom under `swaps`.
pub(crate) fn leaf_order_nodes(tree: &Tree, swaps: &[bool]) -> Vec<NodeId> {
    let mut order = Vec::with_capacity(tree.leaf_count());
    let mut stack = vec![tree.root()];
    while let Some(id) = stack.pop() {
        match tree.inner_rank(id) {
            None => order.push(id),
            Some(rank) => {
                let kids = tree.children(id);
                if swaps[rank] {
                    stack.extend(kids.iter().copied());
                } else {
                    stack.extend(kids.iter().rev().copied());
                }
            }
        }
    }
    order
}

/// Leaf labels of one side in drawn order.
pub fn leaf_order<'a>(
    instance: &'a TanglegramInstance,
    layout: &Layout,
    side: Side,
) -> Result<Vec<&'a str>> {
    layout.check(instance)?;
    let tree = match side {
        Side::Left => instance.left(),
        Side::Right => instance.right(),
    };
    Ok(leaf_order_nodes(tree, layout.swaps(side))
        .into_iter()
        .map(|l| tree.label(l).unwrap())
        .collect())
}

/// Flips every swap bit; the drawing is reflected and keeps its crossing count.
pub fn mirror(layout: &Layout) -> Layout {
    Layout {
        left_swaps: layout.left_swaps.iter().map(|b| !b).collect(),
        right_swaps: layout.right_swaps.iter().map(|b| !b).collect(),
    }
}

pub(crate) mod bits {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(bits.iter().map(|&b| u8::from(b)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        let raw = Vec::<u8>::deserialize(d)?;
        raw.into_iter()
            .map(|b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(D::Error::custom(format!(
                    "swap bit must be 0 or 1, got {other}"
                ))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::build_instance;
    use crate::newick::parse_newick;

    fn depth2() -> TanglegramInstance {
        build_instance(
            parse_newick("((a,b),(c,d));").unwrap(),
            parse_newick("((a,b),(c,d));").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_order() {
        let inst = depth2();
        let l = Layout::identity(&inst);
        assert_eq!(
            leaf_order(&inst, &l, Side::Left).unwrap(),
            ["a", "b", "c", "d"]
        );
    }

    #[test]
    fn root_swap() {
        let inst = depth2();
        let l = Layout::new(vec![true, false, false], vec![false; 3]);
        assert_eq!(
            leaf_order(&inst, &l, Side::Left).unwrap(),
            ["c", "d", "a", "b"]
        );
    }

    #[test]
    fn three_swaps_reverse() {
        let inst = depth2();
        let l = Layout::new(vec![true; 3], vec![false; 3]);
        assert_eq!(
            leaf_order(&inst, &l, Side::Left).unwrap(),
            ["d", "c", "b", "a"]
        );
        assert_eq!(
            leaf_order(&inst, &l, Side::Right).unwrap(),
            ["a", "b", "c", "d"]
        );
    }

    #[test]
    fn dimension_mismatch() {
        let inst = depth2();
        let l = Layout::new(vec![false; 2], vec![false; 3]);
        assert!(matches!(
            leaf_order(&inst, &l, Side::Right),
            Err(Error::LayoutDimension {
                side: Side::Left,
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn mirror_involution() {
        let l = Layout::new(vec![false, true], vec![false]);
        assert_eq!(mirror(&l), Layout::new(vec![true, false], vec![true]));
        assert_eq!(mirror(&mirror(&l)), l);
    }

    #[test]
    fn json_format() {
        let l = Layout::new(vec![false, true], vec![true]);
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(text, r#"{"left_swaps":[0,1],"right_swaps":[1]}"#);
        let back: Layout = serde_json::from_str(&text).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Layout>(r#"{"left_swaps":[2],"right_swaps":[]}"#).is_err());
    }
}
