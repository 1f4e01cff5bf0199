//! JSON file formats: instances, layouts, solver results and generator output.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::crossings::count_crossings;
use crate::error::{Error, Result};
use crate::generators::{MetaEdge, MetaInstance};
use crate::instance::TanglegramInstance;
use crate::layout::{bits, leaf_order, Layout, Side};
use crate::newick::{parse_binary_newick, serialize_newick};

/// `{"left": "<newick>", "right": "<newick>"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub left: String,
    pub right: String,
}

impl InstanceFile {
    pub fn from_instance(instance: &TanglegramInstance) -> Self {
        InstanceFile {
            left: serialize_newick(instance.left()),
            right: serialize_newick(instance.right()),
        }
    }

    pub fn to_instance(&self) -> Result<TanglegramInstance> {
        TanglegramInstance::new(
            parse_binary_newick(&self.left)?,
            parse_binary_newick(&self.right)?,
        )
    }
}

/// Parses an instance file. Extra keys written by the generators
/// (`canonical_layout`) are accepted and ignored.
pub fn instance_from_json(text: &str) -> Result<TanglegramInstance> {
    #[derive(Deserialize)]
    struct Loose {
        left: String,
        right: String,
    }
    let f: Loose = serde_json::from_str(text)?;
    InstanceFile {
        left: f.left,
        right: f.right,
    }
    .to_instance()
}

pub fn instance_to_json(instance: &TanglegramInstance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance)).unwrap()
}

pub fn layout_from_json(text: &str) -> Result<Layout> {
    Ok(serde_json::from_str(text)?)
}

pub fn layout_to_json(layout: &Layout) -> String {
    serde_json::to_string(layout).unwrap()
}

/// Outcome of one solver run. Serializes with a fixed key order; optional
/// fields are omitted when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub crossings: u64,
    pub left_order: Vec<String>,
    pub right_order: Vec<String>,
    #[serde(with = "bits")]
    pub left_swaps: Vec<bool>,
    #[serde(with = "bits")]
    pub right_swaps: Vec<bool>,
    pub method: String,
    /// Crossings charged by the approximation's own accounting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counted: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_pairs: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ResultRecord {
    /// Record for `layout`, with the crossing count recomputed.
    pub fn new(instance: &TanglegramInstance, layout: &Layout, method: &str) -> Result<Self> {
        let owned = |side| -> Result<Vec<String>> {
            Ok(leaf_order(instance, layout, side)?
                .into_iter()
                .map(str::to_string)
                .collect())
        };
        Ok(ResultRecord {
            crossings: count_crossings(instance, layout)?,
            left_order: owned(Side::Left)?,
            right_order: owned(Side::Right)?,
            left_swaps: layout.left_swaps.clone(),
            right_swaps: layout.right_swaps.clone(),
            method: method.to_string(),
            counted: None,
            k: None,
            cut_weight: None,
            total_pairs: None,
            identity_holds: None,
            elapsed_ms: None,
        })
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.left_swaps.clone(), self.right_swaps.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }
}

/// Crossings of the drawing given by two label orders, counted pair by pair.
pub fn crossings_of_orders(left_order: &[String], right_order: &[String]) -> Result<u64> {
    let pos: HashMap<&str, usize> = right_order
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if pos.len() != right_order.len() || left_order.len() != right_order.len() {
        return Err(Error::InvalidParameter(
            "orders are not permutations of one label set".into(),
        ));
    }
    let mapped = left_order
        .iter()
        .map(|l| {
            pos.get(l.as_str())
                .copied()
                .ok_or_else(|| Error::LabelMismatch(l.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut count = 0;
    for i in 0..mapped.len() {
        for j in i + 1..mapped.len() {
            if mapped[i] > mapped[j] {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Generator output for a unit instance: the instance file plus the layout
/// the construction is described in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedInstance {
    pub left: String,
    pub right: String,
    pub canonical_layout: Layout,
}

impl GeneratedInstance {
    pub fn new(instance: &TanglegramInstance, canonical_layout: Layout) -> Self {
        let f = InstanceFile::from_instance(instance);
        GeneratedInstance {
            left: f.left,
            right: f.right,
            canonical_layout,
        }
    }
}

/// Generator output for a weighted meta instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaFile {
    pub left: String,
    pub right: String,
    pub meta_edges: Vec<MetaEdge>,
    pub canonical_layout: Layout,
    pub canonical_crossings: u64,
}

impl MetaFile {
    pub fn new(meta: &MetaInstance, canonical_layout: Layout) -> Result<Self> {
        Ok(MetaFile {
            left: serialize_newick(meta.left()),
            right: serialize_newick(meta.right()),
            meta_edges: meta.edges().to_vec(),
            canonical_crossings: crate::generators::count_meta_crossings(meta, &canonical_layout)?,
            canonical_layout,
        })
    }

    pub fn to_meta(&self) -> Result<MetaInstance> {
        MetaInstance::new(
            parse_binary_newick(&self.left)?,
            parse_binary_newick(&self.right)?,
            self.meta_edges.clone(),
        )
    }
}
