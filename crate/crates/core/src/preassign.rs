//! Moving prescribed edges into prescribed forests.
//!
//! Given a valid decomposition and distinct edges `e_1, ..., e_s` with
//! `s <= r`, edge `e_k` is brought into forest `k` one index at a time. Each
//! step either moves `e_k` directly (its endpoints are in different trees of
//! forest `k`) or swaps it with an edge of forest `k` lying on the cycle it
//! would close. Pins already placed are never touched again.

use thiserror::Error;

use crate::decompose::{Decomposition, ForestIndex};
use crate::graph::{EdgeId, Graph};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreassignError {
    #[error("{pins} pinned edges but only {r} forests")]
    TooManyPins { pins: usize, r: usize },
    #[error("pinned edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} is pinned to both forest {first} and forest {second}")]
    Duplicate {
        edge: EdgeId,
        first: ForestIndex,
        second: ForestIndex,
    },
    #[error("the input assignment is not a valid decomposition of the graph")]
    InvalidDecomposition,
}

/// Ordered pins: entry `k` (0-based) must end up in forest `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinList(Vec<EdgeId>);

impl PinList {
    pub fn new(edges: Vec<EdgeId>, g: &Graph, r: usize) -> Result<Self, PreassignError> {
        if edges.len() > r {
            return Err(PreassignError::TooManyPins { pins: edges.len(), r });
        }
        for (k, &e) in edges.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(PreassignError::UnknownEdge(e));
            }
            if let Some(j) = edges[..k].iter().position(|&f| f == e) {
                return Err(PreassignError::Duplicate {
                    edge: e,
                    first: j + 1,
                    second: k + 1,
                });
            }
        }
        Ok(PinList(edges))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Rearranges `d` so that the `k`-th pinned edge lies in forest `k`.
pub fn preassign(g: &Graph, d: &Decomposition, pins: &[EdgeId]) -> Result<Decomposition, PreassignError> {
    let pins = PinList::new(pins.to_vec(), g, d.forests())?;
    if !d.is_valid_for(g) {
        return Err(PreassignError::InvalidDecomposition);
    }
    let mut out = d.clone();
    for (k, &pinned) in pins.edges().iter().enumerate() {
        let target = k + 1;
        let source = out.forest_of(pinned);
        if source == target {
            continue;
        }
        let (u, v) = g.endpoints(pinned);
        let target_class = out.class(target);
        let Some(path) = crate::graph::tree_path(g, |e| target_class.contains(e), u, v) else {
            out.set(pinned, target);
            continue;
        };
        // Trees of the source forest once the pinned edge leaves it.
        let mut source_trees = UnionFind::new(g.vertex_count());
        for e in (0..g.edge_count()).filter(|&e| e != pinned && out.forest_of(e) == source) {
            let (x, y) = g.endpoints(e);
            source_trees.union(x, y);
        }
        let swap = path
            .into_iter()
            .find(|&e| {
                let (x, y) = g.endpoints(e);
                !source_trees.connected(x, y)
            })
            .expect("the target path joins the two trees split by removing the pinned edge");
        out.set(pinned, target);
        out.set(swap, source);
        debug_assert!(out.is_valid_for(g));
    }
    Ok(out)
}
