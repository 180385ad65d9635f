//! Multigraph representation and the forest primitives the rest of the
//! crate is built on: edge/vertex subsets, restriction edge counts,
//! acyclicity, components and paths inside forests.
//!
//! Vertices are dense ids `0..n`, edges are addressed by their position in
//! the edge list. Parallel edges and self-loops are both representable.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::union_find::UnionFind;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} has endpoint {vertex} but the graph has only {n} vertices")]
    EndpointOutOfRange { edge: EdgeId, vertex: VertexId, n: usize },
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge subset contains a cycle")]
    NotAForest,
}

/// Immutable undirected multigraph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        for (id, (u, v)) in edges.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: id, vertex: w, n });
                }
            }
            incidence[u].push(id);
            if u != v {
                incidence[v].push(id);
            }
            list.push([u, v]);
        }
        Ok(Graph {
            n,
            edges: list,
            incidence,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    /// Complete graph `K_n`, edges in lexicographic order of endpoints.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph endpoints are in range")
    }

    /// Complete bipartite graph `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("bipartite endpoints are in range")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [u, v] = self.edges[e];
        (u, v)
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a loop).
    #[inline]
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge ids incident with `v`; a self-loop is listed once.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().map(|&[u, v]| (u, v))
    }

    #[inline]
    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [u, v] = self.edges[e];
        u == v
    }

    /// Smallest edge id that is a self-loop.
    pub fn first_loop(&self) -> Option<EdgeId> {
        (0..self.edge_count()).find(|&e| self.is_loop(e))
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edge_count())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_sorted_unchecked((0..self.n).collect())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Membership mask over the edge ids of one graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    mask: Vec<bool>,
    len: usize,
}

impl EdgeSubset {
    pub fn empty(m: usize) -> Self {
        EdgeSubset {
            mask: vec![false; m],
            len: 0,
        }
    }

    pub fn full(m: usize) -> Self {
        EdgeSubset {
            mask: vec![true; m],
            len: m,
        }
    }

    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = EdgeSubset::empty(m);
        for e in ids {
            s.insert(e);
        }
        s
    }

    /// Size of the universe (edge count of the underlying graph).
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    /// Returns whether the edge was newly added.
    pub fn insert(&mut self, e: EdgeId) -> bool {
        let added = !self.mask[e];
        self.mask[e] = true;
        self.len += added as usize;
        added
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        let present = self.contains(e);
        if present {
            self.mask[e] = false;
            self.len -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.mask.iter().enumerate().filter_map(|(e, &b)| b.then_some(e))
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A set of vertex ids, kept sorted and free of duplicates.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(ids: Vec<VertexId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    /// Ascending iteration.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Dense membership mask of length `n`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut ids: Vec<_> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }
}

impl<const N: usize> From<[VertexId; N]> for VertexSet {
    fn from(ids: [VertexId; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Number of edges with both endpoints in `x`, parallel edges counted with
/// multiplicity and a loop at `v` counted whenever `v` is in `x`.
pub fn restriction_edge_count(g: &Graph, x: &VertexSet) -> usize {
    // Walk the incidence lists of x; each edge is charged to its smaller endpoint.
    let mask = x.to_mask(g.vertex_count());
    x.iter()
        .map(|v| {
            g.incident(v)
                .iter()
                .filter(|&&e| {
                    let (a, b) = g.endpoints(e);
                    let w = if a == v { b } else { a };
                    mask[w] && v <= w
                })
                .count()
        })
        .sum()
}

pub fn is_forest(g: &Graph, s: &EdgeSubset) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    s.iter().all(|e| {
        let (u, v) = g.endpoints(e);
        uf.union(u, v)
    })
}

/// Connected components of `(V, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component index of every vertex.
    pub index: Vec<usize>,
    /// Components ordered by their smallest vertex id.
    pub parts: Vec<VertexSet>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn same(&self, u: VertexId, v: VertexId) -> bool {
        self.index[u] == self.index[v]
    }
}

pub fn components(g: &Graph, s: &EdgeSubset) -> Components {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in s.iter() {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    // Scanning vertices in increasing order numbers components by their minimum.
    let mut root_index = vec![usize::MAX; n];
    let mut index = vec![0; n];
    let mut parts: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        let root = uf.find(v);
        if root_index[root] == usize::MAX {
            root_index[root] = parts.len();
            parts.push(Vec::new());
        }
        index[v] = root_index[root];
        parts[index[v]].push(v);
    }
    Components {
        index,
        parts: parts.into_iter().map(VertexSet::from_sorted_unchecked).collect(),
    }
}

/// Edge ids of the unique `u`–`v` path in the forest `(V, s)`, in order from
/// `u`. `Ok(None)` when `u` and `v` lie in different trees.
pub fn path_in_forest(g: &Graph, s: &EdgeSubset, u: VertexId, v: VertexId) -> Result<Option<Vec<EdgeId>>, GraphError> {
    let n = g.vertex_count();
    for w in [u, v] {
        if w >= n {
            return Err(GraphError::VertexOutOfRange { vertex: w, n });
        }
    }
    if !is_forest(g, s) {
        return Err(GraphError::NotAForest);
    }
    Ok(tree_path(g, |e| s.contains(e), u, v))
}

/// BFS path search restricted to edges accepted by `in_forest`. The caller
/// guarantees acyclicity, so the path found is the unique one.
pub(crate) fn tree_path(
    g: &Graph,
    in_forest: impl Fn(EdgeId) -> bool,
    u: VertexId,
    v: VertexId,
) -> Option<Vec<EdgeId>> {
    if u == v {
        return Some(Vec::new());
    }
    let mut via: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([v]);
    seen[v] = true;
    // Search from v so that following `via` from u yields the path in u→v order.
    while let Some(x) = queue.pop_front() {
        for &e in g.incident(x) {
            if !in_forest(e) {
                continue;
            }
            let y = g.opposite(e, x);
            if seen[y] {
                continue;
            }
            seen[y] = true;
            via[y] = Some(e);
            if y == u {
                let mut path = Vec::new();
                let mut cur = u;
                while cur != v {
                    let e = via[cur].expect("BFS parent edge");
                    path.push(e);
                    cur = g.opposite(e, cur);
                }
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}
