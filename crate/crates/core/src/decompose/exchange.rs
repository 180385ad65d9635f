//! Working state of the insertion loop: per-forest adjacency lists kept in
//! sync with the assignment, plus stamped scratch buffers so that one round
//! costs time proportional to the trees it touches rather than to `n`.

use super::{
    Certificate, DecomposeError, ExchangeTrace, ForestIndex, InsertTrace, Insertion, PartialDecomposition,
    SubtreeClass, NO_PART, UNASSIGNED,
};
use crate::graph::{EdgeId, Graph, VertexId, VertexSet};

/// `(neighbour, edge)` pairs of one vertex within one forest.
pub(super) type Adjacency = Vec<(VertexId, EdgeId)>;

/// Disjoint vertex lists stored back to back. Only the first entry of each
/// list has a fixed meaning: it is the list's smallest vertex.
#[derive(Debug, Default)]
pub(super) struct Parts {
    flat: Vec<VertexId>,
    bounds: Vec<usize>,
}

impl Parts {
    pub(super) fn clear(&mut self) {
        self.flat.clear();
        self.bounds.clear();
        self.bounds.push(0);
    }

    pub(super) fn push(&mut self, members: impl IntoIterator<Item = VertexId>) {
        if self.bounds.is_empty() {
            self.bounds.push(0);
        }
        let start = self.flat.len();
        self.flat.extend(members);
        let slice = &mut self.flat[start..];
        if let Some(min_at) = (0..slice.len()).min_by_key(|&k| slice[k]) {
            slice.swap(0, min_at);
        }
        self.bounds.push(self.flat.len());
    }

    /// Appends a list whose first entry is already its smallest vertex.
    fn push_ordered(&mut self, members: &[VertexId]) {
        if self.bounds.is_empty() {
            self.bounds.push(0);
        }
        self.flat.extend_from_slice(members);
        self.bounds.push(self.flat.len());
    }

    pub(super) fn len(&self) -> usize {
        self.bounds.len().saturating_sub(1)
    }

    pub(super) fn get(&self, p: usize) -> &[VertexId] {
        &self.flat[self.bounds[p]..self.bounds[p + 1]]
    }
}

/// Per-vertex state of a rooted tree walk.
#[derive(Clone, Copy)]
struct Node {
    seen: u32,
    tree: u32,
    parent: u32,
    count: u32,
    parent_edge: EdgeId,
}

/// Stamped buffers for walking trees of a forest.
pub(super) struct TreeScratch {
    epoch: u32,
    nodes: Vec<Node>,
    order: Vec<VertexId>,
    tree_total: Vec<u32>,
}

impl TreeScratch {
    pub(super) fn new(n: usize) -> Self {
        let blank = Node {
            seen: 0,
            tree: 0,
            parent: 0,
            count: 0,
            parent_edge: usize::MAX,
        };
        TreeScratch {
            epoch: 0,
            nodes: vec![blank; n],
            order: Vec::new(),
            tree_total: Vec::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.nodes.iter_mut().for_each(|node| node.seen = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Roots the tree containing `root` there and counts part vertices in
    /// every subtree.
    fn walk(&mut self, adj: &[Adjacency], root: VertexId, part_of: &impl Fn(VertexId) -> usize) {
        let (epoch, tid) = (self.epoch, self.tree_total.len() as u32);
        self.order.clear();
        self.order.push(root);
        self.nodes[root].seen = epoch;
        self.nodes[root].parent_edge = usize::MAX;
        let mut head = 0;
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            let from = self.nodes[x].parent_edge;
            self.nodes[x].tree = tid;
            self.nodes[x].count = (part_of(x) != NO_PART) as u32;
            for &(y, e) in &adj[x] {
                let node = &mut self.nodes[y];
                if e != from && node.seen != epoch {
                    node.seen = epoch;
                    node.parent_edge = e;
                    node.parent = x as u32;
                    self.order.push(y);
                }
            }
        }
        // Children before parents.
        for k in (1..self.order.len()).rev() {
            let x = self.order[k];
            let (up, c) = (self.nodes[x].parent as usize, self.nodes[x].count);
            self.nodes[up].count += c;
        }
        self.tree_total.push(self.nodes[root].count);
    }
}

/// Labels `parts` (disjoint, nonempty, each connected) against the forest
/// whose adjacency is `adj`. `part_of` maps a vertex to its part or
/// `NO_PART`. Labels are written to `labels` in part order.
///
/// With `first_except = Some(q)` labelling stops right after the first part
/// other than `q` that is not `Neither`.
pub(super) fn classify_core(
    adj: &[Adjacency],
    parts: &Parts,
    part_of: &impl Fn(VertexId) -> usize,
    s: &mut TreeScratch,
    labels: &mut Vec<SubtreeClass>,
    first_except: Option<usize>,
) {
    s.next_epoch();
    s.tree_total.clear();
    labels.clear();
    for p in 0..parts.len() {
        let members = parts.get(p);
        if s.nodes[members[0]].seen != s.epoch {
            s.walk(adj, members[0], part_of);
        }
        let total = s.tree_total[s.nodes[members[0]].tree as usize] as usize;
        let label = if total == members.len() {
            SubtreeClass::Isolated
        } else {
            let mut witness: Option<EdgeId> = None;
            for &x in members {
                for &(y, e) in &adj[x] {
                    if witness.is_some_and(|w| w <= e) || part_of(y) == p {
                        continue;
                    }
                    // Part vertices left on x's side once e is removed.
                    let side = if s.nodes[x].parent_edge == e {
                        s.nodes[x].count as usize
                    } else {
                        total - s.nodes[y].count as usize
                    };
                    if side == members.len() {
                        witness = Some(e);
                    }
                }
            }
            witness.map_or(SubtreeClass::Neither, SubtreeClass::Peculiar)
        };
        labels.push(label);
        if first_except.is_some_and(|q| q != p) && label != SubtreeClass::Neither {
            return;
        }
    }
}

/// Adjacency lists of every forest, indexed `[forest][vertex]`.
struct ForestLists {
    lists: Vec<Vec<Adjacency>>,
}

impl ForestLists {
    fn build(g: &Graph, d: &PartialDecomposition) -> Self {
        let mut lists = vec![Vec::new(); d.r + 1];
        for forest in lists.iter_mut().skip(1) {
            *forest = vec![Vec::new(); g.vertex_count()];
        }
        for (e, &i) in d.assign.iter().enumerate() {
            if i != UNASSIGNED {
                let (u, v) = g.endpoints(e);
                lists[i][u].push((v, e));
                lists[i][v].push((u, e));
            }
        }
        ForestLists { lists }
    }

    fn forest(&self, i: ForestIndex) -> &[Adjacency] {
        &self.lists[i]
    }

    fn relocate(&mut self, g: &Graph, e: EdgeId, from: usize, to: ForestIndex) {
        let (u, v) = g.endpoints(e);
        if from != UNASSIGNED {
            for x in [u, v] {
                let list = &mut self.lists[from][x];
                let at = list
                    .iter()
                    .position(|&(_, f)| f == e)
                    .expect("edge listed in its forest");
                list.swap_remove(at);
            }
        }
        self.lists[to][u].push((v, e));
        self.lists[to][v].push((u, e));
    }
}

/// Inserter bookkeeping for one vertex.
#[derive(Clone, Copy)]
struct Slot {
    stamp: u32,
    part: usize,
    parent_edge: EdgeId,
}

/// Reusable state for inserting edges into one graph.
pub(super) struct Inserter<'g> {
    g: &'g Graph,
    forests: ForestLists,
    epoch: u32,
    vertices: Vec<Slot>,
    component: Vec<VertexId>,
    sorted: Vec<VertexId>,
    parts: Parts,
    labels: Vec<SubtreeClass>,
    trees: TreeScratch,
}

impl<'g> Inserter<'g> {
    pub(super) fn new(g: &'g Graph, d: &PartialDecomposition) -> Self {
        let n = g.vertex_count();
        Inserter {
            g,
            forests: ForestLists::build(g, d),
            epoch: 0,
            vertices: vec![
                Slot {
                    stamp: 0,
                    part: NO_PART,
                    parent_edge: usize::MAX
                };
                n
            ],
            component: Vec::new(),
            sorted: Vec::new(),
            parts: Parts::default(),
            labels: Vec::new(),
            trees: TreeScratch::new(n),
        }
    }

    fn reassign(&mut self, d: &mut PartialDecomposition, e: EdgeId, to: ForestIndex) {
        self.forests.relocate(self.g, e, d.assign[e], to);
        d.assign[e] = to;
    }

    /// Collects the tree of `a` in forest 1 into `self.component` (BFS
    /// order), stamping membership and recording parent edges toward `a`.
    fn grow_component(&mut self, a: VertexId) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.vertices.iter_mut().for_each(|slot| slot.stamp = 0);
            self.epoch = 1;
        }
        let forest = self.forests.forest(1);
        self.component.clear();
        self.component.push(a);
        self.vertices[a].stamp = self.epoch;
        self.vertices[a].parent_edge = usize::MAX;
        let mut head = 0;
        while head < self.component.len() {
            let x = self.component[head];
            head += 1;
            for &(y, e) in &forest[x] {
                if e != self.vertices[x].parent_edge && self.vertices[y].stamp != self.epoch {
                    self.vertices[y].stamp = self.epoch;
                    self.vertices[y].parent_edge = e;
                    self.component.push(y);
                }
            }
        }
    }

    #[inline]
    fn in_component(&self, v: VertexId) -> bool {
        self.vertices[v].stamp == self.epoch
    }

    fn component_set(&self) -> VertexSet {
        self.component.iter().copied().collect()
    }

    pub(super) fn insert(
        &mut self,
        d: &mut PartialDecomposition,
        e: EdgeId,
        mut trace: Option<&mut InsertTrace>,
    ) -> Result<Insertion, DecomposeError> {
        let g = self.g;
        let (a, b) = g.endpoints(e);
        if d.r == 0 {
            return Ok(Insertion::Infeasible(Certificate::new(0, VertexSet::from([a, b]))));
        }
        let mut previous_size = usize::MAX;
        loop {
            self.grow_component(a);
            let size = self.component.len();
            if size >= previous_size {
                return Err(DecomposeError::Internal("component of a did not shrink"));
            }
            previous_size = size;
            if !self.in_component(b) {
                self.reassign(d, e, 1);
                if let Some(t) = trace.as_deref_mut() {
                    t.final_component = self.component_set();
                }
                return Ok(Insertion::Inserted);
            }

            let Some(i) = self.deficient_forest(d.r) else {
                let cert = Certificate::new(d.r, self.component_set());
                if let Some(t) = trace.as_deref_mut() {
                    t.final_component = cert.vertices().clone();
                    t.certified = true;
                }
                return Ok(Insertion::Infeasible(cert));
            };

            self.split_component(i);
            if self.parts.len() < 2 {
                return Err(DecomposeError::Internal("deficient forest spans the component"));
            }
            {
                let (vertices, epoch) = (&self.vertices, self.epoch);
                let part_of = |v: VertexId| {
                    if vertices[v].stamp == epoch {
                        vertices[v].part
                    } else {
                        NO_PART
                    }
                };
                classify_core(
                    self.forests.forest(i),
                    &self.parts,
                    &part_of,
                    &mut self.trees,
                    &mut self.labels,
                    Some(self.vertices[a].part),
                );
            }
            let a_part = self.vertices[a].part;
            let Some((chosen, label)) = self
                .labels
                .iter()
                .enumerate()
                .find(|&(p, l)| p != a_part && *l != SubtreeClass::Neither)
                .map(|(p, &l)| (p, l))
            else {
                return Err(DecomposeError::Internal("no isolated or peculiar part avoids a"));
            };

            let (v1, witness) = match label {
                SubtreeClass::Peculiar(w) => {
                    let (x, y) = g.endpoints(w);
                    let v1 = if self.in_component(x) && self.vertices[x].part == chosen {
                        x
                    } else {
                        y
                    };
                    (v1, Some(w))
                }
                _ => (self.parts.get(chosen)[0], None),
            };

            // Walk v1 -> a through forest 1; the last crossing seen is the
            // first one on the a -> v1 path.
            let mut crossing = None;
            let mut cur = v1;
            while cur != a {
                let f = self.vertices[cur].parent_edge;
                let next = g.opposite(f, cur);
                if (self.vertices[cur].part == chosen) != (self.vertices[next].part == chosen) {
                    crossing = Some(f);
                }
                cur = next;
            }
            let Some(e_d) = crossing else {
                return Err(DecomposeError::Internal("no crossing edge on the a-v1 path"));
            };

            if let Some(t) = trace.as_deref_mut() {
                t.exchanges.push(ExchangeTrace {
                    component: self.component_set(),
                    deficient_forest: i,
                    chosen_part: self.parts.get(chosen).iter().copied().collect(),
                    moved_out: e_d,
                    moved_in: witness,
                });
            }

            self.reassign(d, e_d, i);
            if let Some(w) = witness {
                self.reassign(d, w, 1);
            }
        }
    }

    /// Smallest `i >= 2` with fewer than `|C| - 1` forest-`i` edges inside `C`.
    fn deficient_forest(&self, r: usize) -> Option<ForestIndex> {
        let need = self.component.len() - 1;
        (2..=r).find(|&i| {
            let forest = self.forests.forest(i);
            let mut inside = 0;
            for &v in &self.component {
                inside += forest[v]
                    .iter()
                    .filter(|&&(w, _)| v < w && self.in_component(w))
                    .count();
            }
            inside < need
        })
    }

    /// Components of `(C, E_i ∩ C̄)` ordered by smallest vertex; fills `part`.
    fn split_component(&mut self, i: ForestIndex) {
        let forest = self.forests.forest(i);
        for &v in &self.component {
            self.vertices[v].part = NO_PART;
        }
        self.parts.clear();
        let mut remaining = self.component.len();
        for start in 0..self.vertices.len() {
            if remaining == 0 {
                break;
            }
            if self.vertices[start].stamp != self.epoch || self.vertices[start].part != NO_PART {
                continue;
            }
            let p = self.parts.len();
            self.sorted.clear();
            self.sorted.push(start);
            self.vertices[start].part = p;
            let mut head = 0;
            while head < self.sorted.len() {
                let x = self.sorted[head];
                head += 1;
                for &(y, _) in &forest[x] {
                    if self.vertices[y].stamp == self.epoch && self.vertices[y].part == NO_PART {
                        self.vertices[y].part = p;
                        self.sorted.push(y);
                    }
                }
            }
            remaining -= self.sorted.len();
            self.parts.push_ordered(&self.sorted);
        }
    }
}
