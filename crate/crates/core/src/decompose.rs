//! Forest decomposition by edge insertion with exchange steps.
//!
//! Edges are inserted one at a time, always into forest 1. When the new edge
//! `ab` would close a cycle there, let `C` be the tree of forest 1 that holds
//! `a`. Either every other forest already spans `C` with `|C| - 1` edges
//! (then `C` itself violates the density bound and is returned as a
//! certificate), or some forest `i` is disconnected on `C`. The pieces of
//! forest `i` inside `C` are classified as isolated or peculiar, and one or
//! two edges are swapped between forest 1 and forest `i` so that the tree of
//! `a` in forest 1 strictly shrinks. The loop therefore ends after at most
//! `n` rounds, either with `b` outside `C` or with a certificate.

mod exchange;

use thiserror::Error;

use self::exchange::{classify_core, Adjacency, Inserter, Parts, TreeScratch};
use crate::graph::{components, is_forest, restriction_edge_count, EdgeId, EdgeSubset, Graph, VertexId, VertexSet};

/// 1-based forest index.
pub type ForestIndex = usize;

const UNASSIGNED: usize = 0;
const NO_PART: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is already assigned to a forest")]
    AlreadyAssigned(EdgeId),
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("partial assignment covers {found} edges but the graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("edge {edge} has forest index {index} outside 1..={r}")]
    IndexOutOfRange { edge: EdgeId, index: usize, r: usize },
    #[error("forest {0} of the partial assignment contains a cycle")]
    CyclicForest(ForestIndex),
    #[error("exchange invariant violated: {0}")]
    Internal(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("edge subset is not a forest")]
    NotAForest,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: VertexId },
    #[error("vertex {vertex} belongs to parts {first} and {second}")]
    Overlap {
        vertex: VertexId,
        first: usize,
        second: usize,
    },
    #[error("part {0} is not connected in the forest")]
    Disconnected(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArboricityError {
    #[error("edge {0} is a self-loop, so no number of forests suffices")]
    SelfLoop(EdgeId),
}

/// Total assignment of edges to forests `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    r: usize,
    assign: Vec<ForestIndex>,
}

impl Decomposition {
    /// Builds a decomposition from raw indices; only the index range is
    /// checked here, acyclicity is the caller's (or the verifier's) concern.
    pub fn new(r: usize, assign: Vec<ForestIndex>) -> Result<Self, DecomposeError> {
        if let Some((edge, &index)) = assign.iter().enumerate().find(|(_, &i)| i == 0 || i > r) {
            return Err(DecomposeError::IndexOutOfRange { edge, index, r });
        }
        Ok(Decomposition { r, assign })
    }

    pub fn empty(r: usize) -> Self {
        Decomposition { r, assign: Vec::new() }
    }

    pub fn forests(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.assign.len()
    }

    pub fn forest_of(&self, e: EdgeId) -> ForestIndex {
        self.assign[e]
    }

    pub fn assignment(&self) -> &[ForestIndex] {
        &self.assign
    }

    /// Edge set `E_i`.
    pub fn class(&self, i: ForestIndex) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.assign.len(),
            (0..self.assign.len()).filter(|&e| self.assign[e] == i),
        )
    }

    /// Every class acyclic and the assignment sized to `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.assign.len() == g.edge_count() && (1..=self.r).all(|i| is_forest(g, &self.class(i)))
    }

    pub(crate) fn set(&mut self, e: EdgeId, i: ForestIndex) {
        debug_assert!((1..=self.r).contains(&i));
        self.assign[e] = i;
    }
}

/// Assignment of a subset of the edges to forests `1..=r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialDecomposition {
    r: usize,
    // UNASSIGNED or a forest index
    assign: Vec<usize>,
}

impl PartialDecomposition {
    pub fn new(r: usize, m: usize) -> Self {
        PartialDecomposition {
            r,
            assign: vec![UNASSIGNED; m],
        }
    }

    pub fn forests(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.assign.len()
    }

    pub fn forest_of(&self, e: EdgeId) -> Option<ForestIndex> {
        match self.assign[e] {
            UNASSIGNED => None,
            i => Some(i),
        }
    }

    /// Assigns `e` to forest `i`, or unassigns it with `None`.
    pub fn set(&mut self, e: EdgeId, i: Option<ForestIndex>) -> Result<(), DecomposeError> {
        if e >= self.assign.len() {
            return Err(DecomposeError::UnknownEdge(e));
        }
        match i {
            Some(i) if i == 0 || i > self.r => Err(DecomposeError::IndexOutOfRange {
                edge: e,
                index: i,
                r: self.r,
            }),
            _ => {
                self.assign[e] = i.unwrap_or(UNASSIGNED);
                Ok(())
            }
        }
    }

    pub fn class(&self, i: ForestIndex) -> EdgeSubset {
        EdgeSubset::from_ids(
            self.assign.len(),
            (0..self.assign.len()).filter(|&e| self.assign[e] == i),
        )
    }

    pub fn is_complete(&self) -> bool {
        self.assign.iter().all(|&i| i != UNASSIGNED)
    }

    pub fn into_decomposition(self) -> Option<Decomposition> {
        self.is_complete().then_some(Decomposition {
            r: self.r,
            assign: self.assign,
        })
    }

    fn check_against(&self, g: &Graph) -> Result<(), DecomposeError> {
        if self.assign.len() != g.edge_count() {
            return Err(DecomposeError::SizeMismatch {
                expected: g.edge_count(),
                found: self.assign.len(),
            });
        }
        for i in 1..=self.r {
            if !is_forest(g, &self.class(i)) {
                return Err(DecomposeError::CyclicForest(i));
            }
        }
        Ok(())
    }
}

impl From<Decomposition> for PartialDecomposition {
    fn from(d: Decomposition) -> Self {
        PartialDecomposition {
            r: d.r,
            assign: d.assign,
        }
    }
}

/// A nonempty vertex set `X` with `e(X) > r(|X| - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    r: usize,
    vertices: VertexSet,
}

impl Certificate {
    pub fn new(r: usize, vertices: VertexSet) -> Self {
        Certificate { r, vertices }
    }

    /// The forest count this certificate refutes.
    pub fn forests(&self) -> usize {
        self.r
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// `r(|X| - 1)`, the most edges `r` forests can place inside `X`.
    pub fn bound(&self) -> usize {
        self.r * self.vertices.len().saturating_sub(1)
    }

    pub fn holds_for(&self, g: &Graph) -> bool {
        !self.vertices.is_empty()
            && self.vertices.iter().all(|v| v < g.vertex_count())
            && restriction_edge_count(g, &self.vertices) > self.bound()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible(Decomposition),
    Infeasible(Certificate),
}

impl Verdict {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            Verdict::Feasible(d) => Some(d),
            Verdict::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Feasible(_) => None,
            Verdict::Infeasible(c) => Some(c),
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insertion {
    Inserted,
    Infeasible(Certificate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubtreeClass {
    Isolated,
    /// Removing the witness edge leaves the part alone in its tree.
    Peculiar(EdgeId),
    Neither,
}

/// One exchange round of an insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeTrace {
    /// Tree of `a` in forest 1 at the start of the round.
    pub component: VertexSet,
    pub deficient_forest: ForestIndex,
    pub chosen_part: VertexSet,
    /// Edge moved from forest 1 to the deficient forest.
    pub moved_out: EdgeId,
    /// Peculiar witness moved back into forest 1.
    pub moved_in: Option<EdgeId>,
}

/// Full record of a single insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertTrace {
    pub edge: EdgeId,
    pub exchanges: Vec<ExchangeTrace>,
    /// Tree of `a` in forest 1 when the loop stopped.
    pub final_component: VertexSet,
    pub certified: bool,
}

impl InsertTrace {
    /// Loop rounds, counting the terminating one.
    pub fn iterations(&self) -> usize {
        self.exchanges.len() + 1
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.exchanges
            .iter()
            .map(|x| x.component.len())
            .chain(std::iter::once(self.final_component.len()))
            .collect()
    }
}

/// Classifies disjoint connected `parts` of the forest `(V, t)`.
pub fn classify_subtrees(g: &Graph, t: &EdgeSubset, parts: &[VertexSet]) -> Result<Vec<SubtreeClass>, ClassifyError> {
    let n = g.vertex_count();
    if !is_forest(g, t) {
        return Err(ClassifyError::NotAForest);
    }
    let mut part_of = vec![NO_PART; n];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(ClassifyError::EmptyPart(p));
        }
        for v in part.iter() {
            if v >= n {
                return Err(ClassifyError::VertexOutOfRange { vertex: v });
            }
            if part_of[v] != NO_PART {
                return Err(ClassifyError::Overlap {
                    vertex: v,
                    first: part_of[v],
                    second: p,
                });
            }
            part_of[v] = p;
        }
    }
    // Each part must be connected using t-edges inside the part.
    let induced = EdgeSubset::from_ids(
        g.edge_count(),
        t.iter().filter(|&e| {
            let (u, v) = g.endpoints(e);
            part_of[u] != NO_PART && part_of[u] == part_of[v]
        }),
    );
    let comps = components(g, &induced);
    for (p, part) in parts.iter().enumerate() {
        let c = comps.index[part.as_slice()[0]];
        if part.iter().any(|v| comps.index[v] != c) {
            return Err(ClassifyError::Disconnected(p));
        }
    }

    let mut adj: Vec<Adjacency> = vec![Vec::new(); n];
    for e in t.iter() {
        let (u, v) = g.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut lists = Parts::default();
    for part in parts {
        lists.push(part.iter());
    }
    let mut labels = Vec::with_capacity(parts.len());
    classify_core(
        &adj,
        &lists,
        &|v| part_of[v],
        &mut TreeScratch::new(n),
        &mut labels,
        None,
    );
    Ok(labels)
}

/// Smallest forest `i >= 2` holding fewer than `|c| - 1` edges inside `c`.
pub fn find_deficient_forest(g: &Graph, d: &PartialDecomposition, c: &VertexSet) -> Option<ForestIndex> {
    if d.r < 2 || c.is_empty() {
        return None;
    }
    let mask = c.to_mask(g.vertex_count());
    let mut inside = vec![0usize; d.r + 1];
    for v in c.iter() {
        for &e in g.incident(v) {
            let w = g.opposite(e, v);
            if mask[w] && v <= w {
                inside[d.assign[e]] += 1;
            }
        }
    }
    (2..=d.r).find(|&i| inside[i] < c.len() - 1)
}

/// Inserts `e` into forest 1 of `partial`, exchanging edges as needed.
///
/// On `Insertion::Infeasible` the partial assignment is left as it was after
/// the last exchange (still valid, `e` unassigned).
pub fn insert_edge(
    g: &Graph,
    partial: &mut PartialDecomposition,
    e: EdgeId,
    trace: Option<&mut InsertTrace>,
) -> Result<Insertion, DecomposeError> {
    if e >= g.edge_count() {
        return Err(DecomposeError::UnknownEdge(e));
    }
    partial.check_against(g)?;
    if partial.assign[e] != UNASSIGNED {
        return Err(DecomposeError::AlreadyAssigned(e));
    }
    if g.is_loop(e) {
        return Err(DecomposeError::SelfLoop(e));
    }
    Inserter::new(g, partial).insert(partial, e, trace)
}

/// Partitions the edges of `g` into `r` forests or certifies that no such
/// partition exists.
pub fn decompose(g: &Graph, r: usize) -> Verdict {
    decompose_inner(g, r, None)
}

/// As [`decompose`], also recording one [`InsertTrace`] per inserted edge.
pub fn decompose_traced(g: &Graph, r: usize, traces: &mut Vec<InsertTrace>) -> Verdict {
    decompose_inner(g, r, Some(traces))
}

fn decompose_inner(g: &Graph, r: usize, mut traces: Option<&mut Vec<InsertTrace>>) -> Verdict {
    if let Some(e) = g.first_loop() {
        let (v, _) = g.endpoints(e);
        return Verdict::Infeasible(Certificate::new(r, VertexSet::from([v])));
    }
    if r == 0 {
        return match g.edge_count() {
            0 => Verdict::Feasible(Decomposition::empty(0)),
            _ => {
                let (u, v) = g.endpoints(0);
                Verdict::Infeasible(Certificate::new(0, VertexSet::from([u, v])))
            }
        };
    }
    let mut partial = PartialDecomposition::new(r, g.edge_count());
    let mut inserter = Inserter::new(g, &partial);
    for e in 0..g.edge_count() {
        let mut record = traces.as_ref().map(|_| InsertTrace {
            edge: e,
            exchanges: Vec::new(),
            final_component: VertexSet::new(),
            certified: false,
        });
        let outcome = inserter.insert(&mut partial, e, record.as_mut());
        if let (Some(traces), Some(record)) = (traces.as_deref_mut(), record) {
            traces.push(record);
        }
        match outcome.expect("exchange invariants hold for loop-free graphs") {
            Insertion::Inserted => {}
            Insertion::Infeasible(cert) => return Verdict::Infeasible(cert),
        }
    }
    Verdict::Feasible(partial.into_decomposition().expect("every edge inserted"))
}

/// Result of [`arboricity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArboricityReport {
    pub forests: usize,
    pub decomposition: Decomposition,
    /// Certificate that `forests - 1` forests do not suffice.
    pub certificate: Option<Certificate>,
}

/// Minimum number of forests covering `g`, with a decomposition attaining it
/// and a certificate that one fewer is impossible.
pub fn arboricity(g: &Graph) -> Result<ArboricityReport, ArboricityError> {
    if let Some(e) = g.first_loop() {
        return Err(ArboricityError::SelfLoop(e));
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m == 0 {
        return Ok(ArboricityReport {
            forests: 0,
            decomposition: Decomposition::empty(0),
            certificate: None,
        });
    }
    // m > 0 without loops implies n >= 2.
    let lower = m.div_ceil(n - 1);
    let mut last_failure: Option<Certificate> = None;
    let mut r = lower;
    loop {
        match decompose(g, r) {
            Verdict::Feasible(decomposition) => {
                let certificate = last_failure.or_else(|| {
                    let whole = Certificate::new(r - 1, g.all_vertices());
                    if whole.holds_for(g) {
                        Some(whole)
                    } else {
                        decompose(g, r - 1).certificate().cloned()
                    }
                });
                return Ok(ArboricityReport {
                    forests: r,
                    decomposition,
                    certificate,
                });
            }
            Verdict::Infeasible(cert) => last_failure = Some(cert),
        }
        r += 1;
    }
}
