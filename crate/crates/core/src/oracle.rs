//! Brute-force ground truth for small instances.
//!
//! Nothing here shares code with the exchange algorithm: subsets are
//! enumerated as bitmasks, assignments by depth-first search, and forests
//! are checked with a plain DFS.

use thiserror::Error;

use crate::decompose::Decomposition;
use crate::graph::{restriction_edge_count, Graph, VertexSet};

pub const DEFAULT_MAX_VERTICES: usize = 20;
pub const DEFAULT_MAX_EDGES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("{m} edges exceeds the enumeration limit of {limit}")]
    TooManyEdges { m: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionReport {
    Satisfied,
    /// `excess = e(X) - r(|X| - 1)`, at least 1.
    Violated {
        x: VertexSet,
        excess: i64,
    },
}

impl ConditionReport {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ConditionReport::Satisfied)
    }
}

/// Checks `e(X) <= r(|X| - 1)` over every nonempty `X`. Reports the subset
/// of largest excess, preferring smaller subsets, then lower bitmasks.
pub fn check_condition(g: &Graph, r: usize, max_n: usize) -> Result<ConditionReport, OracleError> {
    let n = g.vertex_count();
    if n > max_n || n >= 64 {
        return Err(OracleError::TooManyVertices {
            n,
            limit: max_n.min(63),
        });
    }
    let edge_masks: Vec<u64> = g.edges().map(|(u, v)| (1u64 << u) | (1u64 << v)).collect();
    let r = r as i64;
    let mut best: Option<(i64, u32, u64)> = None;
    for x in 1u64..(1u64 << n) {
        let inside = edge_masks.iter().filter(|&&m| m & x == m).count() as i64;
        let size = x.count_ones();
        let excess = inside - r * (size as i64 - 1);
        if excess <= 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((e, s, _)) => excess > e || (excess == e && size < s),
        };
        if better {
            best = Some((excess, size, x));
        }
    }
    Ok(match best {
        None => ConditionReport::Satisfied,
        Some((excess, _, x)) => ConditionReport::Violated {
            x: (0..n).filter(|&v| x >> v & 1 == 1).collect(),
            excess,
        },
    })
}

/// First assignment in lexicographic order (edge 0 most significant,
/// forest 1 first) whose classes are all acyclic.
pub fn brute_decompose(g: &Graph, r: usize, max_m: usize) -> Result<Option<Decomposition>, OracleError> {
    let m = g.edge_count();
    if m > max_m {
        return Err(OracleError::TooManyEdges { m, limit: max_m });
    }
    let mut assign = Vec::with_capacity(m);
    if search(g, r, &mut assign) {
        Ok(Some(Decomposition::new(r, assign).expect("indices drawn from 1..=r")))
    } else {
        Ok(None)
    }
}

fn search(g: &Graph, r: usize, assign: &mut Vec<usize>) -> bool {
    let e = assign.len();
    if e == g.edge_count() {
        return true;
    }
    let (u, v) = g.endpoints(e);
    for i in 1..=r {
        // Every prefix with a cycle is skipped, which cannot change which
        // complete assignment comes first.
        if u != v && !connected(g, |f| f < e && assign[f] == i, u, v) {
            assign.push(i);
            if search(g, r, assign) {
                return true;
            }
            assign.pop();
        }
    }
    false
}

fn connected(g: &Graph, in_set: impl Fn(usize) -> bool, from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for e in (0..g.edge_count()).filter(|&e| in_set(e)) {
            let (a, b) = g.endpoints(e);
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// True iff every class of `d` is acyclic and `d` covers exactly the edges
/// of `g` with indices in `1..=r`.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> bool {
    let r = d.forests();
    if d.edge_count() != g.edge_count() || d.assignment().iter().any(|&i| i == 0 || i > r) {
        return false;
    }
    (1..=r).all(|i| acyclic(g, |e| d.forest_of(e) == i))
}

/// DFS over the class, looking for a non-tree edge.
fn acyclic(g: &Graph, in_class: impl Fn(usize) -> bool) -> bool {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for e in (0..g.edge_count()).filter(|&e| in_class(e)) {
        let (u, v) = g.endpoints(e);
        if u == v {
            return false;
        }
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, usize::MAX)];
        while let Some((x, via)) = stack.pop() {
            for &(y, e) in &adj[x] {
                if e == via {
                    continue;
                }
                if seen[y] {
                    return false;
                }
                seen[y] = true;
                stack.push((y, e));
            }
        }
    }
    true
}

pub fn verify_certificate(g: &Graph, r: usize, x: &VertexSet) -> bool {
    !x.is_empty() && x.iter().all(|v| v < g.vertex_count()) && restriction_edge_count(g, x) > r * (x.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_examples() {
        let tri = Graph::complete(3);
        assert_eq!(
            check_condition(&tri, 1, DEFAULT_MAX_VERTICES),
            Ok(ConditionReport::Violated {
                x: VertexSet::from([0, 1, 2]),
                excess: 1
            })
        );
        assert_eq!(
            check_condition(&Graph::complete(4), 2, 20),
            Ok(ConditionReport::Satisfied)
        );
        assert_eq!(check_condition(&Graph::empty(6), 0, 20), Ok(ConditionReport::Satisfied));
        assert_eq!(
            check_condition(&Graph::empty(21), 1, 20),
            Err(OracleError::TooManyVertices { n: 21, limit: 20 })
        );
    }

    #[test]
    fn condition_prefers_small_sets_on_ties() {
        // Two disjoint parallel pairs at r = 1: {0,1} and {2,3} both have
        // excess 1, as does nothing larger; the first bitmask wins.
        let g = Graph::new(4, [(2, 3), (2, 3), (0, 1), (0, 1)]).unwrap();
        assert_eq!(
            check_condition(&g, 1, 20),
            Ok(ConditionReport::Violated {
                x: VertexSet::from([0, 1]),
                excess: 1
            })
        );
        // Loop at 2 under r = 0: X = {2} has excess 1; {0,1,2} has excess 3.
        let g = Graph::new(3, [(0, 1), (2, 2), (1, 2)]).unwrap();
        assert_eq!(
            check_condition(&g, 0, 20),
            Ok(ConditionReport::Violated {
                x: VertexSet::from([0, 1, 2]),
                excess: 3
            })
        );
    }

    #[test]
    fn brute_examples() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(brute_decompose(&edge, 2, 12).unwrap().unwrap().assignment(), &[1]);
        assert_eq!(brute_decompose(&Graph::complete(3), 1, 12), Ok(None));
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let d = brute_decompose(&c4, 2, 12).unwrap().unwrap();
        assert_eq!(d.assignment(), &[1, 1, 1, 2]);
        assert!(verify_decomposition(&c4, &d));
        assert_eq!(
            brute_decompose(&Graph::complete(6), 3, 12),
            Err(OracleError::TooManyEdges { m: 15, limit: 12 })
        );
        assert_eq!(
            brute_decompose(&Graph::empty(3), 0, 12).unwrap().unwrap().edge_count(),
            0
        );
        assert_eq!(brute_decompose(&Graph::new(1, [(0, 0)]).unwrap(), 3, 12), Ok(None));
    }

    #[test]
    fn verifier_examples() {
        let tri = Graph::complete(3);
        assert!(!verify_decomposition(
            &tri,
            &Decomposition::new(2, vec![1, 1, 1]).unwrap()
        ));
        assert!(verify_decomposition(
            &tri,
            &Decomposition::new(2, vec![1, 1, 2]).unwrap()
        ));
        assert!(!verify_decomposition(&tri, &Decomposition::new(2, vec![1, 2]).unwrap()));
        assert!(verify_decomposition(&Graph::empty(0), &Decomposition::empty(0)));
        let looped = Graph::new(1, [(0, 0)]).unwrap();
        assert!(!verify_decomposition(&looped, &Decomposition::new(1, vec![1]).unwrap()));

        assert!(verify_certificate(&tri, 1, &VertexSet::from([0, 1, 2])));
        assert!(!verify_certificate(&tri, 1, &VertexSet::from([0, 1])));
        assert!(!verify_certificate(&tri, 1, &VertexSet::new()));
        assert!(verify_certificate(
            &Graph::complete(5),
            2,
            &Graph::complete(5).all_vertices()
        ));
        assert!(!verify_certificate(&tri, 0, &VertexSet::from([9])));
    }
}
