#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use arboricity::{EdgeSubset, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every loopless multigraph on `n` vertices with exactly `m` edges, one
/// representative per isomorphism class. Edges of a representative are
/// listed in lexicographic order.
pub fn nonisomorphic_multigraphs(n: usize, m: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(m);
    multisets(pairs.len(), m, 0, &mut pick, &mut |idx| {
        let edges: Vec<(usize, usize)> = idx.iter().map(|&k| pairs[k]).collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut mapped: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (p[u], p[v]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                mapped.sort_unstable();
                mapped
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon.clone()) {
            out.push(Graph::new(n, canon).unwrap());
        }
    });
    out
}

fn multisets(k: usize, m: usize, from: usize, pick: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if pick.len() == m {
        visit(pick);
        return;
    }
    for i in from..k {
        pick.push(i);
        multisets(k, m, i, pick, visit);
        pick.pop();
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Labeled random multigraph; each edge is a self-loop with probability `loop_p`.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, m: usize, loop_p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n);
            if n == 1 || rng.gen_bool(loop_p) {
                (u, u)
            } else {
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            }
        })
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Simple graph made of `k` edge-disjoint random spanning trees with `drop`
/// edges removed afterwards, edges shuffled. Decomposes into `k` forests.
pub fn union_of_spanning_trees(rng: &mut impl Rng, n: usize, k: usize, drop: usize) -> Graph {
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for _ in 0..k {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for j in 1..n {
            let v = order[j];
            let edge = loop {
                let u = order[rng.gen_range(0..j)];
                let key = (u.min(v), u.max(v));
                if !used.contains(&key) {
                    break key;
                }
            };
            used.insert(edge);
            edges.push(edge);
        }
    }
    edges.shuffle(rng);
    edges.truncate(edges.len() - drop);
    Graph::new(n, edges).unwrap()
}

/// Simple G(n, m) graph.
pub fn random_simple_graph(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && used.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A random forest on `n` vertices together with `k >= 2` disjoint connected
/// parts. Returns `None` if fewer than two parts fit.
pub fn random_forest_with_parts(rng: &mut impl Rng, n: usize) -> Option<(Graph, EdgeSubset, Vec<VertexSet>)> {
    let mut edges = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.85) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    // Sprinkle in non-forest edges so t is a proper subset of E(g).
    let mut forest_ids: Vec<usize> = (0..edges.len()).collect();
    for _ in 0..rng.gen_range(0..n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push((u, v));
    }
    let g = Graph::new(n, edges).unwrap();
    forest_ids.shuffle(rng);
    let t = EdgeSubset::from_ids(g.edge_count(), forest_ids);

    let mut owner = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let target = rng.gen_range(2..=(n / 2).max(2));
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.shuffle(rng);
    for &s in seeds.iter().take(target) {
        if owner[s] != usize::MAX {
            continue;
        }
        let p = parts.len();
        owner[s] = p;
        let mut members = vec![s];
        let grow = rng.gen_range(0..4);
        let gr = &g;
        for _ in 0..grow {
            let frontier: Vec<usize> = members
                .iter()
                .flat_map(|&x| {
                    gr.incident(x)
                        .iter()
                        .filter(|&&e| t.contains(e))
                        .map(move |&e| gr.opposite(e, x))
                })
                .filter(|&y| owner[y] == usize::MAX)
                .collect();
            if let Some(&y) = frontier.choose(rng) {
                owner[y] = p;
                members.push(y);
            }
        }
        parts.push(members);
    }
    (parts.len() >= 2).then(|| (g, t, parts.into_iter().map(|p| p.into_iter().collect()).collect()))
}
