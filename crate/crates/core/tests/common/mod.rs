//! Independent reference checks shared by the integration and acceptance
//! tests. Nothing here calls the code it is used to check.
#![allow(dead_code)]

use std::collections::VecDeque;

use mutvis_core::directed::{orient, DirectedDecomposition};
use mutvis_core::generators::{random_dh, ExpansionSpec};
use mutvis_core::oracle::{recognize_dh, PruningSequence};
use mutvis_core::split::{canonical_decomposition, MarkedGraph};
use mutvis_core::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Pipeline {
    pub seq: PruningSequence,
    pub dd: DirectedDecomposition,
}

pub fn pipeline(g: &Graph) -> Pipeline {
    let seq = recognize_dh(g).unwrap().into_sequence().unwrap();
    let d = canonical_decomposition(g, &seq).unwrap();
    Pipeline { seq, dd: orient(d) }
}

/// Cut vertices by deleting each vertex in turn.
pub fn brute_cut_vertices(g: &Graph) -> VertexSet {
    let base = g.component_count();
    VertexSet::new(g.vertices().filter(|&v| {
        let rest: Vec<usize> = g.vertices().filter(|&u| u != v).collect();
        g.induced(&rest).component_count() > base
    }))
}

/// Chordal and diamond-free, which together characterise block graphs.
pub fn is_block_graph(g: &Graph) -> bool {
    for &(u, v) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        for (i, &a) in common.iter().enumerate() {
            if common[i + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                return false;
            }
        }
    }
    let mut alive = vec![true; g.n()];
    for _ in 0..g.n() {
        let simplicial = g.vertices().find(|&v| {
            alive[v] && {
                let nb: Vec<usize> = g
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| alive[w])
                    .collect();
                nb.iter()
                    .enumerate()
                    .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            }
        });
        match simplicial {
            Some(v) => alive[v] = false,
            None => return false,
        }
    }
    true
}

/// Original vertices on the head side of arrow `a`: the component of the
/// head once the arrow's marked edge is cut.
pub fn head_side_unmarked(dd: &DirectedDecomposition, a: usize) -> VertexSet {
    let d = dd.base();
    let arrow = dd.arrow(a);
    let mut seen = vec![false; d.vertices().len()];
    let mut queue = VecDeque::from([arrow.head]);
    seen[arrow.head] = true;
    let mut out = Vec::new();
    while let Some(p) = queue.pop_front() {
        if let Some(v) = d.vertex(p).original() {
            out.push(v);
        }
        let partner = d.partner(p).filter(|_| p != arrow.head);
        for q in d.bag_of(p).members.iter().copied().chain(partner) {
            if !seen[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
    }
    VertexSet::new(out)
}

/// Whether `path` runs from `x` to `y` through the decomposition, switching
/// between in-bag edges and marked edges at every step.
pub fn is_alternating_path(d: &MarkedGraph, path: &[usize], x: usize, y: usize) -> bool {
    if path.len() < 2
        || d.vertex(path[0]).original() != Some(x)
        || d.vertex(path[path.len() - 1]).original() != Some(y)
    {
        return false;
    }
    path.windows(2).enumerate().all(|(i, w)| {
        let (p, q) = (w[0], w[1]);
        if i % 2 == 0 {
            d.vertex(p).bag == d.vertex(q).bag && d.bag_of(p).adjacent(p, q)
        } else {
            d.partner(p) == Some(q)
        }
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A random connected block graph with at most `n` vertices: cliques glued
/// at single vertices.
pub fn random_block_graph(seed: u64, n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 1;
    let mut edges = Vec::new();
    while count < n {
        let at = rng.gen_range(0..count);
        let k = rng.gen_range(1..=4).min(n - count);
        let block: Vec<usize> = std::iter::once(at).chain(count..count + k).collect();
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                edges.push((u, v));
            }
        }
        count += k;
    }
    Graph::new(n.max(1), edges).unwrap()
}

pub const WEIGHT_MIX: [[f64; 3]; 4] = [
    [0.3, 0.35, 0.35],
    [0.6, 0.2, 0.2],
    [0.2, 0.2, 0.6],
    [0.2, 0.6, 0.2],
];

/// Seeded random graphs: distance-hereditary ones under varied weights, and
/// every fifth one a block graph.
pub fn test_graphs(count: usize, n_min: usize, n_max: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(n_min..=n_max);
            let s = rng.gen();
            if i % 5 == 4 {
                random_block_graph(s, n)
            } else {
                random_dh(&ExpansionSpec::new(s, n).with_weights(WEIGHT_MIX[i % 4])).unwrap()
            }
        })
        .collect()
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let p = rng.gen_range(0.1..0.9);
    VertexSet::new((0..n).filter(|_| rng.gen_bool(p)))
}
