//! Maximum mutual-visibility sets of distance-hereditary graphs.
//!
//! Start from all vertices except the σ-vertices, then remove at most one
//! witness per t-arrow (or at most two in the head-connected and
//! opposite-pair cases). Every choice takes the smallest original id.

use std::fmt;

use crate::directed::{orient, Arrow, DirectedDecomposition, Shape, Side, TArrowReport};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::recognize_dh;
use crate::split::{decomposition_from_sequence, BagType};

/// Why a non-σ vertex was left out of the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RemovalReason {
    PerTArrowHeadWitness,
    KBagUnmarked,
    SpecialVertex,
    GenericPair,
}

impl RemovalReason {
    pub fn name(self) -> &'static str {
        match self {
            RemovalReason::PerTArrowHeadWitness => "per-t-arrow-head-witness",
            RemovalReason::KBagUnmarked => "K-bag-unmarked",
            RemovalReason::SpecialVertex => "special-vertex",
            RemovalReason::GenericPair => "generic-pair",
        }
    }
}

impl fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Removal {
    pub vertex: usize,
    pub reason: RemovalReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub mu: usize,
    pub set: VertexSet,
    pub removed_sigma: VertexSet,
    pub removed_extra: Vec<Removal>,
    pub shape: Shape,
}

/// Computes a maximum mutual-visibility set of a connected
/// distance-hereditary graph.
pub fn mu_set(g: &Graph) -> Result<MuResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() <= 2 {
        return Ok(MuResult {
            mu: g.n(),
            set: g.vertices().collect(),
            removed_sigma: VertexSet::empty(),
            removed_extra: Vec::new(),
            shape: Shape::NoTArrow,
        });
    }
    // The recognizer checks every step exactly, so its certificate is
    // replayed without recomposing.
    let seq = recognize_dh(g)?.into_sequence()?;
    let dd = orient(decomposition_from_sequence(&seq)?);
    mu_set_directed(&dd)
}

/// `|mu_set(g).set|`.
pub fn mu_number(g: &Graph) -> Result<usize> {
    mu_set(g).map(|r| r.mu)
}

/// Runs the selection on an already oriented decomposition.
pub fn mu_set_directed(dd: &DirectedDecomposition) -> Result<MuResult> {
    mu_set_with_report(dd, &dd.t_arrows()?)
}

/// Runs the selection given the t-arrow report of `dd`.
pub fn mu_set_with_report(dd: &DirectedDecomposition, report: &TArrowReport) -> Result<MuResult> {
    let d = dd.base();
    let n = d.original_count();
    let sigma = dd.sigma().clone();
    let mut removed = Vec::new();
    let mut remove = |vertex: Option<usize>, reason| -> Result<()> {
        let vertex =
            vertex.ok_or_else(|| Error::Inconsistent(format!("no vertex for {reason}")))?;
        removed.push(Removal { vertex, reason });
        Ok(())
    };
    let t = &report.t_arrows;
    match report.shape {
        Shape::NoTArrow => {}
        Shape::SingleOrTailConnected => {
            for &a in t {
                remove(
                    dd.min_unmarked_on_side(a, Side::Head),
                    RemovalReason::PerTArrowHeadWitness,
                )?;
            }
        }
        Shape::HeadConnected => {
            let bag = d.bag(
                report
                    .head_bag
                    .expect("head-connected report names its bag"),
            );
            let k_unmarked = bag
                .members
                .iter()
                .filter_map(|&p| d.vertex(p).original())
                .min();
            let special = t
                .iter()
                .filter_map(|&a| dd.is_special_side(a, Side::Tail).special_vertex)
                .min();
            if k_unmarked.is_some() {
                remove(k_unmarked, RemovalReason::KBagUnmarked)?;
            } else if special.is_some() {
                remove(special, RemovalReason::SpecialVertex)?;
            } else {
                let mut minima: Vec<usize> = t
                    .iter()
                    .filter_map(|&a| dd.min_unmarked_on_side(a, Side::Tail))
                    .collect();
                minima.sort_unstable();
                if minima.len() < 2 {
                    return Err(Error::Inconsistent("fewer than two tail sides".into()));
                }
                remove(Some(minima[0]), RemovalReason::GenericPair)?;
                remove(Some(minima[1]), RemovalReason::GenericPair)?;
            }
        }
        Shape::OppositePair => {
            let (mut a, mut b) = (t[0], t[1]);
            if dd.arrow(b).tail < dd.arrow(a).tail {
                std::mem::swap(&mut a, &mut b);
            }
            let special = dd
                .is_special_side(a, Side::Head)
                .special_vertex
                .or(dd.is_special_side(b, Side::Head).special_vertex);
            if special.is_some() {
                remove(special, RemovalReason::SpecialVertex)?;
            } else {
                remove(
                    dd.min_unmarked_on_side(a, Side::Tail),
                    RemovalReason::GenericPair,
                )?;
                remove(
                    dd.min_unmarked_on_side(b, Side::Tail),
                    RemovalReason::GenericPair,
                )?;
            }
        }
    }
    check_removals(dd, &report.t_arrows, report.shape, &removed)?;
    let mut out = sigma.indicator(n);
    for r in &removed {
        out[r.vertex] = true;
    }
    let set: VertexSet = (0..n).filter(|&v| !out[v]).collect();
    Ok(MuResult {
        mu: set.len(),
        set,
        removed_sigma: sigma,
        removed_extra: removed,
        shape: report.shape,
    })
}

/// Removed vertices are distinct non-σ vertices; in the tail-connected case
/// each lies on its own t-arrow's head side and on no other.
fn check_removals(
    dd: &DirectedDecomposition,
    t_arrows: &[usize],
    shape: Shape,
    removed: &[Removal],
) -> Result<()> {
    let d = dd.base();
    let seen = VertexSet::new(removed.iter().map(|r| r.vertex));
    if seen.len() != removed.len() {
        return Err(Error::Inconsistent("a vertex was removed twice".into()));
    }
    if let Some(r) = removed.iter().find(|r| dd.sigma().contains(r.vertex)) {
        return Err(Error::Inconsistent(format!(
            "witness {} is a σ-vertex",
            r.vertex
        )));
    }
    if shape == Shape::SingleOrTailConnected {
        for (&a, r) in t_arrows.iter().zip(removed) {
            let bag = d.vertex(d.vertex_of_original(r.vertex).unwrap()).bag;
            if !dd.side_contains_bag(a, Side::Head, bag) {
                return Err(Error::Inconsistent(format!(
                    "witness {} is off the head side of its t-arrow",
                    r.vertex
                )));
            }
        }
        let cover = dd.head_side_cover(t_arrows);
        let shared = cover.iter().any(|&c| c > 1);
        if shared {
            return Err(Error::Inconsistent("t-arrow head sides overlap".into()));
        }
    }
    Ok(())
}

/// The σ-vertices and arrows met along the bag path between two vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityWitness {
    pub sigma_on_path: VertexSet,
    pub branching_arrows: Vec<Arrow>,
}

/// Walks the bag path between original vertices `x` and `y` and collects
/// every star center passed from leaf to leaf.
pub fn visibility_witness(dd: &DirectedDecomposition, x: usize, y: usize) -> VisibilityWitness {
    let d = dd.base();
    let mut sigma = Vec::new();
    let mut arrows = Vec::new();
    if let (Some(px), Some(py)) = (d.vertex_of_original(x), d.vertex_of_original(y)) {
        if px != py {
            for seg in dd.tree().bag_path(d, px, py) {
                let BagType::S { center } = d.bag(seg.bag).kind else {
                    continue;
                };
                if seg.entry == center || seg.exit == center {
                    continue;
                }
                match d.vertex(center).original() {
                    Some(v) => sigma.push(v),
                    None => arrows.extend(dd.arrow_from(center).copied()),
                }
            }
        }
    }
    VisibilityWitness {
        sigma_on_path: VertexSet::new(sigma),
        branching_arrows: arrows,
    }
}

/// Whether `x` and `y` are joined by a shortest path whose internal vertices
/// avoid `set`, decided on the decomposition.
pub fn pair_visible_decomp(
    dd: &DirectedDecomposition,
    set: &VertexSet,
    x: usize,
    y: usize,
) -> bool {
    let w = visibility_witness(dd, x, y);
    w.sigma_on_path.iter().all(|&v| !set.contains(v))
        && w.branching_arrows
            .iter()
            .all(|a| dd.head_reachable(a.id).iter().any(|&v| !set.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{mu_bruteforce, DEFAULT_MU_CAP};
    use crate::split::canonical_decomposition;

    fn clique(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn biclique(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn octahedron() -> Graph {
        let edges = (0..6).flat_map(|u| {
            (u + 1..6)
                .filter(move |v| u / 2 != v / 2)
                .map(move |v| (u, v))
        });
        Graph::new(6, edges).unwrap()
    }

    /// Clique on {0..5} = {w, r1, s1, r2, s2}, 5 ~ {1, 2}, 6 ~ {3, 4}.
    fn tail_gadget() -> Graph {
        let mut edges: Vec<_> = clique(5).edges().to_vec();
        edges.extend([(1, 5), (2, 5), (3, 6), (4, 6)]);
        Graph::new(7, edges).unwrap()
    }

    fn directed(g: &Graph) -> DirectedDecomposition {
        let seq = recognize_dh(g).unwrap().into_sequence().unwrap();
        orient(canonical_decomposition(g, &seq).unwrap())
    }

    fn assert_optimal(g: &Graph) -> MuResult {
        let r = mu_set(g).unwrap();
        assert!(g.is_mutual_visibility_set(&r.set).unwrap());
        assert_eq!(r.mu, mu_bruteforce(g, DEFAULT_MU_CAP).unwrap().0);
        r
    }

    #[test]
    fn path_drops_inner_vertices() {
        let r = assert_optimal(&path(4));
        assert_eq!(r.set, VertexSet::new([0, 3]));
        assert_eq!(r.removed_sigma, VertexSet::new([1, 2]));
        assert!(r.removed_extra.is_empty());
        assert_eq!(r.shape, Shape::NoTArrow);
    }

    #[test]
    fn tiny_graphs() {
        assert_eq!(mu_number(&Graph::empty(1)).unwrap(), 1);
        assert_eq!(mu_number(&path(2)).unwrap(), 2);
        assert_eq!(mu_set(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn worked_examples() {
        let r = assert_optimal(&biclique(2, 3));
        assert_eq!(r.mu, 4);
        assert_eq!(r.shape, Shape::OppositePair);
        assert_eq!(r.removed_extra.len(), 1);
        assert_eq!(r.removed_extra[0].reason, RemovalReason::SpecialVertex);
        assert!(r.removed_extra[0].vertex < 2);

        let r = assert_optimal(&octahedron());
        assert_eq!(r.mu, 5);
        assert_eq!(r.shape, Shape::HeadConnected);
        assert_eq!(r.removed_extra[0].reason, RemovalReason::SpecialVertex);

        let r = assert_optimal(&tail_gadget());
        assert_eq!(r.mu, 5);
        assert_eq!(r.shape, Shape::SingleOrTailConnected);
        let mut gone: Vec<usize> = r.removed_extra.iter().map(|r| r.vertex).collect();
        gone.sort_unstable();
        assert_eq!(gone, vec![1, 3]);

        let r = assert_optimal(&biclique(3, 3));
        assert_eq!(r.mu, 4);
        assert_eq!(r.removed_extra.len(), 2);
        assert!(r
            .removed_extra
            .iter()
            .all(|r| r.reason == RemovalReason::GenericPair));
    }

    #[test]
    fn block_graph_and_bicliques() {
        let bowtie = Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let r = assert_optimal(&bowtie);
        assert_eq!(r.set, VertexSet::new([1, 2, 3, 4]));
        for (a, b) in [(3, 3), (3, 4), (4, 4), (3, 5)] {
            assert_eq!(mu_number(&biclique(a, b)).unwrap(), a + b - 2);
        }
    }

    #[test]
    fn witness_examples() {
        let dd = directed(&path(5));
        let w = visibility_witness(&dd, 0, 4);
        assert_eq!(w.sigma_on_path, VertexSet::new([1, 2, 3]));
        assert!(w.branching_arrows.is_empty());

        let dd = directed(&biclique(2, 3));
        let w = visibility_witness(&dd, 0, 1);
        assert!(w.sigma_on_path.is_empty());
        assert_eq!(w.branching_arrows.len(), 1);
        let head = dd.head_reachable(w.branching_arrows[0].id);
        assert_eq!(head, VertexSet::new([2, 3, 4]));

        let w = visibility_witness(&dd, 0, 2);
        assert!(w.sigma_on_path.is_empty() && w.branching_arrows.is_empty());
    }

    #[test]
    fn decomposition_visibility_examples() {
        let dd = directed(&path(3));
        assert!(!pair_visible_decomp(&dd, &VertexSet::new([0, 1, 2]), 0, 2));
        assert!(pair_visible_decomp(&dd, &VertexSet::new([0, 2]), 0, 2));

        let g = biclique(2, 3);
        let dd = directed(&g);
        assert!(pair_visible_decomp(
            &dd,
            &VertexSet::new([1, 2, 3, 4]),
            2,
            3
        ));
        assert!(!pair_visible_decomp(
            &dd,
            &VertexSet::new([0, 1, 2, 3, 4]),
            2,
            3
        ));
        for mask in 0u32..32 {
            let x: VertexSet = (0..5).filter(|v| mask >> v & 1 == 1).collect();
            for u in 0..5 {
                for v in u + 1..5 {
                    assert_eq!(
                        pair_visible_decomp(&dd, &x, u, v),
                        g.pair_visible(&x, u, v).unwrap(),
                        "{x:?} {u} {v}"
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_are_cut_vertices() {
        for g in [path(6), tail_gadget(), octahedron()] {
            let r = mu_set(&g).unwrap();
            assert!(r.removed_sigma.is_subset(&g.cut_vertices()));
        }
    }

    #[test]
    fn rejects_non_dh() {
        let c5 = Graph::new(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
        assert_eq!(
            mu_set(&c5),
            Err(Error::NotDistanceHereditary { remainder: 5 })
        );
    }
}
