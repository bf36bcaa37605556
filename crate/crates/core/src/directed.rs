//! Orientation of the canonical decomposition into arrows.
//!
//! Every marked edge with a star-center end becomes an arrow leaving that
//! center (two opposite arrows when both ends are star centers). Unmarked
//! star centers are the σ-vertices; they are cut vertices of the graph.
//!
//! An arrow is terminal (a t-arrow) when the alternating walk from its head
//! into the head side never reaches a σ-vertex and never continues into
//! another arrow from its tail. Equivalently, the walk never enters a star
//! through one of its leaves: entering at a leaf leads straight to the
//! center, which is either a σ-vertex or the tail of an arrow. That local
//! condition is aggregated over the decomposition tree in two passes.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::split::{decomposition_tree, BagType, DecompositionTree, EndType, MarkedGraph};

const NONE: usize = usize::MAX;

/// An oriented marked edge from a star center (`tail`) to `head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub marked_edge: usize,
    /// The arrow on the same marked edge in the other direction, for S_c S_c
    /// edges.
    pub opposite: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Head,
    Tail,
}

/// How the t-arrows sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    NoTArrow,
    SingleOrTailConnected,
    HeadConnected,
    OppositePair,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::NoTArrow => "no-t-arrow",
            Shape::SingleOrTailConnected => "single-or-tail-connected",
            Shape::HeadConnected => "head-connected",
            Shape::OppositePair => "opposite-pair",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TArrowReport {
    /// Arrow ids, ascending.
    pub t_arrows: Vec<usize>,
    pub shape: Shape,
    /// The K-bag holding every head, for [`Shape::HeadConnected`].
    pub head_bag: Option<usize>,
}

/// One side of an arrow's marked edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideView {
    pub arrow: usize,
    pub side: Side,
    /// Decomposition vertices of the side, ascending.
    pub component_vertices: Vec<usize>,
    /// Original vertices reachable from the arrow's endpoint on this side by
    /// an alternating path.
    pub reachable_unmarked: VertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialCheck {
    pub is_special: bool,
    /// The unmarked pendant vertex of the star, as an original id.
    pub special_vertex: Option<usize>,
}

impl SpecialCheck {
    const NOT: SpecialCheck = SpecialCheck {
        is_special: false,
        special_vertex: None,
    };
}

/// The canonical decomposition with its arrows and σ-vertices.
#[derive(Debug, Clone)]
pub struct DirectedDecomposition {
    base: MarkedGraph,
    tree: DecompositionTree,
    arrows: Vec<Arrow>,
    arrow_of_tail: Vec<usize>,
    plain_marked_edges: Vec<usize>,
    sigma: VertexSet,
    /// `clean[p]` for a marked vertex `p`: the walk that crosses `p`'s marked
    /// edge and keeps going away from `p` only enters K-bags and star centers.
    clean: Vec<bool>,
    /// Preorder interval of each bag's subtree.
    tin: Vec<usize>,
    tout: Vec<usize>,
    /// Smallest original vertex over preorder prefixes / suffixes and subtrees.
    prefix_min: Vec<usize>,
    suffix_min: Vec<usize>,
    subtree_min: Vec<usize>,
}

/// Orients `d`: S_c K edges become one arrow, S_c S_c edges two opposite
/// arrows; the remaining marked edges stay plain.
pub fn orient(d: MarkedGraph) -> DirectedDecomposition {
    let tree = decomposition_tree(&d);
    let marked = d.marked_edges();
    let mut arrows = Vec::new();
    let mut plain = Vec::new();
    let mut arrow_of_tail = vec![NONE; d.vertices().len()];
    for (id, &(p, q)) in marked.iter().enumerate() {
        let (tp, tq) = (d.end_type(p), d.end_type(q));
        let first = arrows.len();
        let mut add = |tail: usize, head: usize, arrows: &mut Vec<Arrow>| {
            arrow_of_tail[tail] = arrows.len();
            arrows.push(Arrow {
                id: arrows.len(),
                tail,
                head,
                marked_edge: id,
                opposite: None,
            });
        };
        if tp == EndType::Sc {
            add(p, q, &mut arrows);
        }
        if tq == EndType::Sc {
            add(q, p, &mut arrows);
        }
        match arrows.len() - first {
            0 => plain.push(id),
            2 => {
                arrows[first].opposite = Some(first + 1);
                arrows[first + 1].opposite = Some(first);
            }
            _ => {}
        }
    }
    let sigma = VertexSet::new(d.bags().iter().filter_map(|b| match b.kind {
        BagType::S { center } => d.vertex(center).original(),
        BagType::K => None,
    }));
    let clean = clean_crossings(&d, &tree);
    let (tin, tout, prefix_min, suffix_min, subtree_min) = preorder_minima(&d, &tree);
    DirectedDecomposition {
        base: d,
        tree,
        arrows,
        arrow_of_tail,
        plain_marked_edges: plain,
        sigma,
        clean,
        tin,
        tout,
        prefix_min,
        suffix_min,
        subtree_min,
    }
}

fn entry_ok(d: &MarkedGraph, q: usize) -> bool {
    match d.bag_of(q).kind {
        BagType::K => true,
        BagType::S { center } => center == q,
    }
}

fn clean_crossings(d: &MarkedGraph, tree: &DecompositionTree) -> Vec<bool> {
    let nv = d.vertices().len();
    let nb = d.bags().len();
    let mut clean = vec![false; nv];
    // Bad crossings out of each bag, excluding the one towards the parent.
    let mut bad_down = vec![0usize; nb];
    for &bag in tree.order().iter().rev() {
        if let Some(link) = tree.parent_link(bag) {
            let from = d.partner(link).unwrap();
            clean[from] = entry_ok(d, link) && bad_down[bag] == 0;
            if !clean[from] {
                bad_down[tree.parent(bag).unwrap()] += 1;
            }
        }
    }
    for &bag in tree.order() {
        let (Some(link), Some(parent)) = (tree.parent_link(bag), tree.parent(bag)) else {
            continue;
        };
        let into = d.partner(link).unwrap();
        let parent_up_bad = tree
            .parent_link(parent)
            .map_or(0, |pl| usize::from(!clean[pl]));
        let others_bad = bad_down[parent] + parent_up_bad - usize::from(!clean[into]);
        clean[link] = entry_ok(d, into) && others_bad == 0;
    }
    clean
}

type Minima = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

fn preorder_minima(d: &MarkedGraph, tree: &DecompositionTree) -> Minima {
    let nb = d.bags().len();
    let bag_min: Vec<usize> = d
        .bags()
        .iter()
        .map(|b| {
            b.members
                .iter()
                .filter_map(|&p| d.vertex(p).original())
                .min()
                .unwrap_or(NONE)
        })
        .collect();
    let mut tin = vec![0; nb];
    let mut tout = vec![0; nb];
    let mut euler = Vec::with_capacity(nb);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    if nb > 0 {
        stack.push((0, 0));
        tin[0] = 0;
        euler.push(0);
    }
    while let Some(&mut (bag, ref mut next)) = stack.last_mut() {
        let nbrs = tree.neighbour_bags(bag);
        if *next < nbrs.len() {
            let child = nbrs[*next].0;
            *next += 1;
            if tree.parent(child) == Some(bag) {
                tin[child] = euler.len();
                euler.push(child);
                stack.push((child, 0));
            }
        } else {
            tout[bag] = euler.len() - 1;
            stack.pop();
        }
    }
    let mut prefix_min = vec![NONE; nb + 1];
    for i in 0..nb {
        prefix_min[i + 1] = prefix_min[i].min(bag_min[euler[i]]);
    }
    let mut suffix_min = vec![NONE; nb + 1];
    for i in (0..nb).rev() {
        suffix_min[i] = suffix_min[i + 1].min(bag_min[euler[i]]);
    }
    let mut subtree_min = bag_min;
    for &bag in tree.order().iter().rev() {
        if let Some(parent) = tree.parent(bag) {
            subtree_min[parent] = subtree_min[parent].min(subtree_min[bag]);
        }
    }
    (tin, tout, prefix_min, suffix_min, subtree_min)
}

/// Bags on one side of a marked edge: the subtree of `child`, or everything
/// outside it.
#[derive(Debug, Clone, Copy)]
struct BagRegion {
    child: usize,
    inside: bool,
}

impl DirectedDecomposition {
    pub fn base(&self) -> &MarkedGraph {
        &self.base
    }

    pub fn tree(&self) -> &DecompositionTree {
        &self.tree
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    /// Ids of marked edges that did not become arrows.
    pub fn plain_marked_edges(&self) -> &[usize] {
        &self.plain_marked_edges
    }

    /// Original ids of the σ-vertices (unmarked star centers).
    pub fn sigma(&self) -> &VertexSet {
        &self.sigma
    }

    /// The arrow leaving marked vertex `p`, if any.
    pub fn arrow_from(&self, p: usize) -> Option<&Arrow> {
        self.arrow_of_tail
            .get(p)
            .filter(|&&a| a != NONE)
            .map(|&a| &self.arrows[a])
    }

    pub fn is_t_arrow(&self, a: usize) -> bool {
        self.clean[self.arrows[a].tail]
    }

    fn endpoint(&self, a: usize, side: Side) -> usize {
        let arrow = &self.arrows[a];
        match side {
            Side::Head => arrow.head,
            Side::Tail => arrow.tail,
        }
    }

    fn region(&self, a: usize, side: Side) -> BagRegion {
        let p = self.endpoint(a, side);
        let bag = self.base.vertex(p).bag;
        let other = self.base.vertex(self.base.partner(p).unwrap()).bag;
        if self.tree.parent(bag) == Some(other) {
            BagRegion {
                child: bag,
                inside: true,
            }
        } else {
            BagRegion {
                child: other,
                inside: false,
            }
        }
    }

    fn in_region(&self, r: BagRegion, bag: usize) -> bool {
        let within = self.tin[r.child] <= self.tin[bag] && self.tin[bag] <= self.tout[r.child];
        within == r.inside
    }

    /// Whether bag `bag` lies on the given side of arrow `a`.
    pub fn side_contains_bag(&self, a: usize, side: Side, bag: usize) -> bool {
        self.in_region(self.region(a, side), bag)
    }

    /// For every bag, how many of the given arrows have it on their head side.
    pub fn head_side_cover(&self, arrows: &[usize]) -> Vec<usize> {
        let nb = self.base.bags().len();
        let mut inside = vec![0usize; nb];
        let mut outside = vec![0usize; nb];
        for &a in arrows {
            let r = self.region(a, Side::Head);
            if r.inside {
                inside[r.child] += 1;
            } else {
                outside[r.child] += 1;
            }
        }
        let outside_total: usize = outside.iter().sum();
        for &bag in self.tree.order() {
            if let Some(parent) = self.tree.parent(bag) {
                inside[bag] += inside[parent];
                outside[bag] += outside[parent];
            }
        }
        (0..nb)
            .map(|bag| inside[bag] + outside_total - outside[bag])
            .collect()
    }

    /// Smallest original vertex on the given side of arrow `a`.
    pub fn min_unmarked_on_side(&self, a: usize, side: Side) -> Option<usize> {
        let r = self.region(a, side);
        let m = if r.inside {
            self.subtree_min[r.child]
        } else {
            self.prefix_min[self.tin[r.child]].min(self.suffix_min[self.tout[r.child] + 1])
        };
        Some(m).filter(|&m| m != NONE)
    }

    /// The full view of one side of arrow `a`.
    pub fn side_view(&self, a: usize, side: Side) -> SideView {
        let r = self.region(a, side);
        let mut component_vertices: Vec<usize> = self
            .base
            .bags()
            .iter()
            .filter(|b| self.in_region(r, b.id))
            .flat_map(|b| b.members.iter().copied())
            .collect();
        component_vertices.sort_unstable();
        let reachable_unmarked = VertexSet::new(self.base.accessible_from(self.endpoint(a, side)));
        SideView {
            arrow: a,
            side,
            component_vertices,
            reachable_unmarked,
        }
    }

    /// Original vertices reachable alternately from the head of `a`.
    pub fn head_reachable(&self, a: usize) -> VertexSet {
        VertexSet::new(self.base.accessible_from(self.arrows[a].head))
    }

    /// Whether the given side of `a` is special: a single star centered at
    /// the arrow's endpoint with exactly two leaves, either both unmarked, or
    /// one unmarked and one marked leaf whose marked edge leads to a K-bag
    /// with no further marked vertices.
    pub fn is_special_side(&self, a: usize, side: Side) -> SpecialCheck {
        let d = &self.base;
        let p = self.endpoint(a, side);
        let bag = d.bag_of(p);
        if bag.center() != Some(p) || bag.members.len() != 3 {
            return SpecialCheck::NOT;
        }
        let leaves: Vec<usize> = bag.members.iter().copied().filter(|&q| q != p).collect();
        let unmarked: Vec<usize> = leaves
            .iter()
            .filter_map(|&q| d.vertex(q).original())
            .collect();
        let special_vertex = match unmarked.len() {
            2 => unmarked.iter().copied().min(),
            1 => {
                let marked_leaf = leaves.iter().copied().find(|&q| d.is_marked(q)).unwrap();
                let far = d.partner(marked_leaf).unwrap();
                let far_bag = d.bag_of(far);
                let lone_k = far_bag.kind == BagType::K
                    && far_bag.members.iter().all(|&q| q == far || !d.is_marked(q));
                if lone_k {
                    Some(unmarked[0])
                } else {
                    None
                }
            }
            _ => None,
        };
        SpecialCheck {
            is_special: special_vertex.is_some(),
            special_vertex,
        }
    }

    /// Finds the t-arrows and classifies how they are connected.
    pub fn t_arrows(&self) -> Result<TArrowReport> {
        let t_arrows: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| self.is_t_arrow(a))
            .collect();
        let report = |shape, head_bag| TArrowReport {
            t_arrows: t_arrows.clone(),
            shape,
            head_bag,
        };
        match t_arrows.len() {
            0 => return Ok(report(Shape::NoTArrow, None)),
            1 => return Ok(report(Shape::SingleOrTailConnected, None)),
            _ => {}
        }
        let opposite_pair = t_arrows
            .iter()
            .any(|&a| self.arrows[a].opposite.is_some_and(|b| self.is_t_arrow(b)));
        if opposite_pair {
            if t_arrows.len() != 2 {
                return Err(Error::Inconsistent(format!(
                    "two opposite t-arrows alongside {} others",
                    t_arrows.len() - 2
                )));
            }
            return Ok(report(Shape::OppositePair, None));
        }
        // t-arrow edges per subtree, keyed by the child bag of each edge.
        let nb = self.base.bags().len();
        let mut marks = vec![0usize; nb];
        for &a in &t_arrows {
            marks[self.region(a, Side::Head).child] += 1;
        }
        let mut below = marks;
        for &bag in self.tree.order().iter().rev() {
            if let Some(parent) = self.tree.parent(bag) {
                below[parent] += below[bag];
            }
        }
        let total = t_arrows.len();
        let others_on_head_side = |a: usize| {
            let r = self.region(a, Side::Head);
            if r.inside {
                below[r.child] - 1
            } else {
                total - below[r.child]
            }
        };
        if t_arrows.iter().all(|&a| others_on_head_side(a) == 0) {
            return Ok(report(Shape::SingleOrTailConnected, None));
        }
        let head_bag = self.base.vertex(self.arrows[t_arrows[0]].head).bag;
        let shared = t_arrows
            .iter()
            .all(|&a| self.base.vertex(self.arrows[a].head).bag == head_bag);
        if !shared {
            return Err(Error::Inconsistent(
                "t-arrows are neither pairwise head- nor tail-connected".into(),
            ));
        }
        if self.base.bag(head_bag).kind != BagType::K {
            return Err(Error::Inconsistent(format!(
                "head-connected t-arrows meet in star bag {head_bag}"
            )));
        }
        Ok(report(Shape::HeadConnected, Some(head_bag)))
    }
}
