//! Canonical split decomposition of distance-hereditary graphs.
//!
//! The decomposition is a marked graph: bags of type K (clique) or S (star)
//! whose vertices are either unmarked (a vertex of the input graph) or marked
//! (one end of a marked edge joining two bags). Unmarked edges are implied by
//! the bag type, so a bag only stores its members and, for stars, the center.
//!
//! Construction replays a pruning sequence as an expansion. Each inserted
//! vertex touches a single bag: it either joins the bag of its anchor or the
//! anchor is split off into a fresh three-vertex bag. The choice is made so
//! that no marked edge of type KK or S_p S_c ever appears, which keeps the
//! decomposition canonical at every step.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{PruningSequence, StepKind};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Stands for the input-graph vertex `original`.
    Unmarked { original: usize },
    /// End of the marked edge to `partner`.
    Marked { partner: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DVertex {
    pub bag: usize,
    pub kind: VertexKind,
}

impl DVertex {
    pub fn is_marked(&self) -> bool {
        matches!(self.kind, VertexKind::Marked { .. })
    }

    pub fn partner(&self) -> Option<usize> {
        match self.kind {
            VertexKind::Marked { partner } => Some(partner),
            VertexKind::Unmarked { .. } => None,
        }
    }

    pub fn original(&self) -> Option<usize> {
        match self.kind {
            VertexKind::Unmarked { original } => Some(original),
            VertexKind::Marked { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BagType {
    K,
    S { center: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bag {
    pub id: usize,
    /// Sorted decomposition-vertex ids.
    pub members: Vec<usize>,
    pub kind: BagType,
}

impl Bag {
    pub fn center(&self) -> Option<usize> {
        match self.kind {
            BagType::S { center } => Some(center),
            BagType::K => None,
        }
    }

    pub fn is_star(&self) -> bool {
        matches!(self.kind, BagType::S { .. })
    }

    /// Whether `p` and `q` (distinct members) are joined by an unmarked edge.
    pub fn adjacent(&self, p: usize, q: usize) -> bool {
        p != q
            && match self.kind {
                BagType::K => true,
                BagType::S { center } => p == center || q == center,
            }
    }

    /// Members joined to `p` by an unmarked edge.
    pub fn neighbors_of(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let center = self.center();
        self.members.iter().copied().filter(move |&q| {
            q != p
                && match center {
                    None => true,
                    Some(c) => p == c || q == c,
                }
        })
    }
}

/// Role of a marked-edge end: K-bag member, star leaf (S_p) or star center
/// (S_c).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndType {
    K,
    Sp,
    Sc,
}

impl fmt::Display for EndType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndType::K => "K",
            EndType::Sp => "S_p",
            EndType::Sc => "S_c",
        })
    }
}

/// A marked graph: the split decomposition of a graph on `original_count`
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    vertices: Vec<DVertex>,
    bags: Vec<Bag>,
    original_count: usize,
    /// Decomposition vertex of each original vertex.
    of_original: Vec<usize>,
}

impl MarkedGraph {
    /// Assembles a marked graph from raw parts without checking canonicity;
    /// use [`validate_canonical`] for that. Only index ranges are checked.
    pub fn from_parts(vertices: Vec<DVertex>, bags: Vec<Bag>) -> Result<Self> {
        let mut original_count = 0;
        for (i, v) in vertices.iter().enumerate() {
            if v.bag >= bags.len() {
                return Err(Error::Inconsistent(format!(
                    "vertex {i} in unknown bag {}",
                    v.bag
                )));
            }
            match v.kind {
                VertexKind::Marked { partner } if partner >= vertices.len() => {
                    return Err(Error::Inconsistent(format!(
                        "vertex {i} has unknown partner {partner}"
                    )))
                }
                VertexKind::Unmarked { original } => {
                    original_count = original_count.max(original + 1)
                }
                _ => {}
            }
        }
        for bag in &bags {
            if let Some(&bad) = bag.members.iter().find(|&&p| p >= vertices.len()) {
                return Err(Error::Inconsistent(format!(
                    "bag {} has unknown member {bad}",
                    bag.id
                )));
            }
        }
        let mut of_original = vec![NONE; original_count];
        for (i, v) in vertices.iter().enumerate() {
            if let Some(o) = v.original() {
                of_original[o] = i;
            }
        }
        Ok(MarkedGraph {
            vertices,
            bags,
            original_count,
            of_original,
        })
    }

    pub fn vertices(&self) -> &[DVertex] {
        &self.vertices
    }

    pub fn vertex(&self, p: usize) -> &DVertex {
        &self.vertices[p]
    }

    pub fn bags(&self) -> &[Bag] {
        &self.bags
    }

    pub fn bag(&self, id: usize) -> &Bag {
        &self.bags[id]
    }

    pub fn bag_of(&self, p: usize) -> &Bag {
        &self.bags[self.vertices[p].bag]
    }

    /// Number of vertices of the decomposed graph.
    pub fn original_count(&self) -> usize {
        self.original_count
    }

    /// Decomposition vertex standing for original vertex `v`.
    pub fn vertex_of_original(&self, v: usize) -> Option<usize> {
        self.of_original.get(v).copied().filter(|&p| p != NONE)
    }

    pub fn is_marked(&self, p: usize) -> bool {
        self.vertices[p].is_marked()
    }

    pub fn partner(&self, p: usize) -> Option<usize> {
        self.vertices[p].partner()
    }

    /// Marked edges as `(p, q)` with `p < q`, sorted; the index in this list
    /// is the marked-edge id.
    pub fn marked_edges(&self) -> Vec<(usize, usize)> {
        self.vertices
            .iter()
            .enumerate()
            .filter_map(|(p, v)| v.partner().filter(|&q| p < q).map(|q| (p, q)))
            .collect()
    }

    /// All unmarked (intra-bag) edges as `(p, q)` with `p < q`.
    pub fn unmarked_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for bag in &self.bags {
            match bag.kind {
                BagType::K => {
                    for (i, &p) in bag.members.iter().enumerate() {
                        for &q in &bag.members[i + 1..] {
                            out.push((p.min(q), p.max(q)));
                        }
                    }
                }
                BagType::S { center } => {
                    for &q in bag.members.iter().filter(|&&q| q != center) {
                        out.push((center.min(q), center.max(q)));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Role of marked vertex `p` in its bag.
    pub fn end_type(&self, p: usize) -> EndType {
        match self.bag_of(p).kind {
            BagType::K => EndType::K,
            BagType::S { center } if center == p => EndType::Sc,
            BagType::S { .. } => EndType::Sp,
        }
    }

    /// Original vertices reachable from `entry` by an alternating path that
    /// starts with an unmarked edge inside `entry`'s bag, in traversal order.
    pub fn accessible_from(&self, entry: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![entry];
        while let Some(p) = stack.pop() {
            for q in self.bag_of(p).neighbors_of(p) {
                match self.vertices[q].kind {
                    VertexKind::Unmarked { original } => out.push(original),
                    VertexKind::Marked { partner } => stack.push(partner),
                }
            }
        }
        out
    }

    /// Original vertices represented on the far side of member `p`: `p`
    /// itself if unmarked, else everything accessible through its partner.
    pub fn represented_by(&self, p: usize) -> Vec<usize> {
        match self.vertices[p].kind {
            VertexKind::Unmarked { original } => vec![original],
            VertexKind::Marked { partner } => self.accessible_from(partner),
        }
    }
}

/// Builds the canonical decomposition of `g` by replaying `seq`.
///
/// The result is checked against `g` by recomposition, so a sequence that is
/// not a valid pruning certificate for `g` is reported as an error.
pub fn canonical_decomposition(g: &Graph, seq: &PruningSequence) -> Result<MarkedGraph> {
    if seq.n != g.n() {
        return Err(Error::InvalidSequence(format!(
            "sequence for {} vertices, graph has {}",
            seq.n,
            g.n()
        )));
    }
    let d = decomposition_from_sequence(seq)?;
    if recompose(&d).edges() != g.edges() {
        return Err(Error::InvalidSequence(
            "replayed sequence does not reproduce the graph".into(),
        ));
    }
    Ok(d)
}

/// Replays `seq` into a canonical decomposition of the graph it expands to.
pub fn decomposition_from_sequence(seq: &PruningSequence) -> Result<MarkedGraph> {
    seq.check_shape()?;
    let mut b = Builder::new(seq.n, seq.last);
    for step in seq.expansion_order() {
        b.insert(step.removed, step.kind, step.anchor)?;
    }
    Ok(b.finish())
}

struct BuildBag {
    members: Vec<usize>,
    kind: BagType,
}

struct Builder {
    n: usize,
    /// Bag of each decomposition vertex (`NONE` for absent originals).
    bag: Vec<usize>,
    partner: Vec<usize>,
    /// Position of each vertex in its bag's member list.
    pos: Vec<usize>,
    bags: Vec<BuildBag>,
}

impl Builder {
    fn new(n: usize, first: usize) -> Self {
        let mut b = Builder {
            n,
            bag: vec![NONE; n],
            partner: vec![NONE; n],
            pos: vec![NONE; n],
            bags: Vec::new(),
        };
        b.bags.push(BuildBag {
            members: Vec::new(),
            kind: BagType::K,
        });
        b.add_member(0, first);
        b
    }

    fn alloc_marked(&mut self) -> usize {
        self.bag.push(NONE);
        self.partner.push(NONE);
        self.pos.push(NONE);
        self.bag.len() - 1
    }

    fn add_member(&mut self, bag: usize, p: usize) {
        self.bag[p] = bag;
        self.pos[p] = self.bags[bag].members.len();
        self.bags[bag].members.push(p);
    }

    fn new_bag(&mut self, members: [usize; 3], kind: BagType) -> usize {
        let id = self.bags.len();
        self.bags.push(BuildBag {
            members: Vec::with_capacity(3),
            kind,
        });
        for p in members {
            self.add_member(id, p);
        }
        id
    }

    /// Puts a fresh marked vertex in `y`'s slot and moves `y` into a new
    /// three-vertex bag `{link, y, x}` of the given shape.
    fn split_off(&mut self, y: usize, x: usize, shape: impl FnOnce(usize) -> BagType) {
        let old_bag = self.bag[y];
        let slot = self.alloc_marked();
        let link = self.alloc_marked();
        self.partner[slot] = link;
        self.partner[link] = slot;
        let at = self.pos[y];
        self.bags[old_bag].members[at] = slot;
        self.bag[slot] = old_bag;
        self.pos[slot] = at;
        if self.bags[old_bag].kind == (BagType::S { center: y }) {
            self.bags[old_bag].kind = BagType::S { center: slot };
        }
        let kind = shape(link);
        self.new_bag([link, y, x], kind);
    }

    fn insert(&mut self, x: usize, kind: StepKind, y: usize) -> Result<()> {
        if self.bag[y] == NONE {
            return Err(Error::InvalidSequence(format!("anchor {y} not present")));
        }
        let b = self.bag[y];
        let size = self.bags[b].members.len();
        if size <= 2 && self.bags.len() == 1 {
            return self.insert_into_trivial(x, kind, y);
        }
        let kind_of_bag = self.bags[b].kind;
        match (kind, kind_of_bag) {
            (StepKind::TrueTwin, BagType::K) => self.add_member(b, x),
            (StepKind::TrueTwin, BagType::S { .. }) => self.split_off(y, x, |_| BagType::K),
            (StepKind::FalseTwin, BagType::S { center }) if center != y => self.add_member(b, x),
            (StepKind::FalseTwin, _) => self.split_off(y, x, |link| BagType::S { center: link }),
            (StepKind::Pendant, BagType::S { center }) if center == y => self.add_member(b, x),
            (StepKind::Pendant, _) => self.split_off(y, x, |_| BagType::S { center: y }),
        }
        Ok(())
    }

    /// Insertion while the whole graph is K_1 or K_2.
    fn insert_into_trivial(&mut self, x: usize, kind: StepKind, y: usize) -> Result<()> {
        let members = self.bags[0].members.clone();
        if members.len() == 1 {
            if kind == StepKind::FalseTwin {
                return Err(Error::InvalidSequence(format!(
                    "false twin {x} of isolated vertex {y} disconnects the graph"
                )));
            }
            self.add_member(0, x);
            return Ok(());
        }
        let z = if members[0] == y {
            members[1]
        } else {
            members[0]
        };
        self.bags[0].kind = match kind {
            StepKind::TrueTwin => BagType::K,
            StepKind::FalseTwin => BagType::S { center: z },
            StepKind::Pendant => BagType::S { center: y },
        };
        self.add_member(0, x);
        Ok(())
    }

    fn finish(self) -> MarkedGraph {
        let Builder {
            n,
            bag,
            partner,
            bags,
            ..
        } = self;
        // Renumber bags by smallest member. Members are distinct across bags,
        // so a scan over vertex ids yields that order directly.
        let mut owner = vec![NONE; bag.len()];
        for (id, b) in bags.iter().enumerate() {
            owner[b.members.iter().copied().min().unwrap()] = id;
        }
        let mut new_id = vec![0; bags.len()];
        for (new, old) in owner.into_iter().filter(|&o| o != NONE).enumerate() {
            new_id[old] = new;
        }
        let vertices: Vec<DVertex> = (0..bag.len())
            .map(|p| DVertex {
                bag: new_id[bag[p]],
                kind: if p < n {
                    VertexKind::Unmarked { original: p }
                } else {
                    VertexKind::Marked {
                        partner: partner[p],
                    }
                },
            })
            .collect();
        let mut final_bags: Vec<Option<Bag>> = vec![None; bags.len()];
        for (old, b) in bags.into_iter().enumerate() {
            let mut members = b.members;
            members.sort_unstable();
            final_bags[new_id[old]] = Some(Bag {
                id: new_id[old],
                members,
                kind: b.kind,
            });
        }
        MarkedGraph {
            vertices,
            bags: final_bags.into_iter().map(Option::unwrap).collect(),
            original_count: n,
            of_original: (0..n).collect(),
        }
    }
}

/// A canonicity or well-formedness violation found by [`validate_canonical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A vertex and the bag member lists disagree.
    Membership(String),
    /// Marked edges are not a perfect matching on the marked vertices.
    Matching(String),
    /// Bags and marked edges do not form a tree.
    Tree(String),
    /// A star's center is not one of its members.
    StarCenter { bag: usize },
    /// A bag with fewer than three members in a non-trivial decomposition.
    SmallBag { bag: usize, size: usize },
    /// A marked edge of a forbidden type (KK or S_p S_c).
    EdgeType {
        p: usize,
        q: usize,
        types: (EndType, EndType),
    },
    /// Unmarked vertices are not in bijection with `0..n`.
    Originals(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Membership(s) => write!(f, "membership: {s}"),
            Violation::Matching(s) => write!(f, "matching: {s}"),
            Violation::Tree(s) => write!(f, "tree: {s}"),
            Violation::StarCenter { bag } => write!(f, "star center: bag {bag}"),
            Violation::SmallBag { bag, size } => {
                write!(f, "bag size: bag {bag} has {size} members")
            }
            Violation::EdgeType { p, q, types } => {
                let (a, b) = if types.0 <= types.1 {
                    (types.0, types.1)
                } else {
                    (types.1, types.0)
                };
                let name = match (a, b) {
                    (EndType::K, EndType::K) => "KK".to_string(),
                    (EndType::Sp, EndType::Sc) => "S_pS_c".to_string(),
                    _ => format!("{a}{b}"),
                };
                write!(f, "marked edge type {name} between {p} and {q}")
            }
            Violation::Originals(s) => write!(f, "originals: {s}"),
        }
    }
}

/// Checks the canonical-decomposition conditions for a distance-hereditary
/// graph: K/S bags of size at least three, a matching of marked edges that
/// forms a tree on the bags, and no marked edge of type KK or S_p S_c.
pub fn validate_canonical(d: &MarkedGraph) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let vs = d.vertices();
    let bags = d.bags();
    for (i, bag) in bags.iter().enumerate() {
        if bag.id != i {
            out.push(Violation::Membership(format!(
                "bag at index {i} has id {}",
                bag.id
            )));
        }
        for &p in &bag.members {
            if vs[p].bag != i {
                out.push(Violation::Membership(format!(
                    "bag {i} lists {p}, which belongs to bag {}",
                    vs[p].bag
                )));
            }
        }
        if let BagType::S { center } = bag.kind {
            if !bag.members.contains(&center) {
                out.push(Violation::StarCenter { bag: i });
            }
        }
    }
    let mut listed = vec![0usize; vs.len()];
    for bag in bags {
        for &p in &bag.members {
            listed[p] += 1;
        }
    }
    for (p, &count) in listed.iter().enumerate() {
        if count != 1 {
            out.push(Violation::Membership(format!(
                "vertex {p} listed {count} times"
            )));
        }
    }
    let mut matching_ok = true;
    for (p, v) in vs.iter().enumerate() {
        if let Some(q) = v.partner() {
            let back = vs[q].partner();
            if q == p || back != Some(p) {
                matching_ok = false;
                out.push(Violation::Matching(format!(
                    "marked vertex {p} points to {q}, which does not point back"
                )));
            } else if vs[q].bag == v.bag {
                matching_ok = false;
                out.push(Violation::Matching(format!(
                    "marked edge {p}-{q} lies inside bag {}",
                    v.bag
                )));
            }
        }
    }
    let single_trivial = bags.len() == 1 && bags[0].members.len() <= 2;
    if !single_trivial {
        for bag in bags {
            if bag.members.len() < 3 {
                out.push(Violation::SmallBag {
                    bag: bag.id,
                    size: bag.members.len(),
                });
            }
        }
    }
    if matching_ok {
        let edges = d.marked_edges();
        if edges.len() + 1 != bags.len() {
            out.push(Violation::Tree(format!(
                "{} marked edges for {} bags",
                edges.len(),
                bags.len()
            )));
        } else {
            let mut parent: Vec<usize> = (0..bags.len()).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for &(p, q) in &edges {
                let (a, b) = (find(&mut parent, vs[p].bag), find(&mut parent, vs[q].bag));
                if a == b {
                    out.push(Violation::Tree(format!(
                        "marked edge {p}-{q} closes a cycle"
                    )));
                } else {
                    parent[a] = b;
                }
            }
        }
        let all_centers_ok = !out
            .iter()
            .any(|v| matches!(v, Violation::StarCenter { .. }));
        if all_centers_ok {
            for &(p, q) in &edges {
                let types = (d.end_type(p), d.end_type(q));
                let forbidden = matches!(
                    types,
                    (EndType::K, EndType::K)
                        | (EndType::Sp, EndType::Sc)
                        | (EndType::Sc, EndType::Sp)
                );
                if forbidden {
                    out.push(Violation::EdgeType { p, q, types });
                }
            }
        }
    }
    let mut seen = vec![false; d.original_count()];
    for v in vs {
        if let Some(o) = v.original() {
            if seen[o] {
                out.push(Violation::Originals(format!("original {o} appears twice")));
            }
            seen[o] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        out.push(Violation::Originals(format!("original {missing} missing")));
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Recomposes all marked edges: `xy` is an edge iff an alternating path joins
/// the unmarked vertices of `x` and `y`. Every edge is found from the bags of
/// both of its ends.
pub fn recompose(d: &MarkedGraph) -> Graph {
    let mut edges = Vec::new();
    for (p, vertex) in d.vertices().iter().enumerate() {
        let Some(x) = vertex.original() else {
            continue;
        };
        for q in d.bag_of(p).neighbors_of(p) {
            for y in d.represented_by(q) {
                if x < y {
                    edges.push((x, y));
                }
            }
        }
    }
    Graph::new(d.original_count(), edges).expect("recomposition yields a simple graph")
}

/// The decomposition tree: one node per bag, one edge per marked edge, rooted
/// at bag 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    /// `(bag, bag, marked-edge id)` per marked edge.
    edges: Vec<(usize, usize, usize)>,
    /// `(neighbour bag, marked-edge id)` pairs of bag `b` are
    /// `adjacency[offsets[b]..offsets[b + 1]]`.
    offsets: Vec<usize>,
    adjacency: Vec<(usize, usize)>,
    parent: Vec<usize>,
    /// Member of each non-root bag whose marked edge leads to the parent.
    parent_link: Vec<usize>,
    depth: Vec<usize>,
    /// Bags in breadth-first order from the root.
    order: Vec<usize>,
}

impl DecompositionTree {
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Neighbour bags of `bag` with the connecting marked-edge ids.
    pub fn neighbour_bags(&self, bag: usize) -> &[(usize, usize)] {
        &self.adjacency[self.offsets[bag]..self.offsets[bag + 1]]
    }

    pub fn parent(&self, bag: usize) -> Option<usize> {
        Some(self.parent[bag]).filter(|&p| p != NONE)
    }

    pub fn parent_link(&self, bag: usize) -> Option<usize> {
        Some(self.parent_link[bag]).filter(|&p| p != NONE)
    }

    pub fn depth(&self, bag: usize) -> usize {
        self.depth[bag]
    }

    /// Bags in breadth-first order from the root (parents before children).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_tree(&self) -> bool {
        self.order.len() == self.node_count() && self.edge_count() + 1 == self.node_count()
    }

    /// Walks the unique bag path between unmarked vertices `x` and `y`
    /// (decomposition-vertex ids) and returns, per bag on the path, the
    /// vertices where the path enters and leaves that bag.
    pub fn bag_path(&self, d: &MarkedGraph, x: usize, y: usize) -> Vec<PathSegment> {
        let (mut a, mut b) = (d.vertex(x).bag, d.vertex(y).bag);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while self.depth[a] > self.depth[b] {
            up.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            down.push(b);
            b = self.parent[b];
        }
        while a != b {
            up.push(a);
            down.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        let lca = a;
        let mut out = Vec::with_capacity(up.len() + down.len() + 1);
        let mut entry = x;
        for &bag in &up {
            let exit = self.parent_link[bag];
            out.push(PathSegment { bag, entry, exit });
            entry = d.partner(exit).unwrap();
        }
        let exit = match down.last() {
            Some(&child) => d.partner(self.parent_link[child]).unwrap(),
            None => y,
        };
        out.push(PathSegment {
            bag: lca,
            entry,
            exit,
        });
        for (i, &bag) in down.iter().enumerate().rev() {
            let entry = self.parent_link[bag];
            let exit = if i == 0 {
                y
            } else {
                d.partner(self.parent_link[down[i - 1]]).unwrap()
            };
            out.push(PathSegment { bag, entry, exit });
        }
        out
    }

    /// The alternating path between unmarked `x` and `y`, as decomposition
    /// vertices, if one exists.
    pub fn alternating_path(&self, d: &MarkedGraph, x: usize, y: usize) -> Option<Vec<usize>> {
        let segments = self.bag_path(d, x, y);
        let mut path = Vec::with_capacity(2 * segments.len());
        for seg in &segments {
            if !d.bag(seg.bag).adjacent(seg.entry, seg.exit) {
                return None;
            }
            path.push(seg.entry);
            path.push(seg.exit);
        }
        Some(path)
    }
}

/// One bag on a bag path: the path enters at `entry` and leaves at `exit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathSegment {
    pub bag: usize,
    pub entry: usize,
    pub exit: usize,
}

/// Contracts unmarked edges into the decomposition tree.
pub fn decomposition_tree(d: &MarkedGraph) -> DecompositionTree {
    let nb = d.bags().len();
    let marked = d.marked_edges();
    let mut offsets = vec![0; nb + 1];
    let mut edges = Vec::with_capacity(marked.len());
    for (id, &(p, q)) in marked.iter().enumerate() {
        let (a, b) = (d.vertex(p).bag, d.vertex(q).bag);
        offsets[a + 1] += 1;
        offsets[b + 1] += 1;
        edges.push((a.min(b), a.max(b), id));
    }
    for i in 0..nb {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut adjacency = vec![(0, 0); 2 * edges.len()];
    for &(a, b, id) in &edges {
        adjacency[fill[a]] = (b, id);
        fill[a] += 1;
        adjacency[fill[b]] = (a, id);
        fill[b] += 1;
    }
    let mut parent = vec![NONE; nb];
    let mut parent_link = vec![NONE; nb];
    let mut depth = vec![0; nb];
    let mut order = Vec::with_capacity(nb);
    let mut seen = vec![false; nb];
    if nb > 0 {
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(bag) = queue.pop_front() {
            order.push(bag);
            for &(next, id) in &adjacency[offsets[bag]..offsets[bag + 1]] {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = bag;
                    let (p, q) = marked[id];
                    parent_link[next] = if d.vertex(p).bag == next { p } else { q };
                    depth[next] = depth[bag] + 1;
                    queue.push_back(next);
                }
            }
        }
    }
    DecompositionTree {
        edges,
        offsets,
        adjacency,
        parent,
        parent_link,
        depth,
        order,
    }
}

/// The alternating path between original vertices `x` and `y`, if any; it
/// exists exactly when `xy` is an edge of the recomposed graph.
pub fn alternating_path(d: &MarkedGraph, x: usize, y: usize) -> Option<Vec<usize>> {
    let px = d.vertex_of_original(x)?;
    let py = d.vertex_of_original(y)?;
    if px == py {
        return None;
    }
    decomposition_tree(d).alternating_path(d, px, py)
}
