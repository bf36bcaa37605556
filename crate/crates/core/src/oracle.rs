//! Exponential-time reference engines and distance-hereditary recognition.
//!
//! [`recognize_dh`] prunes pendant vertices and twins until one vertex is
//! left; the removal order, reversed, is an expansion recipe for the graph.
//! [`is_dh_metric`] and [`mu_bruteforce`] decide their properties straight
//! from the definitions by exhaustive enumeration and serve as oracles for
//! the fast paths.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, UNREACHABLE};

/// Default cap for [`is_dh_metric`].
pub const DEFAULT_METRIC_CAP: usize = 10;
/// Default cap for [`mu_bruteforce`] and [`mu_set_avoiding`].
pub const DEFAULT_MU_CAP: usize = 16;

/// Subsets are bitmasks, so no cap may go beyond this.
const MASK_BITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Pendant,
    TrueTwin,
    FalseTwin,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Pendant => "pendant",
            StepKind::TrueTwin => "true-twin",
            StepKind::FalseTwin => "false-twin",
        }
    }
}

/// One pruning step: `removed` is a pendant vertex attached to `anchor`, or a
/// true/false twin of `anchor`, in the graph at the moment of removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PruningStep {
    pub kind: StepKind,
    pub removed: usize,
    pub anchor: usize,
}

/// Steps in removal order, reducing a graph on `n` vertices to the single
/// vertex `last`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PruningSequence {
    pub n: usize,
    pub last: usize,
    pub steps: Vec<PruningStep>,
}

impl PruningSequence {
    /// Steps in insertion order (the reverse of removal order).
    pub fn expansion_order(&self) -> impl Iterator<Item = &PruningStep> {
        self.steps.iter().rev()
    }

    /// Checks that the sequence mentions every vertex exactly once and each
    /// step refers to an already present anchor when replayed as an expansion.
    pub fn check_shape(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSequence("empty graph".into()));
        }
        if self.steps.len() + 1 != self.n {
            return Err(Error::InvalidSequence(format!(
                "{} steps for {} vertices",
                self.steps.len(),
                self.n
            )));
        }
        if self.last >= self.n {
            return Err(Error::InvalidSequence(format!(
                "final vertex {} out of range",
                self.last
            )));
        }
        let mut present = vec![false; self.n];
        present[self.last] = true;
        for step in self.expansion_order() {
            if step.removed >= self.n || step.anchor >= self.n {
                return Err(Error::InvalidSequence(format!(
                    "step {step:?} refers to a vertex out of range"
                )));
            }
            if present[step.removed] {
                return Err(Error::InvalidSequence(format!(
                    "vertex {} inserted twice",
                    step.removed
                )));
            }
            if !present[step.anchor] {
                return Err(Error::InvalidSequence(format!(
                    "anchor {} used before insertion",
                    step.anchor
                )));
            }
            present[step.removed] = true;
        }
        Ok(())
    }
}

/// Outcome of [`recognize_dh`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DhRecognition {
    Accepted(PruningSequence),
    /// No pendant vertex or twin pair exists in `remainder`, the subgraph
    /// induced by `vertices` (original ids, ascending).
    Rejected {
        vertices: Vec<usize>,
        remainder: Graph,
    },
}

impl DhRecognition {
    pub fn is_accepted(&self) -> bool {
        matches!(self, DhRecognition::Accepted(_))
    }

    pub fn into_sequence(self) -> Result<PruningSequence> {
        match self {
            DhRecognition::Accepted(seq) => Ok(seq),
            DhRecognition::Rejected { vertices, .. } => Err(Error::NotDistanceHereditary {
                remainder: vertices.len(),
            }),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Set of integers below a fixed bound with fast successor queries: one bit
/// per member plus summary levels with one bit per non-empty word below.
struct OrderedBits {
    levels: Vec<Vec<u64>>,
}

impl OrderedBits {
    fn new(n: usize) -> Self {
        let mut levels = Vec::new();
        let mut size = n.max(1);
        loop {
            let words = size.div_ceil(64);
            levels.push(vec![0u64; words]);
            if words == 1 {
                break;
            }
            size = words;
        }
        OrderedBits { levels }
    }

    fn insert(&mut self, x: usize) {
        let mut i = x;
        for level in &mut self.levels {
            let was = level[i / 64];
            level[i / 64] |= 1 << (i % 64);
            if was != 0 {
                break;
            }
            i /= 64;
        }
    }

    fn remove(&mut self, x: usize) {
        let mut i = x;
        for level in &mut self.levels {
            level[i / 64] &= !(1 << (i % 64));
            if level[i / 64] != 0 {
                break;
            }
            i /= 64;
        }
    }

    /// Smallest member `>= x`.
    fn first_from(&self, x: usize) -> Option<usize> {
        let mut i = x;
        let mut depth = 0;
        loop {
            let level = self.levels.get(depth)?;
            let word = *level.get(i / 64)?;
            let masked = word & (!0u64 << (i % 64));
            if masked != 0 {
                i = (i / 64) * 64 + masked.trailing_zeros() as usize;
                break;
            }
            i = i / 64 + 1;
            depth += 1;
        }
        while depth > 0 {
            depth -= 1;
            i = i * 64 + self.levels[depth][i].trailing_zeros() as usize;
        }
        Some(i)
    }
}

const NIL: u32 = u32::MAX;
const OPEN: usize = 0;
const CLOSED: usize = 1;

/// Per-vertex pruning state, one cache line per vertex.
#[derive(Debug, Clone, Copy)]
#[repr(align(64))]
struct Slot {
    /// Sum of the salts of the live neighbours.
    open_hash: u64,
    /// Keys under which the vertex is currently bucketed, open and closed.
    key: [u64; 2],
    /// Live neighbours are compacted lazily into `nbrs[start..start + len]`.
    start: usize,
    next: [u32; 2],
    prev: [u32; 2],
    len: u32,
    degree: u32,
    stamp: u32,
    alive: bool,
    /// Bucket keys are stale; refreshed before twin queries.
    dirty: bool,
}

/// Vertices grouped by neighbourhood hash in FIFO lists threaded through the
/// slots; `candidates` holds every vertex whose bucket has at least two
/// members.
struct TwinBuckets {
    kind: usize,
    /// Key to `(head, tail, len)`.
    map: FxHashMap<u64, (u32, u32, u32)>,
    candidates: OrderedBits,
}

impl TwinBuckets {
    fn new(kind: usize, n: usize) -> Self {
        TwinBuckets {
            kind,
            map: FxHashMap::with_capacity_and_hasher(n, Default::default()),
            candidates: OrderedBits::new(n),
        }
    }

    fn insert(&mut self, slots: &mut [Slot], v: usize) {
        let k = self.kind;
        slots[v].next[k] = NIL;
        match self.map.get_mut(&slots[v].key[k]) {
            None => {
                slots[v].prev[k] = NIL;
                self.map.insert(slots[v].key[k], (v as u32, v as u32, 1));
            }
            Some((head, tail, len)) => {
                slots[v].prev[k] = *tail;
                slots[*tail as usize].next[k] = v as u32;
                *tail = v as u32;
                *len += 1;
                if *len == 2 {
                    self.candidates.insert(*head as usize);
                }
                self.candidates.insert(v);
            }
        }
    }

    fn remove(&mut self, slots: &mut [Slot], v: usize) {
        let k = self.kind;
        let key = slots[v].key[k];
        let (head, tail, len) = self.map.get_mut(&key).expect("vertex is bucketed");
        let (p, q) = (slots[v].prev[k], slots[v].next[k]);
        if p == NIL {
            *head = q;
        } else {
            slots[p as usize].next[k] = q;
        }
        if q == NIL {
            *tail = p;
        } else {
            slots[q as usize].prev[k] = p;
        }
        *len -= 1;
        self.candidates.remove(v);
        match *len {
            0 => {
                self.map.remove(&key);
            }
            1 => self.candidates.remove(*head as usize),
            _ => {}
        }
    }

    fn rekey(&mut self, slots: &mut [Slot], v: usize, key: u64) {
        self.remove(slots, v);
        slots[v].key[self.kind] = key;
        self.insert(slots, v);
    }

    fn head_of(&self, slots: &[Slot], v: usize) -> usize {
        self.map[&slots[v].key[self.kind]].0 as usize
    }
}

fn salt(v: usize) -> u64 {
    splitmix64(v as u64)
}

struct Pruner<'g> {
    g: &'g Graph,
    slots: Vec<Slot>,
    nbrs: Vec<u32>,
    pendants: OrderedBits,
    open: TwinBuckets,
    closed: TwinBuckets,
    epoch: u32,
    dirty: Vec<u32>,
}

impl<'g> Pruner<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        assert!(n < NIL as usize, "graph too large for 32-bit vertex ids");
        let mut pendants = OrderedBits::new(n);
        let mut nbrs = Vec::with_capacity(2 * g.m());
        let mut slots = Vec::with_capacity(n);
        for v in 0..n {
            if g.degree(v) == 1 {
                pendants.insert(v);
            }
            let open_hash = g
                .neighbors(v)
                .iter()
                .fold(0u64, |h, &w| h.wrapping_add(salt(w)));
            slots.push(Slot {
                open_hash,
                key: [open_hash, open_hash.wrapping_add(salt(v))],
                start: nbrs.len(),
                next: [NIL; 2],
                prev: [NIL; 2],
                len: g.degree(v) as u32,
                degree: g.degree(v) as u32,
                stamp: 0,
                alive: true,
                dirty: false,
            });
            nbrs.extend(g.neighbors(v).iter().map(|&w| w as u32));
        }
        let mut open = TwinBuckets::new(OPEN, n);
        let mut closed = TwinBuckets::new(CLOSED, n);
        for v in 0..n {
            open.insert(&mut slots, v);
            closed.insert(&mut slots, v);
        }
        Pruner {
            g,
            slots,
            nbrs,
            pendants,
            open,
            closed,
            epoch: 0,
            dirty: Vec::new(),
        }
    }

    fn alive(&self, v: usize) -> bool {
        self.slots[v].alive
    }

    fn compact(&mut self, v: usize) -> std::ops::Range<usize> {
        let s = self.slots[v].start;
        let mut k = s;
        for j in s..s + self.slots[v].len as usize {
            let w = self.nbrs[j];
            if self.slots[w as usize].alive {
                self.nbrs[k] = w;
                k += 1;
            }
        }
        self.slots[v].len = (k - s) as u32;
        s..k
    }

    /// Exact twin test between live vertices `v` and `u`.
    fn are_twins(&mut self, v: usize, u: usize, closed: bool) -> bool {
        if self.slots[v].degree != self.slots[u].degree {
            return false;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        let mut adjacent = false;
        for j in self.compact(v) {
            let w = self.nbrs[j] as usize;
            self.slots[w].stamp = epoch;
            adjacent |= w == u;
        }
        if adjacent != closed {
            return false;
        }
        self.compact(u).all(|j| {
            let w = self.nbrs[j] as usize;
            w == v || self.slots[w].stamp == epoch
        })
    }

    fn refresh_buckets(&mut self) {
        for i in 0..self.dirty.len() {
            let w = self.dirty[i] as usize;
            self.slots[w].dirty = false;
            if self.slots[w].alive {
                let h = self.slots[w].open_hash;
                self.open.rekey(&mut self.slots, w, h);
                self.closed
                    .rekey(&mut self.slots, w, h.wrapping_add(salt(w)));
            }
        }
        self.dirty.clear();
    }

    /// Smallest vertex admitting a twin step of the given kind, with the
    /// earliest-bucketed verified twin.
    fn find_twin(&mut self, closed: bool) -> Option<(usize, usize)> {
        self.refresh_buckets();
        let kind = if closed { CLOSED } else { OPEN };
        let mut from = 0;
        loop {
            let buckets = if closed { &self.closed } else { &self.open };
            let v = buckets.candidates.first_from(from)?;
            from = v + 1;
            let mut u = buckets.head_of(&self.slots, v) as u32;
            while u != NIL {
                let w = u as usize;
                u = self.slots[w].next[kind];
                if w != v && self.are_twins(v, w, closed) {
                    return Some((v, w));
                }
            }
        }
    }

    fn next_step(&mut self) -> Option<PruningStep> {
        if let Some(v) = self.pendants.first_from(0) {
            let first = self.compact(v).start;
            return Some(PruningStep {
                kind: StepKind::Pendant,
                removed: v,
                anchor: self.nbrs[first] as usize,
            });
        }
        if let Some((v, u)) = self.find_twin(true) {
            return Some(PruningStep {
                kind: StepKind::TrueTwin,
                removed: v,
                anchor: u,
            });
        }
        self.find_twin(false).map(|(v, u)| PruningStep {
            kind: StepKind::FalseTwin,
            removed: v,
            anchor: u,
        })
    }

    fn remove(&mut self, x: usize) {
        self.slots[x].alive = false;
        self.pendants.remove(x);
        self.open.remove(&mut self.slots, x);
        self.closed.remove(&mut self.slots, x);
        let sx = salt(x);
        for j in self.compact(x) {
            let w = self.nbrs[j] as usize;
            let slot = &mut self.slots[w];
            slot.degree -= 1;
            slot.open_hash = slot.open_hash.wrapping_sub(sx);
            match slot.degree {
                1 => self.pendants.insert(w),
                0 => self.pendants.remove(w),
                _ => {}
            }
            if !slot.dirty {
                slot.dirty = true;
                self.dirty.push(w as u32);
            }
        }
    }
}

/// Decides distance-heredity by pruning pendant vertices and twins.
///
/// At every step the smallest vertex admitting a pendant step is removed,
/// else the smallest admitting a true-twin step, else a false-twin step. A
/// twin step is anchored at the verified twin that has shared the removed
/// vertex's neighbourhood hash longest.
pub fn recognize_dh(g: &Graph) -> Result<DhRecognition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut pruner = Pruner::new(g);
    let mut steps = Vec::with_capacity(g.n().saturating_sub(1));
    let mut remaining = g.n();
    while remaining > 1 {
        match pruner.next_step() {
            Some(step) => {
                pruner.remove(step.removed);
                steps.push(step);
                remaining -= 1;
            }
            None => {
                let vertices: Vec<usize> = (0..g.n()).filter(|&v| pruner.alive(v)).collect();
                let remainder = pruner.g.induced(&vertices);
                return Ok(DhRecognition::Rejected {
                    vertices,
                    remainder,
                });
            }
        }
    }
    let last = (0..g.n())
        .find(|&v| pruner.alive(v))
        .expect("one vertex left");
    Ok(DhRecognition::Accepted(PruningSequence {
        n: g.n(),
        last,
        steps,
    }))
}

/// Checks that `seq` is a valid pruning certificate for `g`: replaying it
/// step by step verifies every pendant/twin claim against `g`.
pub fn verify_pruning(g: &Graph, seq: &PruningSequence) -> Result<()> {
    if seq.n != g.n() {
        return Err(Error::InvalidSequence(format!(
            "sequence for {} vertices, graph has {}",
            seq.n,
            g.n()
        )));
    }
    seq.check_shape()?;
    let mut alive = vec![true; g.n()];
    let live = |alive: &[bool], v: usize| -> BTreeSet<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| alive[w])
            .collect()
    };
    for step in &seq.steps {
        let (x, y) = (step.removed, step.anchor);
        if !alive[x] || !alive[y] || x == y {
            return Err(Error::InvalidSequence(format!(
                "step {step:?} on dead vertex"
            )));
        }
        let nx = live(&alive, x);
        let ny = live(&alive, y);
        let ok = match step.kind {
            StepKind::Pendant => nx.len() == 1 && nx.contains(&y),
            StepKind::TrueTwin => {
                nx.contains(&y) && {
                    let mut cx = nx.clone();
                    cx.insert(x);
                    let mut cy = ny.clone();
                    cy.insert(y);
                    cx == cy
                }
            }
            StepKind::FalseTwin => !nx.contains(&y) && nx == ny,
        };
        if !ok {
            return Err(Error::InvalidSequence(format!(
                "step {step:?} does not hold in the graph"
            )));
        }
        alive[x] = false;
    }
    Ok(())
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap || g.n() > MASK_BITS {
        return Err(Error::CapExceeded {
            n: g.n(),
            cap: cap.min(MASK_BITS),
        });
    }
    Ok(())
}

/// Bitmask view of a small graph with BFS layers from every vertex.
struct SmallGraph {
    n: usize,
    adj: Vec<u64>,
    /// `layers[u][d]` = vertices at distance `d` from `u`.
    layers: Vec<Vec<u64>>,
}

impl SmallGraph {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let layers = (0..n)
            .map(|v| {
                let row = g.bfs_distances(v).unwrap();
                let ecc = row
                    .iter()
                    .copied()
                    .filter(|&d| d != UNREACHABLE)
                    .max()
                    .unwrap_or(0);
                let mut layer = vec![0u64; ecc + 1];
                for (w, &d) in row.iter().enumerate() {
                    if d != UNREACHABLE {
                        layer[d] |= 1 << w;
                    }
                }
                layer
            })
            .collect();
        SmallGraph { n, adj, layers }
    }

    fn neighborhood(&self, mut mask: u64) -> u64 {
        let mut out = 0;
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            out |= self.adj[v];
            mask &= mask - 1;
        }
        out
    }

    /// Vertices `w` having a shortest `u,w`-path whose internal vertices
    /// avoid `blocked`.
    fn visible_from(&self, u: usize, blocked: u64) -> u64 {
        let mut seen = 1u64 << u;
        let mut expandable = seen;
        for &layer in &self.layers[u][1..] {
            let frontier = self.neighborhood(expandable) & layer;
            seen |= frontier;
            expandable = frontier & !blocked;
            if expandable == 0 {
                break;
            }
        }
        seen
    }

    fn is_mutual_visibility(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if rest & !self.visible_from(u, set) != 0 {
                return false;
            }
        }
        true
    }

    /// Vertices of `subset` reachable from `u` inside `G[subset]`, by layer.
    fn inner_layers(&self, u: usize, subset: u64) -> (u64, Vec<u64>) {
        let mut reached = 1u64 << u;
        let mut frontier = reached;
        let mut layers = Vec::new();
        while frontier != 0 {
            layers.push(frontier);
            frontier = self.neighborhood(frontier) & subset & !reached;
            reached |= frontier;
        }
        (reached, layers)
    }

    /// `None` if `G[subset]` is disconnected, otherwise whether it is
    /// isometric.
    fn subset_isometric(&self, subset: u64) -> Option<bool> {
        let start = subset.trailing_zeros() as usize;
        if self.inner_layers(start, subset).0 != subset {
            return None;
        }
        let mut rest = subset;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (_, layers) = self.inner_layers(u, subset);
            for (d, &layer) in layers.iter().enumerate() {
                if layer & !self.layers[u].get(d).copied().unwrap_or(0) != 0 {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

/// Exhaustive check that every connected induced subgraph is isometric.
pub fn is_dh_metric(g: &Graph, n_cap: usize) -> Result<bool> {
    check_cap(g, n_cap)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let small = SmallGraph::new(g);
    let full: u64 = if small.n == 64 {
        u64::MAX
    } else {
        (1 << small.n) - 1
    };
    let mut subset = full;
    while subset != 0 {
        if small.subset_isometric(subset) == Some(false) {
            return Ok(false);
        }
        subset = (subset - 1) & full;
    }
    Ok(true)
}

/// Size-`k` subsets of `pool` in lexicographic order of their sorted members.
struct Combinations<'a> {
    pool: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    fn new(pool: &'a [usize], k: usize) -> Self {
        Combinations {
            pool,
            idx: (0..k).collect(),
            done: k > pool.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1 << self.pool[i]);
        let k = self.idx.len();
        let n = self.pool.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    VertexSet::new((0..MASK_BITS).filter(|&v| mask >> v & 1 == 1))
}

/// Largest mutual-visibility set avoiding `forbidden`: subsets are tried by
/// decreasing size, lexicographically within a size, first success wins.
pub fn mu_set_avoiding(
    g: &Graph,
    forbidden: &VertexSet,
    n_cap: usize,
) -> Result<(usize, Option<VertexSet>)> {
    check_cap(g, n_cap)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let small = SmallGraph::new(g);
    let pool: Vec<usize> = g.vertices().filter(|&v| !forbidden.contains(v)).collect();
    for k in (1..=pool.len()).rev() {
        if let Some(mask) = Combinations::new(&pool, k).find(|&m| small.is_mutual_visibility(m)) {
            return Ok((k, Some(mask_to_set(mask))));
        }
    }
    Ok((0, None))
}

/// Exact mutual-visibility number with the lexicographically least maximum
/// witness.
pub fn mu_bruteforce(g: &Graph, n_cap: usize) -> Result<(usize, VertexSet)> {
    let (mu, witness) = mu_set_avoiding(g, &VertexSet::empty(), n_cap)?;
    Ok((mu, witness.unwrap_or_default()))
}
