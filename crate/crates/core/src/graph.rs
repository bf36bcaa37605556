//! Simple undirected graphs over dense vertex ids and the shortest-path
//! primitives everything else is built on.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Distance value used by [`Graph::bfs_distances`] for unreachable vertices.
pub const UNREACHABLE: usize = usize::MAX;

/// A simple undirected graph on the vertices `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted; adjacency lists are
/// sorted and symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Neighbours of `v` are `adjacency[offsets[v]..offsets[v + 1]]`.
    offsets: Vec<usize>,
    adjacency: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(Error::EndpointOutOfRange { endpoint, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        let mut offsets = vec![0; n + 1];
        for &(u, v) in &normalized {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        // Edges are sorted, so every list fills in ascending order.
        let mut fill = offsets.clone();
        let mut adjacency = vec![0; 2 * normalized.len()];
        for &(u, v) in &normalized {
            adjacency[fill[u]] = v;
            fill[u] += 1;
            adjacency[fill[v]] = u;
            fill[v] += 1;
        }
        Ok(Graph {
            n,
            edges: normalized,
            offsets,
            adjacency,
        })
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            offsets: vec![0; n + 1],
            adjacency: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list, each edge as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Unweighted shortest-path distances from `source`; unreachable vertices
    /// get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>> {
        self.check_vertex(source)?;
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Component index of every vertex, numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![UNREACHABLE; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != UNREACHABLE {
                continue;
            }
            comp[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if comp[w] == UNREACHABLE {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Connected means exactly one component; the empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Induced subgraph on `vertices` (relabelled `0..k` in the given order).
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![UNREACHABLE; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w];
                if j != UNREACHABLE && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), edges).expect("induced subgraph of a valid graph")
    }

    /// Articulation vertices, via iterative DFS lowpoints.
    pub fn cut_vertices(&self) -> VertexSet {
        let n = self.n;
        let mut disc = vec![UNREACHABLE; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != UNREACHABLE {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            stack.push((root, UNREACHABLE, 0));
            while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
                if *next < self.degree(u) {
                    let w = self.neighbors(u)[*next];
                    *next += 1;
                    if disc[w] == UNREACHABLE {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != UNREACHABLE {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        VertexSet::from_sorted((0..n).filter(|&v| is_cut[v]).collect())
    }

    /// Whether some shortest `u,v`-path has no internal vertex in `x`.
    ///
    /// Errors if `u` and `v` are in different components.
    pub fn pair_visible(&self, x: &VertexSet, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!(
                "visibility of vertex {u} with itself"
            )));
        }
        let dist = self.bfs_distances(u)?;
        if dist[v] == UNREACHABLE {
            return Err(Error::DifferentComponents(u, v));
        }
        let blocked = x.indicator(self.n);
        let restricted = self.restricted_bfs(u, &blocked);
        Ok(restricted[v] == dist[v])
    }

    /// BFS from `source` that never expands a blocked vertex other than the
    /// source itself; blocked vertices are still reached as endpoints.
    fn restricted_bfs(&self, source: usize, blocked: &[bool]) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            if u != source && blocked[u] {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The lexicographically first pair `(u, v)`, `u < v`, of `x` that is not
    /// `x`-visible, or `None` when `x` is a mutual-visibility set.
    pub fn first_invisible_pair(&self, x: &VertexSet) -> Result<Option<(usize, usize)>> {
        for &v in x.iter() {
            self.check_vertex(v)?;
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let blocked = x.indicator(self.n);
        let members = x.as_slice();
        for (i, &u) in members.iter().enumerate() {
            if i + 1 == members.len() {
                break;
            }
            let dist = self.bfs_distances(u)?;
            let restricted = self.restricted_bfs(u, &blocked);
            for &v in &members[i + 1..] {
                if restricted[v] != dist[v] {
                    return Ok(Some((u, v)));
                }
            }
        }
        Ok(None)
    }

    /// Whether every two vertices of `x` are `x`-visible.
    pub fn is_mutual_visibility_set(&self, x: &VertexSet) -> Result<bool> {
        Ok(self.first_invisible_pair(x)?.is_none())
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Membership vector of length `n`; members `>= n` are ignored.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &v in &self.0 {
            if v < n {
                flags[v] = true;
            }
        }
        flags
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
