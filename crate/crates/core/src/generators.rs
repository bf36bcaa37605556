//! Seeded distance-hereditary instances: random expansion sequences, named
//! families and exhaustive enumeration of small graphs.
//!
//! Random graphs use ChaCha8 seeded from a `u64`, so a seed gives the same
//! graph on every platform.

use std::collections::HashSet;
use std::fmt;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{PruningSequence, PruningStep, StepKind};

/// Default probabilities for pendant, true-twin and false-twin insertions.
pub const DEFAULT_WEIGHTS: [f64; 3] = [0.3, 0.35, 0.35];

/// Largest `n_max` accepted by [`enumerate_small_dh`]; edge sets are packed
/// into a `u64`.
pub const ENUMERATION_LIMIT: usize = 11;

/// Default `n_max` cap for [`enumerate_small_dh`].
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionSpec {
    pub seed: u64,
    pub n: usize,
    /// Pendant, true-twin, false-twin.
    pub weights: [f64; 3],
}

impl ExpansionSpec {
    pub fn new(seed: u64, n: usize) -> Self {
        ExpansionSpec {
            seed,
            n,
            weights: DEFAULT_WEIGHTS,
        }
    }

    pub fn with_weights(mut self, weights: [f64; 3]) -> Self {
        self.weights = weights;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0)
            || self.weights.iter().sum::<f64>() <= 0.0
        {
            return Err(Error::InvalidArgument(format!(
                "weights {:?} must be non-negative with a positive sum",
                self.weights
            )));
        }
        Ok(())
    }
}

/// Replays a pruning sequence backwards from its last vertex.
pub fn expand(seq: &PruningSequence) -> Result<Graph> {
    seq.check_shape()?;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); seq.n];
    for step in seq.expansion_order() {
        let (x, y) = (step.removed, step.anchor);
        let mut nbrs = match step.kind {
            StepKind::Pendant => vec![y],
            StepKind::TrueTwin => {
                let mut v = adj[y].clone();
                v.push(y);
                v
            }
            StepKind::FalseTwin => adj[y].clone(),
        };
        for &w in &nbrs {
            adj[w].push(x);
        }
        std::mem::swap(&mut adj[x], &mut nbrs);
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)));
    Graph::new(seq.n, edges)
}

/// A random expansion sequence: vertex `k` is inserted as a pendant or twin
/// of a uniformly chosen earlier vertex. The first insertion is never a false
/// twin, so every prefix stays connected.
pub fn random_sequence(spec: &ExpansionSpec) -> Result<PruningSequence> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let kinds = [StepKind::Pendant, StepKind::TrueTwin, StepKind::FalseTwin];
    let full = WeightedIndex::new(spec.weights).expect("validated weights");
    let connected = WeightedIndex::new([spec.weights[0], spec.weights[1], 0.0]).ok();
    let mut steps = Vec::with_capacity(spec.n.saturating_sub(1));
    for k in 1..spec.n {
        let anchor = rng.gen_range(0..k);
        let kind = if k == 1 {
            match &connected {
                Some(dist) => kinds[dist.sample(&mut rng)],
                None => StepKind::Pendant,
            }
        } else {
            kinds[full.sample(&mut rng)]
        };
        steps.push(PruningStep {
            kind,
            removed: k,
            anchor,
        });
    }
    steps.reverse();
    Ok(PruningSequence {
        n: spec.n,
        last: 0,
        steps,
    })
}

/// A connected distance-hereditary graph on exactly `spec.n` vertices.
pub fn random_dh(spec: &ExpansionSpec) -> Result<Graph> {
    expand(&random_sequence(spec)?)
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    /// `K_{1,n}`, center 0.
    Star(usize),
    Clique(usize),
    CompleteBipartite(usize, usize),
    /// Only `C_4`; longer cycles are not distance-hereditary.
    Cycle(usize),
    /// `blocks` cliques of size `k`, consecutive ones sharing one cut vertex.
    BlockChain {
        blocks: usize,
        k: usize,
    },
    Octahedron,
    /// `K_5` on `0..5` plus vertex 5 adjacent to {1, 2} and 6 adjacent to {3, 4}.
    TailGadget,
}

pub const FAMILY_NAMES: [&str; 8] = [
    "path",
    "star",
    "clique",
    "complete-bipartite",
    "cycle",
    "block-chain",
    "octahedron",
    "tail-gadget",
];

impl Family {
    /// Builds a family from its name and integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<Family> {
        let arity = |want: usize| -> Result<()> {
            if params.len() == want {
                Ok(())
            } else {
                Err(Error::InvalidFamilyParams {
                    family: name.to_string(),
                    reason: format!("expected {want} parameter(s), got {}", params.len()),
                })
            }
        };
        let family = match name {
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "star" => {
                arity(1)?;
                Family::Star(params[0])
            }
            "clique" => {
                arity(1)?;
                Family::Clique(params[0])
            }
            "complete-bipartite" | "biclique" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "block-chain" => {
                arity(2)?;
                Family::BlockChain {
                    blocks: params[0],
                    k: params[1],
                }
            }
            "octahedron" => {
                arity(0)?;
                Family::Octahedron
            }
            "tail-gadget" => {
                arity(0)?;
                Family::TailGadget
            }
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        family.check()?;
        Ok(family)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Star(_) => "star",
            Family::Clique(_) => "clique",
            Family::CompleteBipartite(..) => "complete-bipartite",
            Family::Cycle(_) => "cycle",
            Family::BlockChain { .. } => "block-chain",
            Family::Octahedron => "octahedron",
            Family::TailGadget => "tail-gadget",
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidFamilyParams {
            family: self.name().to_string(),
            reason: reason.into(),
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            Family::Path(0) | Family::Clique(0) => Err(self.invalid("needs at least one vertex")),
            Family::CompleteBipartite(a, b) if a == 0 || b == 0 => {
                Err(self.invalid("both parts must be non-empty"))
            }
            Family::Cycle(4) => Ok(()),
            Family::Cycle(3) => Err(self.invalid("C_3 is the clique K_3; use `clique 3`")),
            Family::Cycle(n) if n >= 5 => Err(self.invalid(format!(
                "C_{n} is not distance-hereditary (an induced cycle of length 5 or more \
                 stretches distances once a vertex is deleted); only C_4 is offered"
            ))),
            Family::Cycle(n) => Err(self.invalid(format!("C_{n} is not a simple cycle"))),
            Family::BlockChain { blocks, k } if blocks == 0 || k < 2 => {
                Err(self.invalid("needs at least one block of size at least 2"))
            }
            _ => Ok(()),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        self.check()?;
        let clique = |vs: &[usize]| -> Vec<(usize, usize)> {
            vs.iter()
                .enumerate()
                .flat_map(|(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
                .collect()
        };
        match *self {
            Family::Path(n) => Graph::new(n, (1..n).map(|v| (v - 1, v))),
            Family::Star(n) => Graph::new(n + 1, (1..=n).map(|v| (0, v))),
            Family::Clique(n) => Graph::new(n, clique(&(0..n).collect::<Vec<_>>())),
            Family::CompleteBipartite(a, b) => {
                Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            }
            Family::Cycle(n) => Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))),
            Family::BlockChain { blocks, k } => {
                let n = blocks * (k - 1) + 1;
                let edges = (0..blocks).flat_map(|b| {
                    let first = b * (k - 1);
                    clique(&(first..first + k).collect::<Vec<_>>())
                });
                Graph::new(n, edges)
            }
            Family::Octahedron => {
                let edges = (0..6).flat_map(|u| {
                    (u + 1..6)
                        .filter(move |v| u / 2 != v / 2)
                        .map(move |v| (u, v))
                });
                Graph::new(6, edges)
            }
            Family::TailGadget => {
                let mut edges = clique(&[0, 1, 2, 3, 4]);
                edges.extend([(1, 5), (2, 5), (3, 6), (4, 6)]);
                Graph::new(7, edges)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(n) | Family::Star(n) | Family::Clique(n) | Family::Cycle(n) => {
                write!(f, "{} {n}", self.name())
            }
            Family::CompleteBipartite(a, b) => write!(f, "{} {a} {b}", self.name()),
            Family::BlockChain { blocks, k } => write!(f, "{} {blocks} {k}", self.name()),
            Family::Octahedron | Family::TailGadget => f.write_str(self.name()),
        }
    }
}

/// `family(name, params)` as a graph.
pub fn family(name: &str, params: &[usize]) -> Result<Graph> {
    Family::from_name(name, params)?.graph()
}

fn edge_bit(u: usize, v: usize) -> u64 {
    let (u, v) = (u.min(v), u.max(v));
    1 << (v * (v - 1) / 2 + u)
}

fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let edges = (1..n).flat_map(|v| (0..v).map(move |u| (u, v)));
    Graph::new(n, edges.filter(|&(u, v)| mask & edge_bit(u, v) != 0)).expect("edges in range")
}

/// Every connected distance-hereditary graph on `1..=n_max` vertices whose
/// vertices can be inserted in id order, one labeled edge set at a time.
/// Every isomorphism class appears at least once.
pub fn enumerate_small_dh(n_max: usize) -> Result<SmallDhGraphs> {
    enumerate_small_dh_capped(n_max, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_small_dh_capped(n_max: usize, cap: usize) -> Result<SmallDhGraphs> {
    let cap = cap.min(ENUMERATION_LIMIT);
    if n_max > cap {
        return Err(Error::CapExceeded { n: n_max, cap });
    }
    Ok(SmallDhGraphs {
        n_max,
        n: 1,
        level: if n_max == 0 { Vec::new() } else { vec![0] },
        next: 0,
    })
}

/// Lazy stream of [`enumerate_small_dh`]; graphs come in order of size.
#[derive(Debug, Clone)]
pub struct SmallDhGraphs {
    n_max: usize,
    n: usize,
    level: Vec<u64>,
    next: usize,
}

impl SmallDhGraphs {
    fn advance_level(&mut self) {
        let k = self.n;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for &mask in &self.level {
            let nbrs = |a: usize| (0..k).filter(move |&w| w != a && mask & edge_bit(a, w) != 0);
            for a in 0..k {
                let open = nbrs(a).fold(0u64, |m, w| m | edge_bit(w, k));
                let options = [edge_bit(a, k), open | edge_bit(a, k), open];
                for (i, add) in options.into_iter().enumerate() {
                    if i == 2 && open == 0 {
                        continue;
                    }
                    let next = mask | add;
                    if seen.insert(next) {
                        out.push(next);
                    }
                }
            }
        }
        out.sort_unstable();
        self.level = out;
        self.n += 1;
        self.next = 0;
    }
}

impl Iterator for SmallDhGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n > self.n_max {
            return None;
        }
        if self.next == self.level.len() {
            if self.n == self.n_max {
                self.n += 1;
                return None;
            }
            self.advance_level();
        }
        let mask = self.level[self.next];
        self.next += 1;
        Some(mask_to_graph(self.n, mask))
    }
}
