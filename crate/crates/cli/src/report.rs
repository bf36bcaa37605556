//! The μ pipeline with per-phase timings, and its JSON result document.

use std::time::{Duration, Instant};

use mutvis_core::directed::orient;
use mutvis_core::mu::{mu_set, mu_set_with_report, MuResult};
use mutvis_core::oracle::recognize_dh;
use mutvis_core::split::decomposition_from_sequence;
use mutvis_core::{Graph, Result, VertexSet};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTimes {
    /// Recognition and decomposition.
    pub decompose: Duration,
    pub orient: Duration,
    pub t_arrows: Duration,
    pub algorithm: Duration,
}

impl PhaseTimes {
    pub fn total(&self) -> Duration {
        self.decompose + self.orient + self.t_arrows + self.algorithm
    }

    fn add(&mut self, other: &PhaseTimes) {
        self.decompose += other.decompose;
        self.orient += other.orient;
        self.t_arrows += other.t_arrows;
        self.algorithm += other.algorithm;
    }
}

/// `mu_set` on a connected graph, timing each phase.
pub fn timed_mu_set(g: &Graph) -> Result<(MuResult, PhaseTimes)> {
    if g.n() <= 2 {
        return Ok((mu_set(g)?, PhaseTimes::default()));
    }
    let mut times = PhaseTimes::default();
    let t = Instant::now();
    let seq = recognize_dh(g)?.into_sequence()?;
    let d = decomposition_from_sequence(&seq)?;
    times.decompose = t.elapsed();
    let t = Instant::now();
    let dd = orient(d);
    times.orient = t.elapsed();
    let t = Instant::now();
    let report = dd.t_arrows()?;
    times.t_arrows = t.elapsed();
    let t = Instant::now();
    let result = mu_set_with_report(&dd, &report)?;
    times.algorithm = t.elapsed();
    Ok((result, times))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultDocument {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub is_dh: bool,
    pub mu: usize,
    pub mu_set: Vec<usize>,
    pub sigma_vertices: Vec<usize>,
    pub shape: String,
    /// `(vertex, reason)`, ascending by vertex.
    pub removed_extra: Vec<(usize, String)>,
    pub timings: Option<PhaseTimes>,
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut doc = json!({
            "n": self.n,
            "m": self.m,
            "connected": self.connected,
            "is_dh": self.is_dh,
            "mu": self.mu,
            "mu_set": self.mu_set,
            "sigma_vertices": self.sigma_vertices,
            "shape": self.shape,
            "removed_extra": self
                .removed_extra
                .iter()
                .map(|(v, reason)| json!({ "vertex": v, "reason": reason }))
                .collect::<Vec<Value>>(),
        });
        if let Some(t) = &self.timings {
            doc["timings"] = json!({
                "decompose_ms": ms(t.decompose),
                "orient_ms": ms(t.orient),
                "algorithm_ms": ms(t.t_arrows + t.algorithm),
            });
        }
        let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
        text.push('\n');
        text
    }
}

/// The result document plus any warnings for standard error.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub document: ResultDocument,
    pub warnings: Vec<String>,
}

fn lift(set: &VertexSet, labels: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&v| labels[v]).collect();
    out.sort_unstable();
    out
}

/// Vertex lists of the connected components, each ascending, ordered by
/// smallest vertex.
pub fn component_vertices(g: &Graph) -> Vec<Vec<usize>> {
    let labels = g.components();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; g.n()];
    for v in g.vertices() {
        let c = labels[v];
        if index[c] == usize::MAX {
            index[c] = out.len();
            out.push(Vec::new());
        }
        out[index[c]].push(v);
    }
    out
}

/// Runs the pipeline on every component and reports the one with the
/// largest μ (the first such component on ties). Vertices of different
/// components never see each other, so that μ is the μ of the whole graph.
pub fn analyse(g: &Graph, with_timings: bool) -> Result<Analysis> {
    if g.n() == 0 {
        return Err(mutvis_core::Error::InvalidArgument(
            "graph has no vertices".into(),
        ));
    }
    let components = component_vertices(g);
    let mut warnings = Vec::new();
    if components.len() > 1 {
        warnings.push(format!(
            "warning: graph is disconnected ({} components); reporting the component with the largest mu",
            components.len()
        ));
    }
    let mut times = PhaseTimes::default();
    let mut best: Option<(MuResult, &[usize])> = None;
    for labels in &components {
        let sub = if components.len() == 1 {
            g.clone()
        } else {
            g.induced(labels)
        };
        let (result, t) = timed_mu_set(&sub)?;
        times.add(&t);
        if best.as_ref().is_none_or(|(b, _)| result.mu > b.mu) {
            best = Some((result, labels));
        }
    }
    let (result, labels) = best.expect("at least one component");
    let mut removed_extra: Vec<(usize, String)> = result
        .removed_extra
        .iter()
        .map(|r| (labels[r.vertex], r.reason.name().to_string()))
        .collect();
    removed_extra.sort_unstable();
    let document = ResultDocument {
        n: g.n(),
        m: g.m(),
        connected: components.len() == 1,
        is_dh: true,
        mu: result.mu,
        mu_set: lift(&result.set, labels),
        sigma_vertices: lift(&result.removed_sigma, labels),
        shape: result.shape.name().to_string(),
        removed_extra,
        timings: with_timings.then_some(times),
    };
    Ok(Analysis { document, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_document() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let a = analyse(&g, false).unwrap();
        assert!(a.warnings.is_empty());
        let json = a.document.to_json();
        let value: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["mu"], 2);
        assert_eq!(value["mu_set"], json!([0, 3]));
        assert_eq!(value["sigma_vertices"], json!([1, 2]));
        assert!(value.get("timings").is_none());
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn disconnected_reports_best_component() {
        // P_3 on {0, 1, 2} and K_3 on {3, 4, 5}.
        let g = Graph::new(6, [(0, 1), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let a = analyse(&g, true).unwrap();
        assert_eq!(a.warnings.len(), 1);
        assert!(!a.document.connected);
        assert_eq!(a.document.mu, 3);
        assert_eq!(a.document.mu_set, vec![3, 4, 5]);
        assert!(a.document.to_json().contains("\"timings\""));
    }
}
