//! Wall-clock timing of the μ pipeline on seeded random graphs.

use std::fmt::Write as _;
use std::time::Duration;

use mutvis_core::generators::{random_dh, ExpansionSpec};
use mutvis_core::Result;

use crate::report::{timed_mu_set, PhaseTimes};

/// Generator weights for benchmarks. Pendant-heavy so that the edge count
/// grows linearly with `n`; twin-heavy weights make `m` grow faster than `n`.
pub const BENCH_WEIGHTS: [f64; 3] = [0.7, 0.15, 0.15];

pub const DEFAULT_RUNS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Per-phase medians over the runs.
    pub phases: PhaseTimes,
    /// Median of the per-run totals.
    pub total: Duration,
}

impl BenchRow {
    pub fn ns_per_element(&self) -> f64 {
        self.total.as_secs_f64() * 1e9 / (self.n + self.m) as f64
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

/// Times every size `runs` times after one warm-up pass. Sizes are
/// interleaved within each round so drift affects all of them alike.
pub fn run_bench(
    sizes: &[usize],
    seed: u64,
    weights: [f64; 3],
    runs: usize,
) -> Result<Vec<BenchRow>> {
    let runs = runs.max(1);
    let graphs = sizes
        .iter()
        .map(|&n| random_dh(&ExpansionSpec::new(seed, n).with_weights(weights)))
        .collect::<Result<Vec<_>>>()?;
    for g in &graphs {
        timed_mu_set(g)?;
    }
    let mut samples = vec![Vec::with_capacity(runs); graphs.len()];
    for _ in 0..runs {
        for (i, g) in graphs.iter().enumerate() {
            samples[i].push(timed_mu_set(g)?.1);
        }
    }
    Ok(graphs
        .iter()
        .zip(samples)
        .map(|(g, s)| {
            let pick = |f: fn(&PhaseTimes) -> Duration| median(s.iter().map(f).collect());
            BenchRow {
                n: g.n(),
                m: g.m(),
                phases: PhaseTimes {
                    decompose: pick(|t| t.decompose),
                    orient: pick(|t| t.orient),
                    t_arrows: pick(|t| t.t_arrows),
                    algorithm: pick(|t| t.algorithm),
                },
                total: pick(|t| t.total()),
            }
        })
        .collect())
}

pub fn format_table(rows: &[BenchRow]) -> String {
    let ms = |d: Duration| format!("{:.3}", d.as_secs_f64() * 1e3);
    let mut out = format!(
        "{:>10} {:>10} {:>12} {:>10} {:>12} {:>13} {:>10} {:>12}\n",
        "n",
        "m",
        "decompose_ms",
        "orient_ms",
        "t_arrows_ms",
        "algorithm_ms",
        "total_ms",
        "ns_per_elem"
    );
    for r in rows {
        writeln!(
            out,
            "{:>10} {:>10} {:>12} {:>10} {:>12} {:>13} {:>10} {:>12.1}",
            r.n,
            r.m,
            ms(r.phases.decompose),
            ms(r.phases.orient),
            ms(r.phases.t_arrows),
            ms(r.phases.algorithm),
            ms(r.total),
            r.ns_per_element()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sizes_give_header_only() {
        let rows = run_bench(&[], 1, BENCH_WEIGHTS, 3).unwrap();
        assert!(rows.is_empty());
        assert_eq!(format_table(&rows).lines().count(), 1);
    }

    #[test]
    fn rows_follow_sizes() {
        let rows = run_bench(&[50, 200], 3, BENCH_WEIGHTS, 2).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![50, 200]);
        let again = run_bench(&[50, 200], 3, BENCH_WEIGHTS, 1).unwrap();
        assert_eq!(rows[1].m, again[1].m);
        assert_eq!(format_table(&rows).lines().count(), 3);
    }
}
