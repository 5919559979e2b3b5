//! Timing the three winnability pipelines on seeded random graphs.
//!
//! * `full_reduce`: semi-reduce, compute the `q`-reduced form, check it is effective.
//! * `early_return`: the same loop, stopping once the divisor is effective.
//! * `modified`: the burning algorithm lit at every vertex in debt.
//!
//! Instance `(n, graph_id)` uses the seed `seed ^ mix((n << 32) | graph_id)`,
//! where `mix` is the SplitMix64 finalizer, so any row can be rerun alone.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::burning::{self, modified_core, TraceOptions};
use crate::divisor::{enumerate_effective, Divisor};
use crate::families::random_connected;
use crate::{Error, Multigraph, Result};

pub const ROWS_HEADER: &str = "n,graph_id,seed,algorithm,elapsed_ns,passes,total_firings,outcome";
pub const SUMMARY_HEADER: &str = "n,algorithm,mean_ns,median_ns,max_ns,mean_passes,mean_firings";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    FullReduce,
    EarlyReturn,
    Modified,
}

pub const ALGORITHMS: [Algorithm; 3] = [Algorithm::FullReduce, Algorithm::EarlyReturn, Algorithm::Modified];

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::FullReduce => "full_reduce",
            Algorithm::EarlyReturn => "early_return",
            Algorithm::Modified => "modified",
        })
    }
}

/// What is timed on each instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    /// `min(rank, r)` for every divisor of a seeded panel.
    DecideRank,
    /// `gon_r` of the graph.
    Gonality,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub graphs_per_n: usize,
    pub p: f64,
    pub seed: u64,
    pub r: usize,
    pub task: Task,
    /// Timed repetitions per measurement; the minimum is kept.
    pub reps: usize,
    /// Divisors per graph for [`Task::DecideRank`].
    pub panel_size: usize,
    /// Degree of every panel divisor.
    pub panel_degree: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_min: 5,
            n_max: 12,
            graphs_per_n: 19,
            p: 0.5,
            seed: 0,
            r: 2,
            task: Task::DecideRank,
            reps: 5,
            panel_size: 8,
            panel_degree: 4,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n_min < 2 || self.n_max < self.n_min {
            return bad(format!("vertex range {}..={} must satisfy 2 <= n_min <= n_max", self.n_min, self.n_max));
        }
        if self.n_max > crate::graph::MAX_VERTICES {
            return bad(format!("at most {} vertices are supported", crate::graph::MAX_VERTICES));
        }
        if self.graphs_per_n == 0 || self.reps == 0 || self.panel_size == 0 {
            return bad("graph count, repetitions and panel size must be positive".into());
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad(format!("edge probability must lie in (0, 1], got {}", self.p));
        }
        if self.task == Task::Gonality && self.r == 0 {
            return bad("gonality index must be at least 1".into());
        }
        Ok(())
    }
}

/// One timed measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub graph_id: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub elapsed_ns: u64,
    pub passes: u64,
    pub total_firings: u64,
    pub outcome: String,
    /// Sum over calls of `|V| · diam · deg(D+)`; only meaningful for `modified`.
    #[serde(skip)]
    pub firing_bound: u64,
}

/// SplitMix64 output function.
pub fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn instance_seed(seed: u64, n: usize, graph_id: usize) -> u64 {
    seed ^ mix(((n as u64) << 32) | graph_id as u64)
}

#[derive(Clone, Copy, Default)]
struct Counters {
    passes: u64,
    firings: u64,
    bound: u64,
}

/// Per-graph data computed outside the timed region.
struct Instance {
    g: Multigraph,
    diameter: i64,
    /// Divisors of each degree `1..=r`, in enumeration order.
    removals: Vec<Vec<Divisor>>,
}

impl Instance {
    fn new(g: Multigraph, r: usize) -> Result<Self> {
        let diameter = g.diameter()? as i64;
        let n = g.num_vertices();
        let removals = (1..=r).map(|k| enumerate_effective(n, k).collect()).collect();
        Ok(Instance { g, diameter, removals })
    }

    /// Winnability of `d` by the chosen pipeline.
    fn winnable(&self, alg: Algorithm, d: &Divisor, c: &mut Counters) -> Result<bool> {
        let g = &self.g;
        match alg {
            Algorithm::FullReduce => {
                let run = burning::reduce_traced(g, 0, d, TraceOptions::default())?;
                c.passes += run.trace.passes as u64;
                c.firings += run.trace.total_firings() as u64;
                Ok(run.divisor.is_effective())
            }
            Algorithm::EarlyReturn => {
                let run = burning::reduce_early_traced(g, 0, d, TraceOptions::default())?;
                c.passes += run.trace.passes as u64;
                c.firings += run.trace.total_firings() as u64;
                Ok(run.divisor.is_effective())
            }
            Algorithm::Modified => {
                let out = modified_core(g, d, TraceOptions::default(), None);
                let plus = d.positive_part().degree();
                let per_vertex = self.diameter * plus;
                let total = g.num_vertices() as i64 * per_vertex;
                let (passes, fired, max) =
                    (out.trace.passes as i64, out.trace.total_firings(), out.trace.max_firings());
                if max > per_vertex || passes > total || fired > total {
                    return Err(Error::Invariant(format!(
                        "firing bound broken on {d:?}: max {max}, passes {passes}, total {fired}, bound {per_vertex} per vertex"
                    )));
                }
                c.passes += passes as u64;
                c.firings += fired as u64;
                c.bound += total as u64;
                Ok(out.is_some())
            }
        }
    }

    fn rank_at_least(&self, alg: Algorithm, d: &Divisor, r: usize, c: &mut Counters) -> Result<bool> {
        if r == 0 {
            return self.winnable(alg, d, c);
        }
        for e in &self.removals[r - 1] {
            if !self.winnable(alg, &(d - e), c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn capped_rank(&self, alg: Algorithm, d: &Divisor, r: usize, c: &mut Counters) -> Result<usize> {
        let mut k = 0;
        while k < r && self.rank_at_least(alg, d, k + 1, c)? {
            k += 1;
        }
        Ok(k)
    }

    fn gonality(&self, alg: Algorithm, r: usize, c: &mut Counters) -> Result<usize> {
        let n = self.g.num_vertices();
        let ceiling = self.g.genus() as usize + r;
        for k in r..=ceiling {
            for d in enumerate_effective(n, k) {
                if self.rank_at_least(alg, &d, r, c)? {
                    return Ok(k);
                }
            }
        }
        Err(Error::Invariant(format!("no divisor of degree {ceiling} has rank {r}")))
    }
}

/// Effective divisors of the given degree with uniformly placed chips.
fn panel(n: usize, size: usize, degree: usize, seed: u64) -> Vec<Divisor> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix(seed));
    (0..size)
        .map(|_| {
            let mut d = Divisor::zero(n);
            for _ in 0..degree {
                d[rng.gen_range(0..n)] += 1;
            }
            d
        })
        .collect()
}

/// Times every pipeline on instance `(n, graph_id)`.
pub fn run_instance(cfg: &BenchConfig, n: usize, graph_id: usize) -> Result<Vec<BenchRow>> {
    let seed = instance_seed(cfg.seed, n, graph_id);
    let g = random_connected(n, cfg.p, seed)?;
    let inst = Instance::new(g, cfg.r)?;
    let divisors = panel(n, cfg.panel_size, cfg.panel_degree, seed);
    let mut rows = Vec::with_capacity(ALGORITHMS.len());
    for alg in ALGORITHMS {
        let mut best = u64::MAX;
        let mut result = None;
        for _ in 0..cfg.reps {
            let mut c = Counters::default();
            let start = Instant::now();
            let outcome = match cfg.task {
                Task::DecideRank => divisors
                    .iter()
                    .map(|d| inst.capped_rank(alg, d, cfg.r, &mut c).map(|k| k.to_string()))
                    .collect::<Result<String>>()?,
                Task::Gonality => inst.gonality(alg, cfg.r, &mut c)?.to_string(),
            };
            best = best.min(start.elapsed().as_nanos() as u64);
            result = Some((outcome, c));
        }
        let (outcome, c) = result.expect("at least one repetition");
        rows.push(BenchRow {
            n,
            graph_id,
            seed,
            algorithm: alg,
            elapsed_ns: best,
            passes: c.passes,
            total_firings: c.firings,
            outcome,
            firing_bound: c.bound,
        });
    }
    if rows.iter().any(|row| row.outcome != rows[0].outcome) {
        let seen: Vec<_> = rows.iter().map(|row| format!("{}={}", row.algorithm, row.outcome)).collect();
        return Err(Error::Invariant(format!("pipelines disagree on n={n} graph {graph_id}: {}", seen.join(", "))));
    }
    Ok(rows)
}

/// Rows for every instance, ordered by `(n, graph_id, algorithm)`.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    run_bench_streaming(cfg, |row| {
        rows.push(row.clone());
        Ok(())
    })?;
    Ok(rows)
}

/// Like [`run_bench`], handing each row to `sink` as soon as its instance finishes.
pub fn run_bench_streaming(cfg: &BenchConfig, mut sink: impl FnMut(&BenchRow) -> Result<()>) -> Result<()> {
    cfg.validate()?;
    for n in cfg.n_min..=cfg.n_max {
        for graph_id in 0..cfg.graphs_per_n {
            for row in run_instance(cfg, n, graph_id)? {
                sink(&row)?;
            }
        }
    }
    Ok(())
}

/// Per-`(n, algorithm)` aggregate. Means and medians round down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub mean_ns: u64,
    pub median_ns: u64,
    pub max_ns: u64,
    pub mean_passes: u64,
    pub mean_firings: u64,
}

fn floor_mean(xs: &[u64]) -> u64 {
    (xs.iter().map(|&x| x as u128).sum::<u128>() / xs.len() as u128) as u64
}

fn floor_median(xs: &mut [u64]) -> u64 {
    xs.sort_unstable();
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        ((xs[m - 1] as u128 + xs[m] as u128) / 2) as u64
    }
}

/// Aggregates rows; also rechecks the firing bound on every `modified` row.
pub fn summarize(rows: &[BenchRow]) -> Result<Vec<SummaryRow>> {
    if rows.is_empty() {
        return Err(Error::Empty("no benchmark rows to summarize".into()));
    }
    let mut groups: BTreeMap<(usize, Algorithm), Vec<&BenchRow>> = BTreeMap::new();
    for row in rows {
        if row.algorithm == Algorithm::Modified && row.total_firings > row.firing_bound {
            return Err(Error::Invariant(format!(
                "n={} graph {}: {} firings exceed the bound {}",
                row.n, row.graph_id, row.total_firings, row.firing_bound
            )));
        }
        groups.entry((row.n, row.algorithm)).or_default().push(row);
    }
    Ok(groups
        .into_iter()
        .map(|((n, algorithm), group)| {
            let mut ns: Vec<u64> = group.iter().map(|r| r.elapsed_ns).collect();
            let passes: Vec<u64> = group.iter().map(|r| r.passes).collect();
            let firings: Vec<u64> = group.iter().map(|r| r.total_firings).collect();
            SummaryRow {
                n,
                algorithm,
                mean_ns: floor_mean(&ns),
                max_ns: *ns.iter().max().unwrap(),
                median_ns: floor_median(&mut ns),
                mean_passes: floor_mean(&passes),
                mean_firings: floor_mean(&firings),
            }
        })
        .collect())
}

/// Vertex counts where `modified` has mean time at most that of `full_reduce`,
/// out of all vertex counts present.
pub fn modified_wins(summary: &[SummaryRow]) -> (usize, usize) {
    let mut by_n: BTreeMap<usize, (Option<u64>, Option<u64>)> = BTreeMap::new();
    for s in summary {
        let slot = by_n.entry(s.n).or_default();
        match s.algorithm {
            Algorithm::FullReduce => slot.0 = Some(s.mean_ns),
            Algorithm::Modified => slot.1 = Some(s.mean_ns),
            Algorithm::EarlyReturn => {}
        }
    }
    let wins = by_n.values().filter(|(full, modified)| matches!((full, modified), (Some(f), Some(m)) if m <= f)).count();
    (wins, by_n.len())
}

fn write_csv<T: Serialize>(out: impl Write, items: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for item in items {
        w.serialize(item)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rows(out: impl Write, rows: &[BenchRow]) -> Result<()> {
    if rows.is_empty() {
        let mut out = out;
        writeln!(out, "{ROWS_HEADER}")?;
        return Ok(());
    }
    write_csv(out, rows)
}

pub fn write_summary(out: impl Write, summary: &[SummaryRow]) -> Result<()> {
    if summary.is_empty() {
        let mut out = out;
        writeln!(out, "{SUMMARY_HEADER}")?;
        return Ok(());
    }
    write_csv(out, summary)
}

/// Tab-separated `n` against mean nanoseconds, one column per algorithm.
pub fn write_gnuplot(mut out: impl Write, summary: &[SummaryRow]) -> Result<()> {
    writeln!(out, "# n\tfull_reduce\tearly_return\tmodified")?;
    let mut by_n: BTreeMap<usize, [Option<u64>; 3]> = BTreeMap::new();
    for s in summary {
        let idx = ALGORITHMS.iter().position(|&a| a == s.algorithm).unwrap();
        by_n.entry(s.n).or_default()[idx] = Some(s.mean_ns);
    }
    for (n, cols) in by_n {
        let cells: Vec<String> = cols.iter().map(|c| c.map_or("NaN".into(), |v| v.to_string())).collect();
        writeln!(out, "{n}\t{}", cells.join("\t"))?;
    }
    Ok(())
}
