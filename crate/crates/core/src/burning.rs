//! Burning algorithms.
//!
//! * [`reduce`]: borrow until the divisor is effective away from `q`, then
//!   iterate Dhar's burning pass from `q`, firing the unburned set each time,
//!   until the whole graph burns. The result is the unique `q`-reduced divisor.
//! * [`reduce_early`]: the same loop, stopping as soon as no vertex is in debt.
//! * [`modified_dhar`]: lights every vertex in debt at once and fires the
//!   unburned set until debt is gone (`Some`) or the whole graph burns (`None`).
//!
//! Every run is sequential; the pass and firing counters are always recorded.

use crate::divisor::{Divisor, FiringScript};
use crate::{Error, Multigraph, Result, VertexSet};

/// Result of one burning pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BurnOutcome {
    AllBurned,
    /// The vertices that never caught fire. Never empty, never a source.
    Unburned(VertexSet),
}

/// `β_u` before and after one fired set, for a vertex `u` that was a fire source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaRecord {
    pub pass: usize,
    pub vertex: usize,
    pub before: Vec<i64>,
    pub after: Vec<i64>,
}

/// Counters collected during a burning run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnTrace {
    /// Number of nonempty sets fired by burning passes.
    pub passes: usize,
    /// Per-vertex number of times fired by burning passes (borrowing excluded).
    pub firings: FiringScript,
    pub beta_log: Vec<BetaRecord>,
    /// Every intermediate divisor, starting with the input, when requested.
    pub states: Vec<Divisor>,
}

impl BurnTrace {
    fn new(n: usize) -> Self {
        BurnTrace { passes: 0, firings: FiringScript::zero(n), beta_log: Vec::new(), states: Vec::new() }
    }

    pub fn max_firings(&self) -> i64 {
        self.firings.max()
    }

    pub fn total_firings(&self) -> i64 {
        self.firings.total()
    }
}

/// What a burning run records beyond the mandatory counters.
#[derive(Clone, Copy, Debug, Default)]
pub struct TraceOptions {
    pub log_beta: bool,
    pub record_states: bool,
}

impl TraceOptions {
    pub fn full() -> Self {
        TraceOptions { log_beta: true, record_states: true }
    }
}

/// Removal order for the literal scan form of the burning pass and for borrowing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder(Vec<usize>);

impl VertexOrder {
    pub fn ascending(n: usize) -> Self {
        VertexOrder((0..n).collect())
    }

    /// Requires a permutation of `0..n`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidParameter(format!("{order:?} is not a permutation")));
            }
        }
        Ok(VertexOrder(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

fn check_connected_len(g: &Multigraph, d: &Divisor) -> Result<()> {
    d.check_len(g.num_vertices())?;
    g.require_connected()
}

/// Worklist burn: a vertex catches fire once its chips are fewer than its
/// edges to burned vertices. Vertices in debt outside the sources burn at once.
pub(crate) fn burn(g: &Multigraph, sources: VertexSet, d: &Divisor) -> BurnOutcome {
    let n = g.num_vertices();
    let mut unburned = sources.complement(n);
    let mut exposure = vec![0i64; n];
    let mut stack: Vec<usize> = sources.iter().collect();
    for v in unburned.iter() {
        if d[v] < 0 {
            unburned.remove(v);
            stack.push(v);
        }
    }
    while let Some(b) = stack.pop() {
        for &(u, m) in g.neighbors(b) {
            if unburned.contains(u) {
                exposure[u] += m;
                if d[u] < exposure[u] {
                    unburned.remove(u);
                    stack.push(u);
                }
            }
        }
    }
    if unburned.is_empty() {
        BurnOutcome::AllBurned
    } else {
        BurnOutcome::Unburned(unburned)
    }
}

fn check_pass_preconditions(g: &Multigraph, sources: VertexSet, d: &Divisor) -> Result<()> {
    d.check_len(g.num_vertices())?;
    if sources.is_empty() {
        return Err(Error::Precondition("a burning pass needs at least one source".into()));
    }
    if !sources.is_subset(g.vertices()) {
        return Err(Error::Precondition(format!("sources {sources:?} out of range")));
    }
    if let Some(v) = sources.complement(g.num_vertices()).iter().find(|&v| d[v] < 0) {
        return Err(Error::Precondition(format!("vertex {v} is in debt but not a fire source")));
    }
    Ok(())
}

/// One burning pass lit at `sources`.
pub fn dhar_pass(g: &Multigraph, sources: VertexSet, d: &Divisor) -> Result<BurnOutcome> {
    check_pass_preconditions(g, sources, d)?;
    Ok(burn(g, sources, d))
}

/// The burning pass as a literal scan: repeatedly remove the first vertex in
/// `order` whose chips are below its out-degree from the unburned set.
pub fn dhar_pass_in_order(g: &Multigraph, sources: VertexSet, d: &Divisor, order: &VertexOrder) -> Result<BurnOutcome> {
    check_pass_preconditions(g, sources, d)?;
    if order.0.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch { expected: g.num_vertices(), actual: order.0.len() });
    }
    let mut w = sources.complement(g.num_vertices());
    loop {
        match order.0.iter().copied().find(|&v| w.contains(v) && d[v] < g.outdeg_unchecked(w, v)) {
            Some(v) => w.remove(v),
            None => break,
        }
    }
    Ok(if w.is_empty() { BurnOutcome::AllBurned } else { BurnOutcome::Unburned(w) })
}

/// Chips at each distance from `q`, indexed `0..=diameter`.
pub fn compute_beta(g: &Multigraph, q: usize, d: &Divisor) -> Result<Vec<i64>> {
    d.check_len(g.num_vertices())?;
    let dist = g.distances(q)?;
    Ok(beta_from_distances(&dist, g.diameter()?, d))
}

fn beta_from_distances(dist: &[usize], diameter: usize, d: &Divisor) -> Vec<i64> {
    let mut beta = vec![0i64; diameter + 1];
    for (v, &k) in dist.iter().enumerate() {
        beta[k] += d[v];
    }
    beta
}

/// Distance rows for beta logging, computed once per traced run.
pub(crate) struct BetaTable {
    dist: Vec<Vec<usize>>,
    diameter: usize,
}

impl BetaTable {
    fn new(g: &Multigraph) -> Result<Self> {
        let dist = (0..g.num_vertices()).map(|q| g.distances(q)).collect::<Result<Vec<_>>>()?;
        let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
        Ok(BetaTable { dist, diameter })
    }

    fn beta(&self, q: usize, d: &Divisor) -> Vec<i64> {
        beta_from_distances(&self.dist[q], self.diameter, d)
    }
}

/// Effective away from `q`, by repeated borrowing.
pub fn semi_reduce(g: &Multigraph, q: usize, d: &Divisor) -> Result<(Divisor, FiringScript)> {
    semi_reduce_in_order(g, q, d, &VertexOrder::ascending(g.num_vertices()))
}

/// [`semi_reduce`] choosing the borrowing vertex by the first debtor in `order`.
pub fn semi_reduce_in_order(g: &Multigraph, q: usize, d: &Divisor, order: &VertexOrder) -> Result<(Divisor, FiringScript)> {
    check_connected_len(g, d)?;
    g.check_vertex(q)?;
    let mut out = d.clone();
    let mut script = FiringScript::zero(g.num_vertices());
    semi_reduce_core(g, q, &mut out, &mut script, order.as_slice());
    Ok((out, script.normalized()))
}

fn semi_reduce_core(g: &Multigraph, q: usize, d: &mut Divisor, script: &mut FiringScript, order: &[usize]) {
    // Each vertex in debt borrows just enough times to clear its own debt.
    // While it is still in debt every one of those borrows is legal, so the
    // bulk step is a legal sequence of single borrows.
    while let Some(v) = order.iter().copied().find(|&v| v != q && d[v] < 0) {
        let val = g.valence(v);
        let times = (-d[v] + val - 1) / val;
        d[v] += times * val;
        for &(u, m) in g.neighbors(v) {
            d[u] -= times * m;
        }
        for _ in 0..times {
            script.add_borrow(v);
        }
    }
}

/// Full output of a traced reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub divisor: Divisor,
    /// `apply_script(input, script) == divisor`, normalized to minimum zero.
    pub script: FiringScript,
    pub trace: BurnTrace,
    /// Only meaningful for [`reduce_early_traced`].
    pub stopped_early: bool,
}

struct ReduceRun<'a> {
    g: &'a Multigraph,
    q: usize,
    early: bool,
    opts: TraceOptions,
    order: Option<&'a VertexOrder>,
}

impl ReduceRun<'_> {
    fn run(&self, d: &Divisor) -> Result<Reduction> {
        let g = self.g;
        check_connected_len(g, d)?;
        g.check_vertex(self.q)?;
        let n = g.num_vertices();
        let mut trace = BurnTrace::new(n);
        let mut script = FiringScript::zero(n);
        let mut cur = d.clone();
        if self.early && cur.is_effective() {
            if self.opts.record_states {
                trace.states.push(cur.clone());
            }
            return Ok(Reduction { divisor: cur, script, trace, stopped_early: true });
        }
        let asc = VertexOrder::ascending(n);
        let order = self.order.unwrap_or(&asc);
        semi_reduce_core(g, self.q, &mut cur, &mut script, order.as_slice());
        let betas = if self.opts.log_beta { Some(BetaTable::new(g)?) } else { None };
        if self.opts.record_states {
            trace.states.push(cur.clone());
        }
        let source = VertexSet::singleton(self.q);
        let stopped_early = loop {
            if self.early && cur.is_effective() {
                break true;
            }
            let outcome = match self.order {
                Some(order) => dhar_pass_in_order(g, source, &cur, order)?,
                None => burn(g, source, &cur),
            };
            let BurnOutcome::Unburned(w) = outcome else {
                break false;
            };
            let before = betas.as_ref().map(|t| t.beta(self.q, &cur));
            cur.fire_set_in_place(g, w);
            script.add_set(w);
            trace.firings.add_set(w);
            if let (Some(t), Some(before)) = (&betas, before) {
                trace.beta_log.push(BetaRecord { pass: trace.passes, vertex: self.q, before, after: t.beta(self.q, &cur) });
            }
            trace.passes += 1;
            if self.opts.record_states {
                trace.states.push(cur.clone());
            }
        };
        Ok(Reduction { divisor: cur, script: script.normalized(), trace, stopped_early })
    }
}

/// The unique `q`-reduced divisor equivalent to `d`, with a witnessing script.
pub fn reduce(g: &Multigraph, q: usize, d: &Divisor) -> Result<(Divisor, FiringScript)> {
    let r = reduce_traced(g, q, d, TraceOptions::default())?;
    Ok((r.divisor, r.script))
}

pub fn reduce_traced(g: &Multigraph, q: usize, d: &Divisor, opts: TraceOptions) -> Result<Reduction> {
    ReduceRun { g, q, early: false, opts, order: None }.run(d)
}

/// [`reduce`] with both borrowing and burning driven by a fixed vertex order.
pub fn reduce_in_order(g: &Multigraph, q: usize, d: &Divisor, order: &VertexOrder) -> Result<(Divisor, FiringScript)> {
    if order.as_slice().len() != g.num_vertices() {
        return Err(Error::DimensionMismatch { expected: g.num_vertices(), actual: order.as_slice().len() });
    }
    let r = ReduceRun { g, q, early: false, opts: TraceOptions::default(), order: Some(order) }.run(d)?;
    Ok((r.divisor, r.script))
}

/// The reduction loop, returning as soon as the current divisor is effective.
///
/// The flag is `true` when debt was eliminated. When it is `false` the full
/// reduction ran and its output equals [`reduce`].
pub fn reduce_early(g: &Multigraph, q: usize, d: &Divisor) -> Result<(Divisor, FiringScript, bool)> {
    let r = reduce_early_traced(g, q, d, TraceOptions::default())?;
    Ok((r.divisor, r.script, r.stopped_early))
}

pub fn reduce_early_traced(g: &Multigraph, q: usize, d: &Divisor, opts: TraceOptions) -> Result<Reduction> {
    ReduceRun { g, q, early: true, opts, order: None }.run(d)
}

/// Output of [`modified_dhar`].
#[derive(Clone, Debug)]
pub struct ModifiedOutcome {
    /// An effective divisor equivalent to the input and the script reaching it.
    pub result: Option<(Divisor, FiringScript)>,
    pub trace: BurnTrace,
}

impl ModifiedOutcome {
    pub fn is_some(&self) -> bool {
        self.result.is_some()
    }

    pub fn divisor(&self) -> Option<&Divisor> {
        self.result.as_ref().map(|(d, _)| d)
    }
}

/// Decides whether `d` is equivalent to an effective divisor.
pub fn modified_dhar(g: &Multigraph, d: &Divisor) -> Result<ModifiedOutcome> {
    modified_dhar_traced(g, d, TraceOptions::default())
}

pub fn modified_dhar_traced(g: &Multigraph, d: &Divisor, opts: TraceOptions) -> Result<ModifiedOutcome> {
    check_connected_len(g, d)?;
    let betas = if opts.log_beta { Some(BetaTable::new(g)?) } else { None };
    Ok(modified_core(g, d, opts, betas.as_ref()))
}

/// Unchecked core used by the rank and gonality searches.
pub(crate) fn modified_core(g: &Multigraph, d: &Divisor, opts: TraceOptions, betas: Option<&BetaTable>) -> ModifiedOutcome {
    let n = g.num_vertices();
    let mut trace = BurnTrace::new(n);
    let mut cur = d.clone();
    if opts.record_states {
        trace.states.push(cur.clone());
    }
    loop {
        let debt = cur.debt_support();
        if debt.is_empty() {
            let script = trace.firings.clone();
            return ModifiedOutcome { result: Some((cur, script)), trace };
        }
        let BurnOutcome::Unburned(w) = burn(g, debt, &cur) else {
            return ModifiedOutcome { result: None, trace };
        };
        let before: Vec<_> = betas.map(|t| debt.iter().map(|u| (u, t.beta(u, &cur))).collect()).unwrap_or_default();
        cur.fire_set_in_place(g, w);
        trace.firings.add_set(w);
        if let Some(t) = betas {
            for (u, b) in before {
                trace.beta_log.push(BetaRecord { pass: trace.passes, vertex: u, before: b, after: t.beta(u, &cur) });
            }
        }
        trace.passes += 1;
        if opts.record_states {
            trace.states.push(cur.clone());
        }
    }
}

/// Fast yes/no form of [`modified_dhar`] for search loops.
pub(crate) fn winnable(g: &Multigraph, d: &Divisor) -> bool {
    let mut cur = d.clone();
    loop {
        let debt = cur.debt_support();
        if debt.is_empty() {
            return true;
        }
        match burn(g, debt, &cur) {
            BurnOutcome::AllBurned => return false,
            BurnOutcome::Unburned(w) => cur.fire_set_in_place(g, w),
        }
    }
}

/// An effective `D' ~ d` with `D' >= e`, when one exists.
pub fn find_dominating(g: &Multigraph, d: &Divisor, e: &Divisor) -> Result<Option<Divisor>> {
    check_connected_len(g, d)?;
    e.check_len(g.num_vertices())?;
    if !e.is_effective() {
        return Err(Error::Precondition("the divisor to dominate must be effective".into()));
    }
    let out = modified_core(g, &(d - e), TraceOptions::default(), None);
    Ok(out.result.map(|(rest, _)| &rest + e))
}

/// Whether `d` is `q`-reduced: effective off `q` and the pass from `q` burns everything.
pub fn is_reduced(g: &Multigraph, q: usize, d: &Divisor) -> Result<bool> {
    check_connected_len(g, d)?;
    g.check_vertex(q)?;
    if (0..g.num_vertices()).any(|v| v != q && d[v] < 0) {
        return Ok(false);
    }
    Ok(burn(g, VertexSet::singleton(q), d) == BurnOutcome::AllBurned)
}
