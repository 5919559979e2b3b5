//! Rank and gonality by exhaustive search over effective divisors.

use rayon::prelude::*;

use super::table::{trigonal_curve_gonality, SequenceSpec};
use crate::burning::{burn, winnable};
use crate::divisor::{EffectiveDivisors, LexOrder};
use crate::{BurnOutcome, Divisor, Error, Multigraph, Result, VertexSet};

/// Candidates handed to the worker pool per round in parallel searches.
const CHUNK: usize = 2048;

/// Knobs for [`gonality`] and friends. The values found never depend on them.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Only test candidates that are reduced with respect to vertex 0.
    pub reduced_only: bool,
    /// Worker threads; 0 and 1 both mean sequential.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { reduced_only: false, jobs: 1 }
    }
}

/// A divisor of minimum degree with rank at least `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalityWitness {
    pub r: usize,
    pub value: usize,
    pub witness: Divisor,
}

/// Rank tests against a fixed graph.
pub(crate) struct RankOracle<'a> {
    g: &'a Multigraph,
    /// Vertices of minimum valence, probed first with `E = r·(v)`.
    probes: Vec<usize>,
}

impl<'a> RankOracle<'a> {
    pub(crate) fn new(g: &'a Multigraph) -> Self {
        let min = (0..g.num_vertices()).map(|v| g.valence(v)).min().unwrap_or(0);
        let probes = (0..g.num_vertices()).filter(|&v| g.valence(v) == min).collect();
        RankOracle { g, probes }
    }

    pub(crate) fn at_least(&self, d: &Divisor, r: usize) -> bool {
        if r == 0 {
            return winnable(self.g, d);
        }
        if d.degree() < r as i64 {
            return false;
        }
        let r = r as i64;
        for &v in &self.probes {
            let mut x = d.clone();
            x[v] -= r;
            if !winnable(self.g, &x) {
                return false;
            }
        }
        let n = self.g.num_vertices();
        EffectiveDivisors::new(n, r as usize, LexOrder::Descending)
            .filter(|e| !self.probes.iter().any(|&v| e[v] == r))
            .all(|e| winnable(self.g, &(d - &e)))
    }

    pub(crate) fn rank(&self, d: &Divisor) -> i64 {
        if !winnable(self.g, d) {
            return -1;
        }
        let mut r = 0;
        while r < d.degree() && self.at_least(d, r as usize + 1) {
            r += 1;
        }
        r
    }
}

fn check(g: &Multigraph, d: &Divisor) -> Result<()> {
    d.check_len(g.num_vertices())?;
    g.require_connected()
}

fn genus_of(g: &Multigraph) -> Result<usize> {
    g.require_connected()?;
    Ok(g.genus() as usize)
}

/// Whether every effective `E` of degree `r` leaves `d - E` winnable.
pub fn has_rank_at_least(g: &Multigraph, d: &Divisor, r: usize) -> Result<bool> {
    check(g, d)?;
    Ok(RankOracle::new(g).at_least(d, r))
}

/// The rank of `d`, or -1 when no effective divisor is equivalent to it.
pub fn rank(g: &Multigraph, d: &Divisor) -> Result<i64> {
    check(g, d)?;
    Ok(RankOracle::new(g).rank(d))
}

/// `r(d) - r(K - d) - deg(d) - 1 + g`, which Riemann–Roch says is zero.
pub fn rr_residual(g: &Multigraph, d: &Divisor) -> Result<i64> {
    check(g, d)?;
    let oracle = RankOracle::new(g);
    let dual = &crate::divisor::canonical(g) - d;
    Ok(oracle.rank(d) - oracle.rank(&dual) - d.degree() - 1 + g.genus())
}

struct Search<'a> {
    g: &'a Multigraph,
    oracle: RankOracle<'a>,
    reduced_only: bool,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Multigraph, opts: &SearchOptions) -> Result<Self> {
        g.require_connected()?;
        let pool = if opts.jobs > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", opts.jobs)))?;
            Some(pool)
        } else {
            None
        };
        Ok(Search { g, oracle: RankOracle::new(g), reduced_only: opts.reduced_only, pool })
    }

    fn accepts(&self, d: &Divisor, r: usize) -> bool {
        if self.reduced_only && burn(self.g, VertexSet::singleton(0), d) != BurnOutcome::AllBurned {
            return false;
        }
        self.oracle.at_least(d, r)
    }

    /// Lexicographically least accepted divisor of degree `k`.
    fn first_winner(&self, r: usize, k: usize) -> Option<Divisor> {
        let mut candidates = EffectiveDivisors::new(self.g.num_vertices(), k, LexOrder::Ascending);
        let Some(pool) = &self.pool else {
            return candidates.find(|d| self.accepts(d, r));
        };
        loop {
            let chunk: Vec<Divisor> = candidates.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                return None;
            }
            if let Some(d) = pool.install(|| chunk.into_par_iter().find_first(|d| self.accepts(d, r))) {
                return Some(d);
            }
        }
    }

    fn gonality(&self, r: usize) -> Result<GonalityWitness> {
        if r == 0 {
            return Err(Error::InvalidParameter("gonality index must be at least 1".into()));
        }
        let ceiling = self.g.genus() as usize + r;
        for k in r..=ceiling {
            if let Some(witness) = self.first_winner(r, k) {
                return Ok(GonalityWitness { r, value: k, witness });
            }
        }
        Err(Error::Invariant(format!("no divisor of degree {ceiling} has rank {r}")))
    }
}

/// True iff no effective divisor of degree `k` has rank at least `r`.
pub fn is_gon_gt(g: &Multigraph, r: usize, k: usize, opts: &SearchOptions) -> Result<bool> {
    Ok(gon_witness(g, r, k, opts)?.is_none())
}

/// The lexicographically least effective divisor of degree `k` and rank at least `r`.
pub fn gon_witness(g: &Multigraph, r: usize, k: usize, opts: &SearchOptions) -> Result<Option<Divisor>> {
    if r == 0 {
        return Err(Error::InvalidParameter("gonality index must be at least 1".into()));
    }
    Ok(Search::new(g, opts)?.first_winner(r, k))
}

/// `gon_r(g)` with its lexicographically least witness.
pub fn gonality(g: &Multigraph, r: usize, opts: &SearchOptions) -> Result<GonalityWitness> {
    Search::new(g, opts)?.gonality(r)
}

/// `gon_1 ..= gon_upto`; indices at or beyond the genus use `g + r` directly.
pub fn gonality_sequence(g: &Multigraph, upto: usize) -> Result<SequenceSpec> {
    gonality_sequence_with(g, upto, &SearchOptions::default())
}

pub fn gonality_sequence_with(g: &Multigraph, upto: usize, opts: &SearchOptions) -> Result<SequenceSpec> {
    if upto == 0 {
        return Err(Error::InvalidParameter("sequence length must be at least 1".into()));
    }
    let genus = genus_of(g)?;
    let search = Search::new(g, opts)?;
    let mut terms = Vec::with_capacity(upto);
    for r in 1..=upto {
        terms.push(if r >= genus { genus + r } else { search.gonality(r)?.value });
    }
    Ok(SequenceSpec { genus, gon1: terms[0], terms, conditional: false })
}

/// `min { deg D - 2 r(D) : r(D) >= 1, deg D <= g - 1 }`.
pub fn clifford_index(g: &Multigraph) -> Result<i64> {
    let genus = genus_of(g)?;
    if genus < 2 {
        return Err(Error::Precondition(format!("Clifford index needs genus at least 2, got {genus}")));
    }
    let oracle = RankOracle::new(g);
    let q = VertexSet::singleton(0);
    let mut best: Option<i64> = None;
    for k in 1..genus {
        // Rank is constant on classes, so one reduced representative per class suffices.
        for d in EffectiveDivisors::new(g.num_vertices(), k, LexOrder::Ascending) {
            if burn(g, q, &d) != BurnOutcome::AllBurned {
                continue;
            }
            let r = oracle.rank(&d);
            if r >= 1 {
                let c = k as i64 - 2 * r;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
    }
    best.ok_or_else(|| Error::Precondition(format!("no divisor of positive rank and degree at most {}", genus - 1)))
}

/// One index of a [`TrigonalReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrigonalRow {
    pub k: usize,
    pub predicted: usize,
    pub computed: usize,
}

impl TrigonalRow {
    pub fn matches(&self) -> bool {
        self.predicted == self.computed
    }
}

/// Computed gonalities of a trigonal graph against the curve prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigonalReport {
    pub genus: usize,
    pub rows: Vec<TrigonalRow>,
}

impl TrigonalReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &TrigonalRow> {
        self.rows.iter().filter(|row| !row.matches())
    }
}

/// Compares `gon_1 ..= gon_g` with the trigonal curve formula. Requires `gon_1 = 3`.
pub fn check_trigonal_conjecture(g: &Multigraph) -> Result<TrigonalReport> {
    let genus = genus_of(g)?;
    let seq = gonality_sequence(g, genus.max(1))?;
    if seq.gon1 != 3 {
        return Err(Error::Precondition(format!("graph has first gonality {}, not 3", seq.gon1)));
    }
    let rows = (1..=genus)
        .map(|k| TrigonalRow { k, predicted: trigonal_curve_gonality(genus, k), computed: seq.terms[k - 1] })
        .collect();
    Ok(TrigonalReport { genus, rows })
}
