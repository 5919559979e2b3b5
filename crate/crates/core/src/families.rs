//! Deterministic generators for the graph families used throughout the crate.
//!
//! Every generalized banana graph goes through [`chain`], so `B_{n,e}`,
//! `B*_{a,b}` and the two genus-6 chains share one constructor.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand::{RngCore, SeedableRng};

use crate::{Error, Multigraph, Result};

/// Give up on `random_connected` after this many rejected samples.
pub const MAX_RANDOM_ATTEMPTS: usize = 1_000_000;

/// Multiplicities between consecutive vertices of a chain of bananas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    mults: Vec<u32>,
}

impl ChainSpec {
    pub fn new(mults: Vec<u32>) -> Result<Self> {
        if mults.is_empty() {
            return Err(Error::InvalidParameter("a chain needs at least one link".into()));
        }
        if mults.contains(&0) {
            return Err(Error::InvalidParameter("chain multiplicities must be positive".into()));
        }
        Ok(ChainSpec { mults })
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn num_vertices(&self) -> usize {
        self.mults.len() + 1
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

pub fn path(n: usize) -> Result<Multigraph> {
    check(n >= 1, || format!("path needs n >= 1, got {n}"))?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1)).collect();
    Multigraph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Multigraph> {
    check(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n, 1)).collect();
    Multigraph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Multigraph> {
    check(n >= 1, || format!("complete graph needs n >= 1, got {n}"))?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1));
        }
    }
    Multigraph::from_edges(n, &edges)
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Multigraph> {
    check(m >= 1 && n >= 1, || format!("bipartite graph needs m, n >= 1, got ({m}, {n})"))?;
    let mut edges = Vec::new();
    for u in 0..m {
        for v in m..m + n {
            edges.push((u, v, 1));
        }
    }
    Multigraph::from_edges(m + n, &edges)
}

/// Two vertices joined by `n` parallel edges.
pub fn banana(n: u32) -> Result<Multigraph> {
    check(n >= 1, || "banana graph needs at least one edge".into())?;
    chain(&ChainSpec::new(vec![n])?)
}

pub fn chain(spec: &ChainSpec) -> Result<Multigraph> {
    let edges: Vec<_> = spec.mults.iter().enumerate().map(|(i, &m)| (i, i + 1, m)).collect();
    Multigraph::from_edges(spec.num_vertices(), &edges)
}

/// `B_{n,e}`: a chain of `n` vertices with `e` edges between neighbours.
pub fn gen_banana(n: usize, e: u32) -> Result<Multigraph> {
    check(n >= 2 && e >= 1, || format!("B_(n,e) needs n >= 2 and e >= 1, got ({n}, {e})"))?;
    chain(&ChainSpec::new(vec![e; n - 1])?)
}

/// Multiplicities of `B*_{a,b}`: `b - a + i + 1` for `i = 1..a`.
pub fn desc_banana_mults(a: u32, b: u32) -> Result<Vec<u32>> {
    check(2 <= a && a <= b, || format!("B*_(a,b) needs 2 <= a <= b, got ({a}, {b})"))?;
    Ok((1..a).map(|i| b - a + i + 1).collect())
}

/// `B*_{a,b}`: `a` vertices, multiplicities ascending from `v_1` up to `b` at `v_a`.
pub fn desc_banana(a: u32, b: u32) -> Result<Multigraph> {
    chain(&ChainSpec::new(desc_banana_mults(a, b)?)?)
}

/// Uniform draw in `[0, 1)` from the top 53 bits of a 64-bit output.
fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Samples `G(n, p)` until the result is connected.
///
/// The generator is ChaCha8 seeded through `seed_from_u64(seed)`. For each
/// attempt, pairs `(u, v)` with `u < v` are visited in ascending order and the
/// edge is kept iff the next draw `(x >> 11) * 2^-53` is below `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Multigraph> {
    check(n >= 2, || format!("random graph needs n >= 2, got {n}"))?;
    check(p > 0.0 && p <= 1.0, || format!("edge probability must lie in (0, 1], got {p}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RANDOM_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if unit_f64(&mut rng) < p {
                    edges.push((u, v, 1));
                }
            }
        }
        let g = Multigraph::from_edges(n, &edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no connected G({n}, {p}) sample within {MAX_RANDOM_ATTEMPTS} attempts"
    )))
}

/// A named family member, used by the command line and by closed-form lookups.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Banana(u32),
    GenBanana(usize, u32),
    DescBanana(u32, u32),
    Chain(ChainSpec),
    Random { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn build(&self) -> Result<Multigraph> {
        match self {
            Family::Path(n) => path(*n),
            Family::Cycle(n) => cycle(*n),
            Family::Complete(n) => complete(*n),
            Family::CompleteBipartite(m, n) => complete_bipartite(*m, *n),
            Family::Banana(n) => banana(*n),
            Family::GenBanana(n, e) => gen_banana(*n, *e),
            Family::DescBanana(a, b) => desc_banana(*a, *b),
            Family::Chain(spec) => chain(spec),
            Family::Random { n, p, seed } => random_connected(*n, *p, *seed),
        }
    }

    /// Parses a family name and a `k=v,...` parameter list.
    ///
    /// Chain multiplicities are colon separated: `mults=3:2:2`.
    pub fn from_params(name: &str, params: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for part in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, found `{part}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |key: &str| -> Result<&str> {
            kv.get(key)
                .map(String::as_str)
                .ok_or_else(|| Error::InvalidParameter(format!("family `{name}` needs parameter `{key}`")))
        };
        fn num<T: std::str::FromStr>(key: &str, s: &str) -> Result<T> {
            s.parse().map_err(|_| Error::InvalidParameter(format!("bad value `{s}` for `{key}`")))
        }
        let family = match name {
            "path" => Family::Path(num("n", get("n")?)?),
            "cycle" => Family::Cycle(num("n", get("n")?)?),
            "complete" => Family::Complete(num("n", get("n")?)?),
            "bipartite" => Family::CompleteBipartite(num("m", get("m")?)?, num("n", get("n")?)?),
            "banana" => Family::Banana(num("n", get("n")?)?),
            "genbanana" => Family::GenBanana(num("n", get("n")?)?, num("e", get("e")?)?),
            "descbanana" => Family::DescBanana(num("a", get("a")?)?, num("b", get("b")?)?),
            "chain" => {
                let mults = get("mults")?
                    .split(':')
                    .map(|s| num("mults", s.trim()))
                    .collect::<Result<Vec<u32>>>()?;
                Family::Chain(ChainSpec::new(mults)?)
            }
            "random" => Family::Random {
                n: num("n", get("n")?)?,
                p: num("p", get("p")?)?,
                seed: num("seed", get("seed")?)?,
            },
            other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        };
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "P_{n}"),
            Family::Cycle(n) => write!(f, "C_{n}"),
            Family::Complete(n) => write!(f, "K_{n}"),
            Family::CompleteBipartite(m, n) => write!(f, "K_({m},{n})"),
            Family::Banana(n) => write!(f, "B_{n}"),
            Family::GenBanana(n, e) => write!(f, "B_({n},{e})"),
            Family::DescBanana(a, b) => write!(f, "B*_({a},{b})"),
            Family::Chain(spec) => write!(f, "chain{:?}", spec.mults()),
            Family::Random { n, p, seed } => write!(f, "G({n},{p};seed={seed})"),
        }
    }
}
