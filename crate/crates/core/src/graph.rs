//! Loopless multigraphs stored as a dense multiplicity matrix.
//!
//! Vertices are the indices `0..n`. Graphs are immutable once built, so a
//! single [`Multigraph`] can be shared freely between threads.
//!
//! The text format is line oriented:
//!
//! ```text
//! # banana graph B_3
//! vertices 2
//! edge 0 1 3
//! ```

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// Largest supported vertex count; vertex sets are single-word bitmasks.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices of a graph with at most [`MAX_VERTICES`] vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// The full vertex range `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & Self::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite loopless multigraph with integer edge multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
    valence: Vec<i64>,
    neighbors: Vec<Vec<(usize, i64)>>,
}

impl Multigraph {
    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs add up.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut mult = vec![0u32; n * n];
        for &(u, v, m) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v && m > 0 {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            mult[u * n + v] += m;
            if u != v {
                mult[v * n + u] += m;
            }
        }
        Ok(Self::from_matrix_unchecked(n, mult))
    }

    /// Builds a graph from a full symmetric multiplicity matrix.
    pub fn from_matrix(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("unsupported vertex count {n}")));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            if row[u] != 0 {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            for (v, &m) in row.iter().enumerate() {
                if rows[v][u] != m {
                    return Err(Error::InvalidGraph(format!("asymmetric entry ({u}, {v})")));
                }
            }
            mult.extend_from_slice(row);
        }
        Ok(Self::from_matrix_unchecked(n, mult))
    }

    fn from_matrix_unchecked(n: usize, mult: Vec<u32>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        let mut valence = vec![0i64; n];
        for u in 0..n {
            for v in 0..n {
                let m = mult[u * n + v];
                if m > 0 {
                    neighbors[u].push((v, m as i64));
                    valence[u] += m as i64;
                }
            }
        }
        Multigraph { n, mult, valence, neighbors }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of edges counted with multiplicity.
    pub fn num_edges(&self) -> i64 {
        self.valence.iter().sum::<i64>() / 2
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    /// Neighbors of `v` with their edge multiplicities, ascending by index.
    pub fn neighbors(&self, v: usize) -> &[(usize, i64)] {
        &self.neighbors[v]
    }

    /// Edges with `u < v` in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            ((u + 1)..self.n).filter_map(move |v| {
                let m = self.multiplicity(u, v);
                (m > 0).then_some((u, v, m))
            })
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn genus(&self) -> i64 {
        self.num_edges() - self.n as i64 + 1
    }

    pub fn valence(&self, v: usize) -> i64 {
        self.valence[v]
    }

    /// Edges from `v` to vertices outside `a`. Requires `v` in `a`.
    pub fn outdeg(&self, a: VertexSet, v: usize) -> Result<i64> {
        self.check_vertex(v)?;
        if !a.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} is not in the set {a:?}")));
        }
        Ok(self.outdeg_unchecked(a, v))
    }

    pub(crate) fn outdeg_unchecked(&self, a: VertexSet, v: usize) -> i64 {
        self.neighbors[v]
            .iter()
            .filter(|&&(u, _)| !a.contains(u))
            .map(|&(_, m)| m)
            .sum()
    }

    /// Edges between `v` and members of `a`.
    pub(crate) fn edges_into(&self, a: VertexSet, v: usize) -> i64 {
        self.neighbors[v]
            .iter()
            .filter(|&&(u, _)| a.contains(u))
            .map(|&(_, m)| m)
            .sum()
    }

    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|u| {
                (0..self.n)
                    .map(|v| if u == v { self.valence[u] } else { -(self.multiplicity(u, v) as i64) })
                    .collect()
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(Option::is_some)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn bfs(&self, q: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[q] = Some(0);
        let mut queue = VecDeque::from([q]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(v, _) in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Hop distances from `q`; parallel edges count as one hop.
    pub fn distances(&self, q: usize) -> Result<Vec<usize>> {
        self.check_vertex(q)?;
        self.bfs(q).into_iter().map(|d| d.ok_or(Error::Disconnected)).collect()
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for q in 0..self.n {
            let d = self.distances(q)?;
            best = best.max(d.into_iter().max().unwrap_or(0));
        }
        Ok(best)
    }

    /// Minimum total multiplicity of an edge cut (Stoer-Wagner).
    pub fn edge_connectivity(&self) -> Result<i64> {
        if self.n < 2 {
            return Err(Error::Precondition("edge connectivity needs at least two vertices".into()));
        }
        let n = self.n;
        let mut w: Vec<Vec<i64>> = (0..n)
            .map(|u| (0..n).map(|v| self.multiplicity(u, v) as i64).collect())
            .collect();
        // `active` holds the super-vertices still present after merges.
        let mut active: Vec<usize> = (0..n).collect();
        let mut best = i64::MAX;
        while active.len() > 1 {
            let mut added = vec![false; active.len()];
            let mut key = vec![0i64; active.len()];
            let mut prev = 0;
            let mut last = 0;
            for step in 0..active.len() {
                let sel = (0..active.len())
                    .filter(|&i| !added[i])
                    .max_by_key(|&i| (key[i], std::cmp::Reverse(i)))
                    .unwrap();
                added[sel] = true;
                if step == active.len() - 1 {
                    best = best.min(key[sel]);
                    prev = last;
                    last = sel;
                } else {
                    last = sel;
                    for i in 0..active.len() {
                        if !added[i] {
                            key[i] += w[active[sel]][active[i]];
                        }
                    }
                }
            }
            // Merge the last vertex of the phase into the one before it.
            let (s, t) = (active[prev], active[last]);
            for &x in &active {
                w[s][x] += w[t][x];
                w[x][s] = w[s][x];
            }
            w[s][s] = 0;
            active.remove(last);
        }
        Ok(best)
    }

    /// Number of spanning trees, computed exactly as a Laplacian minor.
    pub fn spanning_tree_count(&self) -> BigUint {
        self.spanning_tree_count_deleting(0)
    }

    /// Same as [`Self::spanning_tree_count`] but deleting row and column `q`.
    pub fn spanning_tree_count_deleting(&self, q: usize) -> BigUint {
        let lap = self.laplacian();
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != q).collect();
        let minor: Vec<Vec<BigInt>> = keep
            .iter()
            .map(|&u| keep.iter().map(|&v| BigInt::from(lap[u][v])).collect())
            .collect();
        bareiss_determinant(minor).abs().to_biguint().expect("absolute value is non-negative")
    }

    /// Serializes to the graph text format. Output is byte-reproducible.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v, m) in self.edges() {
            out.push_str(&format!("edge {u} {v} {m}\n"));
        }
        out
    }

    /// Parses the graph text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| err(format!("expected a non-negative integer, found `{s}`")))
            };
            match (fields[0], n) {
                ("vertices", None) => {
                    if fields.len() != 2 {
                        return Err(err("expected `vertices <n>`".into()));
                    }
                    let count = num(fields[1])?;
                    if count == 0 || count > MAX_VERTICES {
                        return Err(err(format!("vertex count must lie in 1..={MAX_VERTICES}")));
                    }
                    n = Some(count);
                }
                ("vertices", Some(_)) => return Err(err("duplicate `vertices` directive".into())),
                ("edge", None) => return Err(err("`vertices` must come first".into())),
                ("edge", Some(count)) => {
                    if fields.len() != 4 {
                        return Err(err("expected `edge <u> <v> <mult>`".into()));
                    }
                    let (u, v, m) = (num(fields[1])?, num(fields[2])?, num(fields[3])?);
                    if !(u < v && v < count) {
                        return Err(err(format!("edge endpoints must satisfy 0 <= u < v < {count}")));
                    }
                    if m == 0 || m > u32::MAX as usize {
                        return Err(err("edge multiplicity must be positive".into()));
                    }
                    if !seen.insert((u, v)) {
                        return Err(err(format!("duplicate edge ({u}, {v})")));
                    }
                    edges.push((u, v, m as u32));
                }
                (other, _) => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `vertices` directive".into() })?;
        Self::from_edges(n, &edges)
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Multigraph::parse(s)
    }
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn genus_examples() {
        assert_eq!(path(5).unwrap().genus(), 0);
        assert_eq!(cycle(5).unwrap().genus(), 1);
        assert_eq!(banana(6).unwrap().genus(), 5);
    }

    #[test]
    fn valence_examples() {
        let b2 = banana(2).unwrap();
        assert_eq!((b2.valence(0), b2.valence(1)), (2, 2));
        let k4 = complete(4).unwrap();
        assert!((0..4).all(|v| k4.valence(v) == 3));
        // B*_{4,5}: multiplicities 3, 4, 5 along the chain.
        assert_eq!(desc_banana(4, 5).unwrap().valence(3), 5);
    }

    #[test]
    fn outdeg_examples() {
        let k4 = complete(4).unwrap();
        for v in 0..4 {
            assert_eq!(k4.outdeg(VertexSet::singleton(v), v).unwrap(), k4.valence(v));
            assert_eq!(k4.outdeg(k4.vertices(), v).unwrap(), 0);
        }
        let c4 = cycle(4).unwrap();
        let a: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(c4.outdeg(a, 0).unwrap(), 1);
        assert_eq!(c4.outdeg(a, 1).unwrap(), 1);
        assert!(matches!(c4.outdeg(a, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(banana(2).unwrap().laplacian(), vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(path(2).unwrap().laplacian(), vec![vec![1, -1], vec![-1, 1]]);
        let k3 = complete(3).unwrap().laplacian();
        for (u, row) in k3.iter().enumerate() {
            for (v, &x) in row.iter().enumerate() {
                assert_eq!(x, if u == v { 2 } else { -1 });
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(cycle(4).unwrap().distances(0).unwrap(), vec![0, 1, 2, 1]);
        assert_eq!(desc_banana(4, 5).unwrap().distances(0).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(complete(4).unwrap().distances(2).unwrap(), vec![1, 1, 0, 1]);
        let split = Multigraph::from_edges(3, &[(0, 1, 1)]).unwrap();
        assert!(matches!(split.distances(0), Err(Error::Disconnected)));
    }

    #[test]
    fn diameter_examples() {
        for n in 2..7 {
            assert_eq!(complete(n).unwrap().diameter().unwrap(), 1);
        }
        assert_eq!(path(5).unwrap().diameter().unwrap(), 4);
        assert_eq!(cycle(6).unwrap().diameter().unwrap(), 3);
    }

    #[test]
    fn edge_connectivity_examples() {
        for n in 2..=6 {
            for e in 1..=5 {
                assert_eq!(gen_banana(n, e).unwrap().edge_connectivity().unwrap(), e as i64);
            }
        }
        for n in 3..8 {
            assert_eq!(cycle(n).unwrap().edge_connectivity().unwrap(), 2);
            assert_eq!(path(n).unwrap().edge_connectivity().unwrap(), 1);
        }
        assert_eq!(complete(5).unwrap().edge_connectivity().unwrap(), 4);
        assert!(path(1).unwrap().edge_connectivity().is_err());
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(path(6).unwrap().spanning_tree_count(), BigUint::from(1u32));
        assert_eq!(cycle(5).unwrap().spanning_tree_count(), BigUint::from(5u32));
        // Cayley: 4^(4-2).
        assert_eq!(complete(4).unwrap().spanning_tree_count(), BigUint::from(16u32));
        let k6 = complete(6).unwrap();
        for q in 0..6 {
            assert_eq!(k6.spanning_tree_count_deleting(q), BigUint::from(1296u32));
        }
    }

    #[test]
    fn text_format_round_trip() {
        let g = desc_banana(4, 6).unwrap();
        let text = g.to_text();
        assert_eq!(text, "vertices 4\nedge 0 1 4\nedge 1 2 5\nedge 2 3 6\n");
        assert_eq!(Multigraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn text_format_rejects_bad_input() {
        let bad = [
            "edge 0 1 1\n",
            "vertices 2\nedge 1 0 1\n",
            "vertices 2\nedge 0 1 0\n",
            "vertices 2\nedge 0 1 1\nedge 0 1 2\n",
            "vertices 2\nedge 0 2 1\n",
            "vertices 2\nvertices 3\n",
            "vertices 2\nloop 0\n",
            "",
        ];
        for text in bad {
            assert!(Multigraph::parse(text).is_err(), "{text:?} should be rejected");
        }
        let ok = Multigraph::parse("# comment\nvertices 3  # three\n\nedge 0 2 2\n").unwrap();
        assert_eq!(ok.multiplicity(2, 0), 2);
    }
}
