//! Divisors, firing scripts and linear equivalence.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};
use std::str::FromStr;

use crate::burning;
use crate::{Error, Multigraph, Result, VertexSet};

/// An integer number of chips on every vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    chips: Vec<i64>,
}

impl Divisor {
    pub fn new(chips: Vec<i64>) -> Self {
        Divisor { chips }
    }

    pub fn zero(n: usize) -> Self {
        Divisor { chips: vec![0; n] }
    }

    /// `k` chips on `v`, nothing elsewhere.
    pub fn point(n: usize, v: usize, k: i64) -> Self {
        let mut d = Self::zero(n);
        d.chips[v] = k;
        d
    }

    pub fn chips(&self) -> &[i64] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<i64> {
        self.chips
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.chips.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.chips.iter().all(|&c| c >= 0)
    }

    /// Vertices holding a positive number of chips.
    pub fn support(&self) -> VertexSet {
        self.chips.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(v, _)| v).collect()
    }

    /// Vertices in debt.
    pub fn debt_support(&self) -> VertexSet {
        self.chips.iter().enumerate().filter(|&(_, &c)| c < 0).map(|(v, _)| v).collect()
    }

    /// Pointwise positive part `max(D, 0)`.
    pub fn positive_part(&self) -> Divisor {
        Divisor::new(self.chips.iter().map(|&c| c.max(0)).collect())
    }

    /// Pointwise negative part `max(-D, 0)`, so `D = D+ - D-`.
    pub fn negative_part(&self) -> Divisor {
        Divisor::new(self.chips.iter().map(|&c| (-c).max(0)).collect())
    }

    /// `D >= E` pointwise.
    pub fn dominates(&self, other: &Divisor) -> bool {
        self.chips.iter().zip(&other.chips).all(|(a, b)| a >= b)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.chips.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, actual: self.chips.len() })
        }
    }

    /// Fires every vertex of `w` once, in place. No checks.
    pub(crate) fn fire_set_in_place(&mut self, g: &Multigraph, w: VertexSet) {
        let n = g.num_vertices();
        for v in 0..n {
            if w.contains(v) {
                self.chips[v] -= g.outdeg_unchecked(w, v);
            } else {
                self.chips[v] += g.edges_into(w, v);
            }
        }
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, v: usize) -> &i64 {
        &self.chips[v]
    }
}

impl IndexMut<usize> for Divisor {
    fn index_mut(&mut self, v: usize) -> &mut i64 {
        &mut self.chips[v]
    }
}

impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor::new(self.chips.iter().zip(&rhs.chips).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor::new(self.chips.iter().zip(&rhs.chips).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor::new(self.chips.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chips.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Divisor {
    type Err = Error;

    /// Whitespace separated integers in vertex order.
    fn from_str(s: &str) -> Result<Self> {
        let chips = s
            .split_whitespace()
            .map(|t| {
                // Accept the unicode minus sign too.
                t.replace('\u{2212}', "-")
                    .parse::<i64>()
                    .map_err(|_| Error::Parse { line: 1, msg: format!("bad chip count `{t}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        if chips.is_empty() {
            return Err(Error::Parse { line: 1, msg: "empty divisor".into() });
        }
        Ok(Divisor::new(chips))
    }
}

/// How many times each vertex fired. Negative entries mean borrowing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiringScript {
    counts: Vec<i64>,
}

impl FiringScript {
    pub fn new(counts: Vec<i64>) -> Self {
        FiringScript { counts }
    }

    pub fn zero(n: usize) -> Self {
        FiringScript { counts: vec![0; n] }
    }

    pub fn indicator(n: usize, w: VertexSet) -> Self {
        FiringScript::new((0..n).map(|v| w.contains(v) as i64).collect())
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn add_set(&mut self, w: VertexSet) {
        for v in w.iter() {
            self.counts[v] += 1;
        }
    }

    pub(crate) fn add_borrow(&mut self, v: usize) {
        self.counts[v] -= 1;
    }

    /// Shifted by a constant so that the smallest entry is zero.
    pub fn normalized(&self) -> FiringScript {
        let min = self.counts.iter().copied().min().unwrap_or(0);
        FiringScript::new(self.counts.iter().map(|c| c - min).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn max(&self) -> i64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.counts.iter().sum()
    }
}

/// Canonical divisor: `val(v) - 2` chips on every vertex.
pub fn canonical(g: &Multigraph) -> Divisor {
    Divisor::new((0..g.num_vertices()).map(|v| g.valence(v) - 2).collect())
}

/// `D - L f`.
pub fn apply_script(g: &Multigraph, d: &Divisor, f: &FiringScript) -> Result<Divisor> {
    let n = g.num_vertices();
    d.check_len(n)?;
    if f.counts.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: f.counts.len() });
    }
    let mut out = d.clone();
    for v in 0..n {
        let mut lf = g.valence(v) * f.counts[v];
        for &(u, m) in g.neighbors(v) {
            lf -= m * f.counts[u];
        }
        out.chips[v] -= lf;
    }
    Ok(out)
}

/// Every vertex of `w` sends one chip along each edge leaving `w`.
pub fn fire_subset(g: &Multigraph, d: &Divisor, w: VertexSet) -> Result<Divisor> {
    d.check_len(g.num_vertices())?;
    if w.is_empty() {
        return Err(Error::Precondition("cannot fire an empty set".into()));
    }
    if !w.is_subset(g.vertices()) {
        return Err(Error::Precondition(format!("{w:?} is not a vertex subset")));
    }
    let mut out = d.clone();
    out.fire_set_in_place(g, w);
    Ok(out)
}

/// Whether `d` is the divisor of some firing script.
pub fn is_principal(g: &Multigraph, d: &Divisor) -> Result<bool> {
    Ok(principal_witness(g, d)?.is_some())
}

/// A script `f` with `d - L f = 0`, when `d` is principal.
pub fn principal_witness(g: &Multigraph, d: &Divisor) -> Result<Option<FiringScript>> {
    g.require_connected()?;
    d.check_len(g.num_vertices())?;
    if d.degree() != 0 {
        return Ok(None);
    }
    let (red, script) = burning::reduce(g, 0, d)?;
    Ok(red.chips.iter().all(|&c| c == 0).then(|| script.normalized()))
}

/// Linear equivalence test.
pub fn equivalent(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    Ok(equivalence_witness(g, d1, d2)?.is_some())
}

/// When `d1 ~ d2`, a script `f` with `apply_script(d1, f) == d2`.
pub fn equivalence_witness(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<Option<FiringScript>> {
    d1.check_len(g.num_vertices())?;
    d2.check_len(g.num_vertices())?;
    principal_witness(g, &(d1 - d2))
}

/// Number of effective divisors of degree `k` on `n` vertices, `C(n+k-1, k)`.
pub fn count_effective(n: usize, k: usize) -> u128 {
    if n == 0 {
        return (k == 0) as u128;
    }
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - 1 + i) / i;
    }
    acc
}

/// Enumeration direction for [`EffectiveDivisors`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexOrder {
    /// `(k, 0, .., 0)` first.
    Descending,
    /// `(0, .., 0, k)` first.
    Ascending,
}

/// Streams every effective divisor of a fixed degree exactly once.
#[derive(Clone, Debug)]
pub struct EffectiveDivisors {
    current: Option<Vec<i64>>,
    order: LexOrder,
}

impl EffectiveDivisors {
    pub fn new(n: usize, k: usize, order: LexOrder) -> Self {
        let current = if n == 0 {
            (k == 0).then(Vec::new)
        } else {
            let mut c = vec![0i64; n];
            match order {
                LexOrder::Descending => c[0] = k as i64,
                LexOrder::Ascending => c[n - 1] = k as i64,
            }
            Some(c)
        };
        EffectiveDivisors { current, order }
    }

    fn advance(c: &mut [i64], order: LexOrder) -> bool {
        let n = c.len();
        if n < 2 {
            return false;
        }
        match order {
            LexOrder::Descending => {
                let Some(i) = (0..n - 1).rev().find(|&i| c[i] > 0) else {
                    return false;
                };
                let tail: i64 = c[i + 1..].iter().sum();
                c[i] -= 1;
                for x in &mut c[i + 1..] {
                    *x = 0;
                }
                c[i + 1] = tail + 1;
                true
            }
            LexOrder::Ascending => {
                // Rightmost position with chips somewhere to its right.
                let mut tail = 0;
                let mut found = None;
                for j in (0..n - 1).rev() {
                    tail += c[j + 1];
                    if tail > 0 {
                        found = Some(j);
                        break;
                    }
                }
                let Some(i) = found else {
                    return false;
                };
                let rest = tail - 1;
                c[i] += 1;
                for x in &mut c[i + 1..] {
                    *x = 0;
                }
                c[n - 1] = rest;
                true
            }
        }
    }
}

impl Iterator for EffectiveDivisors {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        self.current = Self::advance(&mut next, self.order).then_some(next);
        Some(Divisor::new(out))
    }
}

/// Effective divisors of degree `k` in descending lexicographic order.
pub fn enumerate_effective(n: usize, k: usize) -> EffectiveDivisors {
    EffectiveDivisors::new(n, k, LexOrder::Descending)
}

/// The level sets `A_0 ⊂ A_1 ⊂ … ⊂ A_k = V` of a firing script,
/// `A_i = { v : f(v) >= max f - i }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSets {
    pub sets: Vec<VertexSet>,
}

pub fn level_set_decomposition(f: &FiringScript) -> LevelSets {
    let max = f.max();
    let min = f.counts.iter().copied().min().unwrap_or(0);
    let sets = (0..=(max - min))
        .map(|i| f.counts.iter().enumerate().filter(|&(_, &c)| c >= max - i).map(|(v, _)| v).collect())
        .collect();
    LevelSets { sets }
}

impl LevelSets {
    /// `D_0 = D`, `D_{i+1} = D_i - L 1_{A_i}` for `i < k`.
    pub fn divisor_sequence(&self, g: &Multigraph, d: &Divisor) -> Result<Vec<Divisor>> {
        d.check_len(g.num_vertices())?;
        let mut seq = vec![d.clone()];
        for &a in &self.sets[..self.sets.len() - 1] {
            let mut next = seq.last().unwrap().clone();
            next.fire_set_in_place(g, a);
            seq.push(next);
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn d(chips: &[i64]) -> Divisor {
        Divisor::new(chips.to_vec())
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Divisor::zero(4).degree(), 0);
        for g in [complete(4).unwrap(), banana(5).unwrap(), cycle(6).unwrap()] {
            assert_eq!(canonical(&g).degree(), 2 * g.genus() - 2);
        }
        assert_eq!(d(&[-1, 2, 0]).degree(), 1);
    }

    #[test]
    fn effective_and_support() {
        let z = Divisor::zero(3);
        assert!(z.is_effective());
        assert!(z.support().is_empty());
        let x = d(&[-1, 2, 0]);
        assert!(!x.is_effective());
        assert_eq!(x.support(), VertexSet::singleton(1));
        let k = canonical(&complete(4).unwrap());
        assert_eq!(k, d(&[1, 1, 1, 1]));
        assert!(k.is_effective());
        assert_eq!(k.support(), VertexSet::full(4));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical(&cycle(5).unwrap()), Divisor::zero(5));
        assert_eq!(canonical(&banana(6).unwrap()), d(&[4, 4]));
    }

    #[test]
    fn apply_script_examples() {
        let c3 = complete(3).unwrap();
        let x = d(&[3, -1, 4]);
        assert_eq!(apply_script(&c3, &x, &FiringScript::new(vec![5, 5, 5])).unwrap(), x);
        assert_eq!(apply_script(&c3, &x, &FiringScript::zero(3)).unwrap(), x);
        let f = FiringScript::indicator(3, VertexSet::singleton(1));
        assert_eq!(apply_script(&c3, &d(&[0, 2, 0]), &f).unwrap(), d(&[1, 0, 1]));
        assert!(apply_script(&c3, &d(&[0, 2]), &f).is_err());
    }

    #[test]
    fn fire_subset_examples() {
        let c4 = cycle(4).unwrap();
        let x = d(&[1, 1, 1, 1]);
        assert_eq!(fire_subset(&c4, &x, VertexSet::full(4)).unwrap(), x);
        assert_eq!(fire_subset(&banana(2).unwrap(), &d(&[2, 0]), VertexSet::singleton(0)).unwrap(), d(&[0, 2]));
        let w: VertexSet = [0, 1].into_iter().collect();
        assert_eq!(fire_subset(&c4, &x, w).unwrap(), d(&[0, 0, 2, 2]));
        assert!(fire_subset(&c4, &x, VertexSet::empty()).is_err());
    }

    #[test]
    fn fire_subset_matches_indicator_script() {
        let g = desc_banana(4, 6).unwrap();
        let x = d(&[3, -2, 0, 7]);
        for bits in 1..16u64 {
            let w = VertexSet::from_bits(bits);
            assert_eq!(
                fire_subset(&g, &x, w).unwrap(),
                apply_script(&g, &x, &FiringScript::indicator(4, w)).unwrap()
            );
        }
    }

    #[test]
    fn equivalence_examples() {
        let c3 = complete(3).unwrap();
        let x = d(&[2, -1, 0]);
        let w = equivalence_witness(&c3, &x, &x).unwrap().unwrap();
        assert_eq!(w, FiringScript::zero(3));
        let (a, b) = (d(&[1, 0, 1]), d(&[0, 2, 0]));
        let f = equivalence_witness(&c3, &a, &b).unwrap().unwrap();
        assert_eq!(apply_script(&c3, &a, &f).unwrap(), b);
        assert!(!equivalent(&c3, &a, &d(&[0, 2, 1])).unwrap());
        assert!(!equivalent(&c3, &d(&[1, 0, 0]), &d(&[0, 1, 0])).unwrap());
        let split = crate::Multigraph::from_edges(3, &[(0, 1, 1)]).unwrap();
        assert!(matches!(is_principal(&split, &Divisor::zero(3)), Err(Error::Disconnected)));
    }

    #[test]
    fn enumeration_examples() {
        let two: Vec<_> = enumerate_effective(2, 1).collect();
        assert_eq!(two, vec![d(&[1, 0]), d(&[0, 1])]);
        assert_eq!(enumerate_effective(6, 2).count(), 21);
        assert_eq!(enumerate_effective(1, 5).collect::<Vec<_>>(), vec![d(&[5])]);
        assert_eq!(enumerate_effective(3, 0).collect::<Vec<_>>(), vec![Divisor::zero(3)]);
    }

    #[test]
    fn enumeration_orders_are_lexicographic_and_complete() {
        for n in 1..6 {
            for k in 0..6 {
                let desc: Vec<_> = EffectiveDivisors::new(n, k, LexOrder::Descending).collect();
                let asc: Vec<_> = EffectiveDivisors::new(n, k, LexOrder::Ascending).collect();
                assert_eq!(desc.len() as u128, count_effective(n, k));
                assert!(desc.windows(2).all(|w| w[0] > w[1]));
                assert!(asc.windows(2).all(|w| w[0] < w[1]));
                let mut rev = asc.clone();
                rev.reverse();
                assert_eq!(rev, desc);
                assert!(desc.iter().all(|x| x.is_effective() && x.degree() == k as i64));
            }
        }
    }

    #[test]
    fn level_sets_examples() {
        let c3 = complete(3).unwrap();
        let x = d(&[4, -1, 0]);
        let constant = level_set_decomposition(&FiringScript::new(vec![2, 2, 2]));
        assert_eq!(constant.sets, vec![VertexSet::full(3)]);
        assert_eq!(constant.divisor_sequence(&c3, &x).unwrap(), vec![x.clone()]);

        let f = FiringScript::new(vec![2, 0, 0]);
        let ls = level_set_decomposition(&f);
        let a0 = VertexSet::singleton(0);
        assert_eq!(ls.sets, vec![a0, a0, VertexSet::full(3)]);
        let seq = ls.divisor_sequence(&c3, &x).unwrap();
        assert_eq!(seq.len(), 3);
        assert_eq!(seq.last().unwrap(), &apply_script(&c3, &x, &f).unwrap());
    }

    #[test]
    fn parse_and_display() {
        let x: Divisor = "-1 2  0".parse().unwrap();
        assert_eq!(x, d(&[-1, 2, 0]));
        assert_eq!(x.to_string(), "-1 2 0");
        assert_eq!("\u{2212}1 2 0".parse::<Divisor>().unwrap(), x);
        assert!("1 x".parse::<Divisor>().is_err());
        assert!("".parse::<Divisor>().is_err());
    }
}
