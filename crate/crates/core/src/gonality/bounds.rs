//! Closure of partial gonality information under the general inequalities.

use crate::{Error, Result};

/// A known bound on `gon_r`. Either side may be absent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundFact {
    pub r: usize,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
}

impl BoundFact {
    pub fn exact(r: usize, value: usize) -> Self {
        BoundFact { r, lower: Some(value), upper: Some(value) }
    }

    pub fn at_least(r: usize, value: usize) -> Self {
        BoundFact { r, lower: Some(value), upper: None }
    }

    pub fn at_most(r: usize, value: usize) -> Self {
        BoundFact { r, lower: None, upper: Some(value) }
    }
}

/// Tightened bounds for `gon_1 ..= gon_horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub genus: usize,
    lower: Vec<i64>,
    upper: Vec<i64>,
    /// Sweeps until nothing changed, the last one included.
    pub iterations: usize,
}

impl BoundTable {
    pub fn horizon(&self) -> usize {
        self.lower.len() - 1
    }

    /// `(lower, upper)` for `gon_r`, `1 <= r <= horizon`.
    pub fn bounds(&self, r: usize) -> (usize, usize) {
        (self.lower[r] as usize, self.upper[r] as usize)
    }

    pub fn exact(&self, r: usize) -> Option<usize> {
        let (lo, hi) = self.bounds(r);
        (lo == hi).then_some(lo)
    }

    pub fn facts(&self) -> Vec<BoundFact> {
        (1..=self.horizon())
            .map(|r| {
                let (lo, hi) = self.bounds(r);
                BoundFact { r, lower: Some(lo), upper: Some(hi) }
            })
            .collect()
    }
}

struct Bounds {
    lo: Vec<i64>,
    hi: Vec<i64>,
    changed: bool,
}

impl Bounds {
    fn raise(&mut self, i: i64, v: i64) {
        if i >= 1 && (i as usize) < self.lo.len() && self.lo[i as usize] < v {
            self.lo[i as usize] = v;
            self.changed = true;
        }
    }

    fn cap(&mut self, i: i64, v: i64) {
        if i >= 1 && (i as usize) < self.hi.len() && self.hi[i as usize] > v {
            self.hi[i as usize] = v;
            self.changed = true;
        }
    }

    fn fix(&mut self, i: i64, v: i64) {
        self.raise(i, v);
        self.cap(i, v);
    }

    fn check(&self) -> Result<()> {
        for r in 1..self.lo.len() {
            if self.lo[r] > self.hi[r] {
                return Err(Error::Contradiction(format!(
                    "gon_{r} would need to lie in [{}, {}]",
                    self.lo[r], self.hi[r]
                )));
            }
        }
        Ok(())
    }
}

/// Closes `facts` under the general rules for a graph of the given genus.
///
/// Rules: `r <= gon_r <= g + r` (strict lower bound `r + 1` once `g >= 1`),
/// the closed forms for `gon_{g-1}` and `gon_k` with `k >= g`, strict
/// monotonicity, subadditivity, both Riemann–Roch transfers, the
/// hyperelliptic formula, `gon_{g-2} = 2g - 3` for `g >= 4` with `gon_1 >= 3`,
/// and `gon_1 <= ⌊(g+3)/2⌋`, which is known for `g <= 5` only.
/// The horizon is `max(g + 1, largest fact index)`.
pub fn propagate_bounds(genus: usize, facts: &[BoundFact]) -> Result<BoundTable> {
    for f in facts {
        if f.r == 0 {
            return Err(Error::InvalidParameter("bound facts are indexed from 1".into()));
        }
        if let (Some(lo), Some(hi)) = (f.lower, f.upper) {
            if lo > hi {
                return Err(Error::Contradiction(format!("fact for gon_{} has lower {lo} above upper {hi}", f.r)));
            }
        }
    }
    let horizon = facts.iter().map(|f| f.r).max().unwrap_or(0).max(genus + 1);
    let h = horizon as i64;
    let g = genus as i64;
    let mut b = Bounds { lo: vec![0; horizon + 1], hi: vec![i64::MAX; horizon + 1], changed: false };
    for r in 1..=h {
        b.raise(r, if g >= 1 { r + 1 } else { r });
        b.cap(r, g + r);
    }
    for f in facts {
        if let Some(lo) = f.lower {
            b.raise(f.r as i64, lo as i64);
        }
        if let Some(hi) = f.upper {
            b.cap(f.r as i64, hi as i64);
        }
    }
    b.check()?;

    let mut iterations = 0;
    loop {
        iterations += 1;
        b.changed = false;

        for k in g.max(1)..=h {
            b.fix(k, g + k);
        }
        if g >= 2 {
            b.fix(g - 1, 2 * g - 2);
        }
        if g <= 5 {
            b.cap(1, (g + 3) / 2);
        }
        if g >= 4 && b.lo[1] >= 3 {
            b.fix(g - 2, 2 * g - 3);
        }
        if g >= 1 && b.hi[1] <= 2 {
            for k in 1..g {
                b.fix(k, 2 * k);
            }
        }

        for r in 1..h {
            let (lo, hi) = (b.lo[r as usize], b.hi[r as usize + 1]);
            b.raise(r + 1, lo + 1);
            b.cap(r, hi - 1);
        }

        for a in 1..h {
            for c in 1..=h - a {
                let (ha, hc, hs) = (b.hi[a as usize], b.hi[c as usize], b.lo[(a + c) as usize]);
                b.cap(a + c, ha + hc);
                b.raise(a, hs - hc);
            }
        }

        for k in 1..=h {
            // A divisor of degree gamma and rank k leaves K - D of degree
            // 2g - 2 - gamma and rank at least k + g - 1 - gamma.
            let gamma = b.hi[k as usize];
            b.cap(k + g - 1 - gamma, 2 * g - 2 - gamma);
            // Every divisor of degree below lo has rank below k, so divisors of
            // degree delta - 1 with delta >= 2g - lo have rank below k - g + delta.
            let lo = b.lo[k as usize];
            let delta = (2 * g - lo).max(g - k + 1);
            b.raise(k - g + delta, delta);
        }

        b.check()?;
        if !b.changed {
            break;
        }
    }
    Ok(BoundTable { genus, lower: b.lo, upper: b.hi, iterations })
}
