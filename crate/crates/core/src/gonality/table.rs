//! Closed forms and the low-genus sequence table.

use std::fmt;

use crate::families::Family;
use crate::{Error, Result};

/// A gonality sequence prefix `gon_1, gon_2, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub genus: usize,
    pub gon1: usize,
    pub terms: Vec<usize>,
    /// Set for genus 6 rows, which assume every genus-6 graph has `gon_1 <= 4`.
    pub conditional: bool,
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// Known sequences as `(genus, gon_1, gon_2, first six terms)`.
const TABLE: &[(usize, usize, usize, [usize; 6])] = &[
    (0, 1, 2, [1, 2, 3, 4, 5, 6]),
    (1, 2, 3, [2, 3, 4, 5, 6, 7]),
    (2, 2, 4, [2, 4, 5, 6, 7, 8]),
    (3, 2, 4, [2, 4, 6, 7, 8, 9]),
    (3, 3, 4, [3, 4, 6, 7, 8, 9]),
    (4, 2, 4, [2, 4, 6, 8, 9, 10]),
    (4, 3, 5, [3, 5, 6, 8, 9, 10]),
    (5, 2, 4, [2, 4, 6, 8, 10, 11]),
    (5, 3, 5, [3, 5, 7, 8, 10, 11]),
    (5, 4, 6, [4, 6, 7, 8, 10, 11]),
    (6, 2, 4, [2, 4, 6, 8, 10, 12]),
    (6, 3, 5, [3, 5, 7, 9, 10, 12]),
    (6, 3, 6, [3, 6, 7, 9, 10, 12]),
    (6, 4, 5, [4, 5, 8, 9, 10, 12]),
    (6, 4, 6, [4, 6, 8, 9, 10, 12]),
];

pub const MAX_TABLE_GENUS: usize = 6;

/// Upper bound `⌊(g+3)/2⌋` on the first gonality.
pub fn brill_noether_bound(genus: usize) -> usize {
    (genus + 3) / 2
}

/// Brill–Noether number `g - (r+1)(g-d+r)`.
pub fn rho(genus: i64, r: i64, d: i64) -> i64 {
    genus - (r + 1) * (genus - d + r)
}

/// The tabulated sequence for `(genus, gon1)`, extended by `gon_k = genus + k`.
///
/// For genus at most 1 the value of `gon1` is ignored. Genus 6 with first
/// gonality 3 or 4 has two rows, so `gon2` must pick one.
pub fn expected_sequence(genus: usize, gon1: usize, gon2: Option<usize>, upto: usize) -> Result<SequenceSpec> {
    if upto == 0 {
        return Err(Error::InvalidParameter("sequence length must be at least 1".into()));
    }
    if genus > MAX_TABLE_GENUS {
        return Err(Error::Inadmissible(format!("no table data for genus {genus} (maximum {MAX_TABLE_GENUS})")));
    }
    let rows: Vec<_> = TABLE
        .iter()
        .filter(|row| row.0 == genus && (genus <= 1 || row.1 == gon1))
        .collect();
    if rows.is_empty() {
        let bound = brill_noether_bound(genus);
        let why = if gon1 > bound {
            format!("first gonality {gon1} exceeds the bound {bound} for genus {genus}")
        } else {
            format!("no graph of genus {genus} has first gonality {gon1}")
        };
        return Err(Error::Inadmissible(why));
    }
    let row = match (rows.len(), gon2) {
        (1, None) => rows[0],
        (1, Some(b)) if rows[0].2 == b => rows[0],
        (_, Some(b)) => *rows.iter().find(|row| row.2 == b).ok_or_else(|| {
            Error::Inadmissible(format!("genus {genus}, first gonality {gon1} does not allow second gonality {b}"))
        })?,
        (_, None) => {
            let options: Vec<_> = rows.iter().map(|row| row.2.to_string()).collect();
            return Err(Error::Inadmissible(format!(
                "genus {genus}, first gonality {gon1} needs a second gonality, one of {}",
                options.join(" or ")
            )));
        }
    };
    let terms = (1..=upto).map(|k| if k <= 6 { row.3[k - 1] } else { genus + k }).collect();
    Ok(SequenceSpec { genus, gon1: row.1, terms, conditional: genus == 6 })
}

/// Recovers the genus from a sequence prefix that reaches at least `gon_g`.
///
/// The genus is the index of the last term more than one above its
/// predecessor. Without such a jump the genus is 0 or 1 by the first term.
pub fn genus_from_sequence(terms: &[usize]) -> Result<usize> {
    let first = *terms.first().ok_or_else(|| Error::Empty("gonality sequence".into()))?;
    if let Some(i) = (1..terms.len()).rev().find(|&i| terms[i] > terms[i - 1] + 1) {
        return Ok(i + 1);
    }
    match first {
        1 => Ok(0),
        2 => Ok(1),
        other => Err(Error::InvalidParameter(format!(
            "prefix starting at {other} without a jump is too short to determine the genus"
        ))),
    }
}

/// Second gonality predicted for a trigonal curve of the given genus.
pub fn trigonal_curve_gonality(genus: usize, k: usize) -> usize {
    let g = genus as i64;
    let k = k as i64;
    let v = if k <= (g - 1) / 3 {
        3 * k
    } else if k <= g - 1 {
        g + k - 1 - (g - k - 1).div_euclid(2)
    } else {
        g + k
    };
    v as usize
}

/// Closed-form `gon_r` for family members where one is known.
///
/// Any family with a known genus also gets `gon_r = g + r` for `r >= g`.
pub fn expected_family_gonality(family: &Family, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidParameter("gonality index must be at least 1".into()));
    }
    let uncovered = || Error::Precondition(format!("no closed form for gon_{r} of {family}"));
    if let Some(g) = family_genus(family) {
        if r >= g {
            return Ok(g + r);
        }
    }
    let v = match *family {
        Family::Path(_) => r,
        Family::Cycle(_) => r + 1,
        Family::Banana(_) => 2 * r,
        Family::GenBanana(n, e) => {
            let e = e as usize;
            let m = n.min(e);
            match r {
                1 => m,
                2 if n == e => 2 * n - 1,
                2 => 2 * m,
                _ => return Err(uncovered()),
            }
        }
        Family::DescBanana(a, b) => match r {
            1 => a as usize,
            2 if b < 2 * a => b as usize + 1,
            _ => return Err(uncovered()),
        },
        Family::CompleteBipartite(m, n) => match r {
            1 => m.min(n),
            2 if m == 1 && n == 1 => 2,
            2 if m == n => 2 * m - 1,
            2 => 2 * m.min(n),
            _ => return Err(uncovered()),
        },
        _ => return Err(uncovered()),
    };
    Ok(v)
}

fn family_genus(family: &Family) -> Option<usize> {
    usize::try_from(family.build().ok()?.genus()).ok()
}
