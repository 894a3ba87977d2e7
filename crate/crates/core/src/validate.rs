//! Structural validation: C1 (equal symbols rook-disjoint with star
//! crosses), the gap-free alphabet, and the reported C2/regularity
//! properties.

use crate::grid::{Entry, Pda};
use crate::{Int, Rational};
use std::fmt;

/// A concrete, re-checkable defect found in a grid, with coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Two cells in one row hold the same symbol.
    SameRowRepeat {
        symbol: u32,
        row: usize,
        col_a: usize,
        col_b: usize,
    },
    /// Two cells in one column hold the same symbol.
    SameColumnRepeat {
        symbol: u32,
        col: usize,
        row_a: usize,
        row_b: usize,
    },
    /// Two equal symbols whose 2x2 cross cell is not a star.
    CrossEntryNotStar {
        symbol: u32,
        first: (usize, usize),
        second: (usize, usize),
        cross: (usize, usize),
        found: Entry,
    },
    /// Symbol `missing` does not occur although a larger symbol does,
    /// so the alphabet is not exactly `0..S`.
    AlphabetGap { missing: u32, alphabet_size: u64 },
}

impl Violation {
    /// True for defects of condition C1 (as opposed to alphabet gaps).
    pub fn is_c1(&self) -> bool {
        !matches!(self, Violation::AlphabetGap { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SameRowRepeat {
                symbol,
                row,
                col_a,
                col_b,
            } => write!(
                f,
                "symbol {symbol} repeats in row {row} at columns {col_a} and {col_b}"
            ),
            Violation::SameColumnRepeat {
                symbol,
                col,
                row_a,
                row_b,
            } => write!(
                f,
                "symbol {symbol} repeats in column {col} at rows {row_a} and {row_b}"
            ),
            Violation::CrossEntryNotStar {
                symbol,
                first,
                second,
                cross,
                found,
            } => write!(
                f,
                "symbol {symbol} at ({},{}) and ({},{}) requires a star at ({},{}), found {found}",
                first.0, first.1, second.0, second.1, cross.0, cross.1
            ),
            Violation::AlphabetGap {
                missing,
                alphabet_size,
            } => write!(
                f,
                "symbol {missing} is absent although the alphabet extends to {}",
                alphabet_size - 1
            ),
        }
    }
}

/// Per-symbol and per-row counts of symbol cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OccupancyStats {
    /// `symbol_counts[s]` = occurrences of symbol `s`. Length `S`,
    /// truncated at `n + 1` when the largest symbol exceeds the
    /// pigeonhole bound (such grids are invalid anyway).
    pub symbol_counts: Vec<usize>,
    /// `row_counts[i]` = symbol cells in row `i`, length `F`.
    pub row_counts: Vec<usize>,
}

impl OccupancyStats {
    /// Total symbol cells; equals both column sums.
    pub fn total(&self) -> usize {
        self.row_counts.iter().sum()
    }

    /// `Some(g)` when every symbol occurs exactly `g` times (and at
    /// least one symbol exists).
    pub fn regularity(&self) -> Option<usize> {
        let first = *self.symbol_counts.first()?;
        self.symbol_counts
            .iter()
            .all(|&c| c == first)
            .then_some(first)
    }

    /// `Some(h)` when every row holds exactly `h` symbol cells.
    pub fn uniform_row_count(&self) -> Option<usize> {
        let first = *self.row_counts.first()?;
        self.row_counts.iter().all(|&c| c == first).then_some(first)
    }
}

/// Parameters of a structurally valid array.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PdaParams {
    /// Columns (users).
    pub k: usize,
    /// Rows (packets per file).
    pub f: usize,
    /// Stars per column; present only when uniform (condition C2).
    pub z: Option<usize>,
    /// Alphabet size.
    pub s: usize,
    /// Total symbol cells; `(F - Z) * K` whenever `z` is present.
    pub n: usize,
    /// Present when every symbol occurs exactly `g` times.
    pub g: Option<usize>,
}

impl PdaParams {
    /// Delivery rate `S / F`, exact.
    pub fn rate(&self) -> Rational {
        Rational::new(Int::from(self.s), Int::from(self.f))
    }

    /// Memory ratio `Z / F`, exact; `None` without C2.
    pub fn memory_ratio(&self) -> Option<Rational> {
        self.z
            .map(|z| Rational::new(Int::from(z), Int::from(self.f)))
    }
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.z {
            Some(z) => write!(f, "(K={},F={},Z={},S={})", self.k, self.f, z, self.s)?,
            None => write!(f, "(K={},F={},S={})", self.k, self.f, self.s)?,
        }
        if let Some(g) = self.g {
            write!(f, " g={g}")?;
        }
        Ok(())
    }
}

/// Outcome of [`validate`]: either clean with parameters, or the list
/// of violations. Occupancy and per-column star counts are always
/// reported.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub violations: Vec<Violation>,
    pub occupancy: OccupancyStats,
    /// Stars per column, length `K`.
    pub column_stars: Vec<usize>,
    /// Present iff `violations` is empty.
    pub params: Option<PdaParams>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when condition C1 holds, ignoring alphabet gaps.
    pub fn satisfies_c1(&self) -> bool {
        self.violations.iter().all(|v| !v.is_c1())
    }

    /// `Some(z)` when every column has the same number of stars.
    pub fn uniform_z(&self) -> Option<usize> {
        let first = *self.column_stars.first()?;
        self.column_stars
            .iter()
            .all(|&c| c == first)
            .then_some(first)
    }

    /// Columns whose star count differs from the most common one, as
    /// `(col, stars)`. Empty exactly when C2 holds. A soft flag: such
    /// an array is still valid under C1, it just has no single `Z`.
    pub fn column_star_mismatches(&self) -> Vec<(usize, usize)> {
        if self.uniform_z().is_some() {
            return Vec::new();
        }
        let mut counts = std::collections::HashMap::new();
        for &c in &self.column_stars {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        let modal = counts
            .into_iter()
            .max_by_key(|&(stars, n)| (n, std::cmp::Reverse(stars)))
            .map(|(stars, _)| stars)
            .unwrap_or(0);
        self.column_stars
            .iter()
            .enumerate()
            .filter(|&(_, &stars)| stars != modal)
            .map(|(col, &stars)| (col, stars))
            .collect()
    }
}

/// Checks conditions C1-a and C1-b for every pair of equal symbols and
/// that the symbols present are exactly `0..S`. C2 (uniform stars per
/// column) and g-regularity are reported as properties, not failures:
/// a C1-only array is still a valid `(K, F, S)` array.
///
/// A gap-free alphabet can never extend past `n`, the number of symbol
/// cells. When the largest symbol breaks that pigeonhole bound the
/// dense per-symbol structures are truncated at `n + 1` (some gap
/// below the cut is then guaranteed and still reported), so crafted
/// inputs cannot force alphabet-sized allocations.
pub fn validate(p: &Pda) -> Verdict {
    let (f, k) = (p.rows(), p.cols());
    let n = p.symbol_count();
    let s_count = p
        .symbol_cells()
        .map(|(_, _, s)| s as usize + 1)
        .max()
        .unwrap_or(0);
    let dense = s_count.min(n + 1);

    let mut by_symbol: Vec<Vec<(usize, usize)>> = vec![Vec::new(); dense];
    let mut overflow: Vec<(u32, Vec<(usize, usize)>)> = Vec::new();
    let mut row_counts = vec![0usize; f];
    let mut column_stars = vec![f; k];
    for (i, j, s) in p.symbol_cells() {
        if (s as usize) < dense {
            by_symbol[s as usize].push((i, j));
        } else {
            match overflow.iter_mut().find(|(sym, _)| *sym == s) {
                Some((_, cells)) => cells.push((i, j)),
                None => overflow.push((s, vec![(i, j)])),
            }
        }
        row_counts[i] += 1;
        column_stars[j] -= 1;
    }
    let grouped = by_symbol
        .iter()
        .enumerate()
        .map(|(s, cells)| (s as u32, cells))
        .chain(overflow.iter().map(|(s, cells)| (*s, cells)));

    let mut violations = Vec::new();
    for (s, cells) in grouped {
        if cells.is_empty() {
            violations.push(Violation::AlphabetGap {
                missing: s,
                alphabet_size: s_count as u64,
            });
            continue;
        }
        for (idx, &(i1, j1)) in cells.iter().enumerate() {
            for &(i2, j2) in &cells[idx + 1..] {
                if i1 == i2 {
                    violations.push(Violation::SameRowRepeat {
                        symbol: s,
                        row: i1,
                        col_a: j1,
                        col_b: j2,
                    });
                    continue;
                }
                if j1 == j2 {
                    violations.push(Violation::SameColumnRepeat {
                        symbol: s,
                        col: j1,
                        row_a: i1,
                        row_b: i2,
                    });
                    continue;
                }
                for (cross, first, second) in [
                    ((i1, j2), (i1, j1), (i2, j2)),
                    ((i2, j1), (i1, j1), (i2, j2)),
                ] {
                    let found = p.entry(cross.0, cross.1);
                    if !found.is_star() {
                        violations.push(Violation::CrossEntryNotStar {
                            symbol: s,
                            first,
                            second,
                            cross,
                            found,
                        });
                    }
                }
            }
        }
    }

    let occupancy = OccupancyStats {
        symbol_counts: by_symbol.iter().map(Vec::len).collect(),
        row_counts,
    };
    let params = violations.is_empty().then(|| {
        let z = {
            let first = column_stars[0];
            column_stars.iter().all(|&c| c == first).then_some(first)
        };
        PdaParams {
            k,
            f,
            z,
            s: s_count,
            n: occupancy.total(),
            g: occupancy.regularity(),
        }
    });
    Verdict {
        violations,
        occupancy,
        column_stars,
        params,
    }
}
