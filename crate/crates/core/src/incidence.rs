//! The incidence-set dual of a grid: the set of `(row, col, symbol)`
//! triples of its symbol cells.
//!
//! A triple set with dims `(F, K, S)` describes a valid grid exactly
//! when (P1) distinct triples differ in at least two coordinates and
//! (P2) it contains no configuration `(i1,j1,a), (i1,j2,b), (i2,j2,a)`
//! with `i1 != i2`, `j1 != j2`, `a != b`. Permuting the three
//! coordinate roles (conjugation) preserves both properties, which is
//! how the derived array families are produced.

use crate::grid::{Entry, Pda};
use std::collections::{BTreeSet, HashMap, HashSet};
use thiserror::Error;

/// One symbol cell, as coordinates in `[0,F) x [0,K) x [0,S)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IncidenceTriple {
    pub row: u32,
    pub col: u32,
    pub symbol: u32,
}

impl IncidenceTriple {
    pub fn new(row: u32, col: u32, symbol: u32) -> Self {
        IncidenceTriple { row, col, symbol }
    }

    fn coords(self) -> [u32; 3] {
        [self.row, self.col, self.symbol]
    }

    /// Number of coordinates at which `self` and `other` differ.
    pub fn distance(self, other: IncidenceTriple) -> usize {
        self.coords()
            .iter()
            .zip(other.coords())
            .filter(|(a, b)| **a != *b)
            .count()
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("triple ({0}, {1}, {2}) lies outside dims (F={3}, K={4}, S={5})")]
    OutOfBounds(u32, u32, u32, u32, u32, u32),
    #[error("triples at cell ({row}, {col}) carry conflicting symbols {a} and {b}")]
    ConflictingTriples { row: u32, col: u32, a: u32, b: u32 },
}

/// An ordering of the three coordinate roles (row, column, symbol).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoordPerm([usize; 3]);

impl CoordPerm {
    pub const IDENTITY: CoordPerm = CoordPerm([0, 1, 2]);

    /// `None` unless `order` is a permutation of `{0, 1, 2}`.
    pub fn new(order: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &x in &order {
            if x > 2 || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(CoordPerm(order))
    }

    pub fn order(self) -> [usize; 3] {
        self.0
    }

    pub fn inverse(self) -> CoordPerm {
        let mut inv = [0; 3];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        CoordPerm(inv)
    }

    /// All six coordinate orderings, lexicographic.
    pub fn all() -> [CoordPerm; 6] {
        [
            CoordPerm([0, 1, 2]),
            CoordPerm([0, 2, 1]),
            CoordPerm([1, 0, 2]),
            CoordPerm([1, 2, 0]),
            CoordPerm([2, 0, 1]),
            CoordPerm([2, 1, 0]),
        ]
    }

    fn apply(self, x: [u32; 3]) -> [u32; 3] {
        [x[self.0[0]], x[self.0[1]], x[self.0[2]]]
    }
}

/// A set of [`IncidenceTriple`] with declared dims `(F, K, S)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidenceSet {
    triples: BTreeSet<IncidenceTriple>,
    dims: (u32, u32, u32),
}

impl IncidenceSet {
    /// Builds a set, rejecting out-of-bounds triples. Duplicates
    /// collapse (it is a set).
    pub fn new(
        triples: impl IntoIterator<Item = IncidenceTriple>,
        dims: (u32, u32, u32),
    ) -> Result<Self, IncidenceError> {
        let mut set = BTreeSet::new();
        for t in triples {
            if t.row >= dims.0 || t.col >= dims.1 || t.symbol >= dims.2 {
                return Err(IncidenceError::OutOfBounds(
                    t.row, t.col, t.symbol, dims.0, dims.1, dims.2,
                ));
            }
            set.insert(t);
        }
        Ok(IncidenceSet { triples: set, dims })
    }

    /// Dims `(F, K, S)`.
    pub fn dims(&self) -> (u32, u32, u32) {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = IncidenceTriple> + '_ {
        self.triples.iter().copied()
    }

    pub fn contains(&self, t: &IncidenceTriple) -> bool {
        self.triples.contains(t)
    }

    /// P1: every pair of distinct triples differs in at least two
    /// coordinates. Equivalently no two triples share a coordinate
    /// pair, which is what is checked.
    pub fn check_p1(&self) -> bool {
        let mut rc = HashSet::new();
        let mut rs = HashSet::new();
        let mut cs = HashSet::new();
        for t in self.iter() {
            if !rc.insert((t.row, t.col))
                || !rs.insert((t.row, t.symbol))
                || !cs.insert((t.col, t.symbol))
            {
                return false;
            }
        }
        true
    }

    /// P2: no forbidden configuration `(i1,j1,a), (i1,j2,b), (i2,j2,a)`
    /// with `i1 != i2`, `j1 != j2`, `a != b`. Triples are indexed by
    /// symbol and every same-symbol pair is tested against both
    /// column-cross cells.
    pub fn check_p2(&self) -> bool {
        let mut by_symbol: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        let mut at_cell: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for t in self.iter() {
            by_symbol.entry(t.symbol).or_default().push((t.row, t.col));
            at_cell.entry((t.row, t.col)).or_default().push(t.symbol);
        }
        for (&a, cells) in &by_symbol {
            for (idx, &(i1, j1)) in cells.iter().enumerate() {
                for &(i2, j2) in &cells[idx + 1..] {
                    if i1 == i2 || j1 == j2 {
                        continue; // not the shape of the configuration
                    }
                    for cross in [(i1, j2), (i2, j1)] {
                        if let Some(syms) = at_cell.get(&cross) {
                            if syms.iter().any(|&b| b != a) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Reorders every triple's coordinates by `perm`; dims follow.
    pub fn conjugate(&self, perm: CoordPerm) -> IncidenceSet {
        let dims = perm.apply([self.dims.0, self.dims.1, self.dims.2]);
        let triples = self
            .triples
            .iter()
            .map(|t| {
                let [row, col, symbol] = perm.apply(t.coords());
                IncidenceTriple { row, col, symbol }
            })
            .collect();
        IncidenceSet {
            triples,
            dims: (dims[0], dims[1], dims[2]),
        }
    }
}

impl Pda {
    /// One triple per symbol cell; dims taken from the grid with
    /// `S` = alphabet extent.
    pub fn to_incidence_set(&self) -> IncidenceSet {
        let s = self
            .symbol_cells()
            .map(|(_, _, s)| s + 1)
            .max()
            .unwrap_or(0);
        let triples: BTreeSet<_> = self
            .symbol_cells()
            .map(|(i, j, s)| IncidenceTriple::new(i as u32, j as u32, s))
            .collect();
        IncidenceSet {
            triples,
            dims: (self.rows() as u32, self.cols() as u32, s),
        }
    }

    /// Materializes a grid with stars at all non-incident cells.
    /// Fails when two triples share a cell with different symbols,
    /// which is a P1 violation.
    pub fn from_incidence_set(c: &IncidenceSet) -> Result<Pda, IncidenceError> {
        let (f, k, _) = c.dims();
        let mut p = Pda::from_fn(f as usize, k as usize, |_, _| Entry::Star);
        for t in c.iter() {
            match p.entry(t.row as usize, t.col as usize) {
                Entry::Star => {
                    p = p.with_entry(t.row as usize, t.col as usize, Entry::Symbol(t.symbol))
                }
                Entry::Symbol(a) => {
                    return Err(IncidenceError::ConflictingTriples {
                        row: t.row,
                        col: t.col,
                        a,
                        b: t.symbol,
                    })
                }
            }
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::validate::validate;

    fn triples(v: &[(u32, u32, u32)]) -> Vec<IncidenceTriple> {
        v.iter()
            .map(|&(i, j, s)| IncidenceTriple::new(i, j, s))
            .collect()
    }

    /// The twelve triples of the bundled (4,6,3,4) array.
    fn sample_set() -> IncidenceSet {
        IncidenceSet::new(
            triples(&[
                (0, 2, 0),
                (0, 3, 1),
                (1, 1, 0),
                (1, 3, 2),
                (2, 1, 1),
                (2, 2, 2),
                (3, 0, 0),
                (3, 3, 3),
                (4, 0, 1),
                (4, 2, 3),
                (5, 0, 2),
                (5, 1, 3),
            ]),
            (6, 4, 4),
        )
        .unwrap()
    }

    #[test]
    fn sample_array_yields_the_known_triple_set() {
        let inc = samples::regular_4_6_3_4().to_incidence_set();
        assert_eq!(inc, sample_set());
        assert_eq!(inc.len(), 12);
    }

    #[test]
    fn all_star_grid_yields_empty_set() {
        let p = Pda::from_fn(2, 3, |_, _| Entry::Star);
        let inc = p.to_incidence_set();
        assert!(inc.is_empty());
        assert_eq!(inc.dims(), (2, 3, 0));
        assert_eq!(Pda::from_incidence_set(&inc).unwrap(), p);
    }

    #[test]
    fn from_incidence_examples() {
        assert_eq!(
            Pda::from_incidence_set(&sample_set()).unwrap(),
            samples::regular_4_6_3_4()
        );

        let diag = IncidenceSet::new(triples(&[(0, 0, 0), (1, 1, 0)]), (2, 2, 1)).unwrap();
        assert_eq!(
            Pda::from_incidence_set(&diag).unwrap(),
            Pda::parse("2 2\n0 *\n* 0\n").unwrap()
        );
    }

    #[test]
    fn from_incidence_rejects_conflicts() {
        let c = IncidenceSet::new(triples(&[(0, 0, 0), (0, 0, 1)]), (1, 1, 2)).unwrap();
        assert_eq!(
            Pda::from_incidence_set(&c),
            Err(IncidenceError::ConflictingTriples {
                row: 0,
                col: 0,
                a: 0,
                b: 1
            })
        );
    }

    #[test]
    fn out_of_bounds_rejected() {
        assert!(IncidenceSet::new(triples(&[(0, 0, 2)]), (1, 1, 3)).is_ok());
        assert!(matches!(
            IncidenceSet::new(triples(&[(0, 0, 2)]), (1, 1, 2)),
            Err(IncidenceError::OutOfBounds(..))
        ));
        assert!(matches!(
            IncidenceSet::new(triples(&[(1, 0, 0)]), (1, 1, 1)),
            Err(IncidenceError::OutOfBounds(..))
        ));
    }

    #[test]
    fn p1_examples() {
        assert!(sample_set().check_p1());
        let close = IncidenceSet::new(triples(&[(0, 0, 0), (0, 0, 1)]), (1, 1, 2)).unwrap();
        assert!(!close.check_p1());
        let single = IncidenceSet::new(triples(&[(0, 0, 0)]), (1, 1, 1)).unwrap();
        assert!(single.check_p1());
    }

    #[test]
    fn p2_examples() {
        assert!(sample_set().check_p2());
        let forbidden =
            IncidenceSet::new(triples(&[(0, 0, 0), (0, 1, 1), (1, 1, 0)]), (2, 2, 2)).unwrap();
        assert!(!forbidden.check_p2());
        // All triples share one symbol: the configuration needs two
        // distinct symbols, so P2 holds.
        let mono =
            IncidenceSet::new(triples(&[(0, 0, 0), (1, 1, 0), (2, 2, 0)]), (3, 3, 1)).unwrap();
        assert!(mono.check_p2());
    }

    #[test]
    fn conjugate_identity_and_inverse() {
        let c = sample_set();
        assert_eq!(c.conjugate(CoordPerm::IDENTITY), c);
        for perm in CoordPerm::all() {
            assert_eq!(c.conjugate(perm).conjugate(perm.inverse()), c);
        }
    }

    #[test]
    fn conjugate_rows_symbols_gives_4_4_1_6() {
        let perm = CoordPerm::new([2, 1, 0]).unwrap();
        let conj = sample_set().conjugate(perm);
        assert_eq!(conj.dims(), (4, 4, 6));
        let p = Pda::from_incidence_set(&conj).unwrap();
        let v = validate(&p);
        assert!(v.is_valid());
        let params = v.params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (4, 4, Some(1), 6));
    }

    #[test]
    fn conjugation_preserves_p1_p2_on_sample() {
        let c = sample_set();
        for perm in CoordPerm::all() {
            let conj = c.conjugate(perm);
            assert!(conj.check_p1() && conj.check_p2(), "{:?}", perm);
        }
    }

    #[test]
    fn coord_perm_rejects_non_permutations() {
        assert!(CoordPerm::new([0, 0, 1]).is_none());
        assert!(CoordPerm::new([0, 1, 3]).is_none());
        assert!(CoordPerm::new([2, 0, 1]).is_some());
    }
}
