//! Exhaustive search for the smallest symbol count admitting a valid
//! array at a given `(K, F, Z)`.
//!
//! The search fills columns left to right. Each column picks its
//! `F - Z` symbol rows and then symbols row by row, checking the pair
//! conditions against everything already placed; a violated pair
//! always involves the newest cell, so the check is complete. Two
//! symmetry reductions cut the space without losing solutions: the
//! first column's stars are pinned to the lexicographically least
//! `Z`-subset of rows (any solution can be row-permuted into that
//! form), and symbol labels must first appear in increasing order in
//! column-major scan (any solution can be relabeled).

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space too large: {cells} cells exceeds the limit of {limit}")]
    SearchSpaceTooLarge { cells: usize, limit: usize },
    #[error("degenerate input: need K >= 1 and 0 < Z < F")]
    DegenerateInput,
    #[error("grids with more than 32 rows are not searchable")]
    TooManyRows,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleOutcome {
    /// The smallest `S` admitting a valid `(K, F, Z, S)` array.
    Found(u32),
    /// No array exists with at most this many symbols.
    NotFoundWithin(u32),
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Largest alphabet to try; defaults to `n = (F-Z)K`, which always
    /// admits a valid array (all symbol cells distinct).
    pub s_max: Option<u32>,
    /// Refuse grids with more than this many cells.
    pub cell_limit: usize,
    /// First alphabet size to try; defaults to the larger of the two
    /// lower bounds. Pass `Some(1)` to make the search independent of
    /// the bounds.
    pub start: Option<u32>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            s_max: None,
            cell_limit: 24,
            start: None,
        }
    }
}

pub fn oracle_min_s(
    k: usize,
    f: usize,
    z: usize,
    cfg: &OracleConfig,
) -> Result<OracleOutcome, OracleError> {
    oracle_min_s_witness(k, f, z, cfg).map(|r| match r {
        Some((s, _)) => OracleOutcome::Found(s),
        None => {
            let n = ((f - z) * k) as u32;
            OracleOutcome::NotFoundWithin(cfg.s_max.unwrap_or(n).min(n))
        }
    })
}

/// Like [`oracle_min_s`], but also returns the found array so callers
/// can re-check it independently.
pub fn oracle_min_s_witness(
    k: usize,
    f: usize,
    z: usize,
    cfg: &OracleConfig,
) -> Result<Option<(u32, crate::Pda)>, OracleError> {
    if k == 0 || z == 0 || z >= f {
        return Err(OracleError::DegenerateInput);
    }
    let cells = k.checked_mul(f).ok_or(OracleError::DegenerateInput)?;
    if cells > cfg.cell_limit {
        return Err(OracleError::SearchSpaceTooLarge {
            cells,
            limit: cfg.cell_limit,
        });
    }
    if f > 32 {
        return Err(OracleError::TooManyRows);
    }

    let n = ((f - z) * k) as u32;
    let start = cfg.start.unwrap_or_else(|| {
        let b1 = crate::bounds::bound_first(k as u64, f as u64, z as u64)
            .expect("inputs checked")
            .ceil()
            .to_integer();
        let b2 = crate::bounds::bound_second(k as u64, f as u64, z as u64).expect("inputs checked");
        u32::try_from(b2)
            .unwrap_or(u32::MAX)
            .max(num_traits::ToPrimitive::to_u32(&b1).unwrap_or(u32::MAX))
    });
    let s_max = cfg.s_max.unwrap_or(n).min(n);

    for s_try in start.max(1)..=s_max {
        let mut search = Search::new(k, f, z, s_try);
        if search.place_column(0) {
            return Ok(Some((s_try, search.into_grid())));
        }
    }
    Ok(None)
}

struct Search {
    k: usize,
    f: usize,
    z: usize,
    per_col: usize,
    s_try: u32,
    /// Bitmask of symbol (non-star) rows per placed column.
    col_masks: Vec<u32>,
    /// Cells per symbol, as (row, col).
    sym_cells: Vec<Vec<(usize, usize)>>,
    next_fresh: u32,
}

impl Search {
    /// The found array, from the per-symbol cell lists. Only
    /// meaningful after a successful search.
    fn into_grid(self) -> crate::Pda {
        let mut grid = crate::Pda::from_fn(self.f, self.k, |_, _| crate::Entry::Star);
        for (s, cells) in self.sym_cells.iter().enumerate() {
            for &(row, col) in cells {
                grid = grid.with_entry(row, col, crate::Entry::Symbol(s as u32));
            }
        }
        grid
    }

    fn new(k: usize, f: usize, z: usize, s_try: u32) -> Self {
        Search {
            k,
            f,
            z,
            per_col: f - z,
            s_try,
            col_masks: vec![0; k],
            sym_cells: vec![Vec::new(); s_try as usize],
            next_fresh: 0,
        }
    }

    fn place_column(&mut self, col: usize) -> bool {
        if col == self.k {
            return true;
        }
        if (self.per_col as u32) > self.s_try {
            return false; // a column needs per_col distinct symbols
        }
        if col == 0 {
            // Stars pinned to rows 0..z; the canonical label order
            // then forces symbols 0, 1, ... down the column.
            let mask = (((1u64 << self.per_col) - 1) as u32) << self.z;
            self.col_masks[0] = mask;
            for (s, row) in (self.z..self.f).enumerate() {
                self.sym_cells[s].push((row, 0));
            }
            self.next_fresh = self.per_col as u32;
            let ok = self.place_column(1);
            if !ok {
                for s in 0..self.per_col {
                    self.sym_cells[s].clear();
                }
                self.next_fresh = 0;
                self.col_masks[0] = 0;
            }
            return ok;
        }
        let mut rows = Vec::with_capacity(self.per_col);
        self.choose_rows(col, 0, &mut rows)
    }

    fn choose_rows(&mut self, col: usize, from: usize, rows: &mut Vec<usize>) -> bool {
        if rows.len() == self.per_col {
            let mask = rows.iter().fold(0u32, |m, &r| m | (1 << r));
            self.col_masks[col] = mask;
            let rows_copy = rows.clone();
            let mut used = Vec::with_capacity(self.per_col);
            if self.assign_symbols(col, &rows_copy, 0, &mut used) {
                return true;
            }
            self.col_masks[col] = 0;
            return false;
        }
        let needed = self.per_col - rows.len();
        if self.f < from + needed {
            return false;
        }
        for r in from..=(self.f - needed) {
            rows.push(r);
            if self.choose_rows(col, r + 1, rows) {
                return true;
            }
            rows.pop();
        }
        false
    }

    /// `used` holds the symbols already assigned in this column.
    fn assign_symbols(
        &mut self,
        col: usize,
        rows: &[usize],
        idx: usize,
        used: &mut Vec<u32>,
    ) -> bool {
        if idx == rows.len() {
            return self.place_column(col + 1);
        }
        let row = rows[idx];
        let candidates = self.next_fresh.min(self.s_try);
        for s in 0..candidates {
            if used.contains(&s) {
                continue;
            }
            if !self.compatible(s, row, col) {
                continue;
            }
            self.sym_cells[s as usize].push((row, col));
            used.push(s);
            if self.assign_symbols(col, rows, idx + 1, used) {
                return true;
            }
            used.pop();
            self.sym_cells[s as usize].pop();
        }
        // A fresh label; by canonicality it must be the next one.
        if self.next_fresh < self.s_try {
            let s = self.next_fresh;
            self.next_fresh += 1;
            self.sym_cells[s as usize].push((row, col));
            used.push(s);
            if self.assign_symbols(col, rows, idx + 1, used) {
                return true;
            }
            used.pop();
            self.sym_cells[s as usize].pop();
            self.next_fresh -= 1;
        }
        false
    }

    /// Can symbol `s` sit at `(row, col)` given everything placed?
    /// Checks distinct rows and both cross-star conditions against
    /// every earlier cell of `s`.
    fn compatible(&self, s: u32, row: usize, col: usize) -> bool {
        let my_mask = self.col_masks[col];
        for &(r2, c2) in &self.sym_cells[s as usize] {
            if r2 == row {
                return false;
            }
            if self.col_masks[c2] & (1 << row) != 0 {
                return false;
            }
            if my_mask & (1 << r2) != 0 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_s(k: usize, f: usize, z: usize) -> u32 {
        let cfg = OracleConfig {
            start: Some(1),
            ..OracleConfig::default()
        };
        match oracle_min_s(k, f, z, &cfg).unwrap() {
            OracleOutcome::Found(s) => s,
            OracleOutcome::NotFoundWithin(_) => panic!("distinct symbols always work"),
        }
    }

    #[test]
    fn tiny_instances() {
        assert_eq!(min_s(2, 2, 1), 1);
        assert_eq!(min_s(1, 2, 1), 1);
        assert_eq!(min_s(1, 4, 1), 3);
        // Two columns can share exactly one symbol here.
        assert_eq!(min_s(2, 3, 1), 3);
    }

    #[test]
    fn four_users_six_rows() {
        // Matches the bundled (4,6,3,4) array and both bounds.
        assert_eq!(min_s(4, 6, 3), 4);
    }

    #[test]
    fn respects_s_max() {
        let cfg = OracleConfig {
            s_max: Some(2),
            start: Some(1),
            ..OracleConfig::default()
        };
        assert_eq!(
            oracle_min_s(4, 6, 3, &cfg).unwrap(),
            OracleOutcome::NotFoundWithin(2)
        );
    }

    #[test]
    fn guards() {
        assert!(matches!(
            oracle_min_s(10, 10, 5, &OracleConfig::default()),
            Err(OracleError::SearchSpaceTooLarge {
                cells: 100,
                limit: 24
            })
        ));
        assert!(matches!(
            oracle_min_s(2, 2, 2, &OracleConfig::default()),
            Err(OracleError::DegenerateInput)
        ));
    }

    #[test]
    fn witnesses_validate_with_the_searched_parameters() {
        for (k, f, z) in [(2, 2, 1), (4, 6, 3), (2, 3, 1), (3, 4, 2)] {
            let cfg = OracleConfig {
                start: Some(1),
                ..OracleConfig::default()
            };
            let (s, witness) = oracle_min_s_witness(k, f, z, &cfg).unwrap().unwrap();
            let params = crate::validate::validate(&witness)
                .params
                .expect("witness must be a valid array");
            assert_eq!(
                (params.k, params.f, params.z, params.s),
                (k, f, Some(z), s as usize)
            );
        }
    }

    #[test]
    fn default_start_uses_bounds() {
        assert_eq!(
            oracle_min_s(2, 2, 1, &OracleConfig::default()).unwrap(),
            OracleOutcome::Found(1)
        );
        assert_eq!(
            oracle_min_s(4, 6, 3, &OracleConfig::default()).unwrap(),
            OracleOutcome::Found(4)
        );
    }
}
