//! The PDA grid model and its canonical text format.

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// A single cell: a star (the user caches this packet) or a symbol
/// naming the broadcast slot that delivers it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Entry {
    Star,
    Symbol(u32),
}

impl Entry {
    pub fn is_star(self) -> bool {
        matches!(self, Entry::Star)
    }

    pub fn symbol(self) -> Option<u32> {
        match self {
            Entry::Star => None,
            Entry::Symbol(s) => Some(s),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Star => f.write_str("*"),
            Entry::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid must have at least one row and one column")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    MalformedGrid {
        row: usize,
        got: usize,
        expected: usize,
    },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing \"F K\" header line")]
    MissingHeader,
    #[error("bad header {0:?}: expected two positive integers \"F K\"")]
    BadHeader(String),
    #[error("line {line}: bad token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected {expected} tokens, found {got}")]
    WrongRowLength {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} grid rows, found {got}")]
    WrongRowCount { expected: usize, got: usize },
    #[error("line {0}: trailing content after the grid")]
    TrailingContent(usize),
}

/// An `F x K` array of [`Entry`] values, immutable once built.
///
/// Rows index packets, columns index users. Cells are stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pda {
    rows: usize,
    cols: usize,
    cells: Vec<Entry>,
}

impl Pda {
    /// Builds a grid from rows, which must be non-empty and of equal
    /// length.
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self, GridError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(GridError::Empty);
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(GridError::MalformedGrid {
                    row: i,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        let row_count = rows.len();
        let cells = rows.into_iter().flatten().collect();
        Ok(Pda {
            rows: row_count,
            cols,
            cells,
        })
    }

    /// Builds an `f x k` grid by evaluating `fill` at every cell.
    pub fn from_fn(f: usize, k: usize, fill: impl Fn(usize, usize) -> Entry) -> Self {
        assert!(f >= 1 && k >= 1, "grid must be at least 1 x 1");
        let mut cells = Vec::with_capacity(f * k);
        for i in 0..f {
            for j in 0..k {
                cells.push(fill(i, j));
            }
        }
        Pda {
            rows: f,
            cols: k,
            cells,
        }
    }

    /// Number of rows `F` (packets per file).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `K` (users).
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> Entry {
        self.cells[row * self.cols + col]
    }

    /// A copy with one cell replaced. Handy for mutation tests.
    pub fn with_entry(&self, row: usize, col: usize, e: Entry) -> Pda {
        let mut out = self.clone();
        out.cells[row * self.cols + col] = e;
        out
    }

    /// Iterates `(row, col, symbol)` over all symbol cells, row-major.
    pub fn symbol_cells(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(idx, e)| e.symbol().map(|s| (idx / self.cols, idx % self.cols, s)))
    }

    /// Count of symbol (non-star) cells.
    pub fn symbol_count(&self) -> usize {
        self.cells.iter().filter(|e| !e.is_star()).count()
    }

    /// Relabels symbols to `0..S` in order of first appearance,
    /// scanning row-major. The grid layout is unchanged.
    pub fn canonicalize_symbols(&self) -> Pda {
        let mut map = HashMap::new();
        let mut next = 0u32;
        let cells = self
            .cells
            .iter()
            .map(|e| match e {
                Entry::Star => Entry::Star,
                Entry::Symbol(s) => {
                    let label = *map.entry(*s).or_insert_with(|| {
                        let l = next;
                        next += 1;
                        l
                    });
                    Entry::Symbol(label)
                }
            })
            .collect();
        Pda {
            rows: self.rows,
            cols: self.cols,
            cells,
        }
    }

    /// Parses the canonical text format: a `"F K"` header, then `F`
    /// lines of `K` whitespace-separated tokens, each `*` or a decimal
    /// integer.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let bad = || ParseError::BadHeader(header.to_string());
        if dims.len() != 2 {
            return Err(bad());
        }
        let f: usize = parse_count(dims[0]).ok_or_else(bad)?;
        let k: usize = parse_count(dims[1]).ok_or_else(bad)?;
        if f == 0 || k == 0 || f.checked_mul(k).is_none() {
            return Err(bad());
        }
        // Sized by the header, which the input has not yet earned;
        // cap so a lying header cannot force a giant allocation.
        let mut cells = Vec::with_capacity((f * k).min(1 << 16));
        let mut rows_read = 0;
        for (lineno, line) in lines {
            if rows_read == f {
                if !line.trim().is_empty() {
                    return Err(ParseError::TrailingContent(lineno + 1));
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != k {
                return Err(ParseError::WrongRowLength {
                    line: lineno + 1,
                    expected: k,
                    got: tokens.len(),
                });
            }
            for tok in tokens {
                cells.push(parse_entry(tok).ok_or_else(|| ParseError::BadToken {
                    line: lineno + 1,
                    token: tok.to_string(),
                })?);
            }
            rows_read += 1;
        }
        if rows_read != f {
            return Err(ParseError::WrongRowCount {
                expected: f,
                got: rows_read,
            });
        }
        Ok(Pda {
            rows: f,
            cols: k,
            cells,
        })
    }

    /// Renders the canonical text format, bit-exact: header, one line
    /// per row with single-space separators, trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&self.entry(i, j).to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_count(tok: &str) -> Option<usize> {
    if tok.bytes().all(|b| b.is_ascii_digit()) {
        tok.parse().ok()
    } else {
        None
    }
}

fn parse_entry(tok: &str) -> Option<Entry> {
    if tok == "*" {
        return Some(Entry::Star);
    }
    if tok.bytes().all(|b| b.is_ascii_digit()) {
        tok.parse().ok().map(Entry::Symbol)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "2 3\n* 0 1\n0 * *\n";

    #[test]
    fn parse_and_render_roundtrip() {
        let p = Pda::parse(SAMPLE).unwrap();
        assert_eq!(p.rows(), 2);
        assert_eq!(p.cols(), 3);
        assert_eq!(p.entry(0, 0), Entry::Star);
        assert_eq!(p.entry(0, 2), Entry::Symbol(1));
        assert_eq!(p.to_text(), SAMPLE);
        assert_eq!(Pda::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn parse_accepts_extra_whitespace() {
        let p = Pda::parse("2 3\n  *\t0   1\n0 * *\n").unwrap();
        assert_eq!(p.to_text(), SAMPLE);
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        for bad in [
            "2 3\n* 0 x\n0 * *\n",
            "2 3\n* 0 +1\n0 * *\n",
            "2 3\n* 0 -1\n0 * *\n",
        ] {
            assert!(
                matches!(Pda::parse(bad), Err(ParseError::BadToken { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn parse_rejects_shape_errors() {
        assert!(matches!(Pda::parse(""), Err(ParseError::MissingHeader)));
        assert!(matches!(Pda::parse("x 3\n"), Err(ParseError::BadHeader(_))));
        assert!(matches!(Pda::parse("0 3\n"), Err(ParseError::BadHeader(_))));
        assert!(matches!(
            Pda::parse("2 3\n* 0\n0 * *\n"),
            Err(ParseError::WrongRowLength {
                line: 2,
                expected: 3,
                got: 2
            })
        ));
        assert!(matches!(
            Pda::parse("3 3\n* 0 1\n0 * *\n"),
            Err(ParseError::WrongRowCount {
                expected: 3,
                got: 2
            })
        ));
        assert!(matches!(
            Pda::parse("2 3\n* 0 1\n0 * *\n1 1 1\n"),
            Err(ParseError::TrailingContent(4))
        ));
    }

    #[test]
    fn from_rows_checks_shape() {
        assert_eq!(Pda::from_rows(vec![]), Err(GridError::Empty));
        assert_eq!(
            Pda::from_rows(vec![vec![Entry::Star], vec![Entry::Star, Entry::Star]]),
            Err(GridError::MalformedGrid {
                row: 1,
                got: 2,
                expected: 1
            })
        );
    }

    #[test]
    fn canonicalize_by_first_appearance() {
        let p = Pda::parse("2 3\n* 7 3\n3 * 9\n").unwrap();
        let c = p.canonicalize_symbols();
        assert_eq!(c.to_text(), "2 3\n* 0 1\n1 * 2\n");
        // Idempotent on already-canonical grids.
        assert_eq!(c.canonicalize_symbols(), c);
    }
}
