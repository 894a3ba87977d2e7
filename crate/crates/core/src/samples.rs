//! Small bundled arrays used in tests, docs and the CLI examples.

use crate::grid::Pda;

/// The canonical text of the 3-regular `(4,6,3,4)` sample array.
pub const REGULAR_4_6_3_4: &str = include_str!("../fixtures/pda_4_6_3_4.pda");

/// The canonical text of an optimal `(6,8,5,5)` array: no valid array
/// with these `K`, `F`, `Z` has fewer than 5 symbols.
pub const OPTIMAL_6_8_5_5: &str = include_str!("../fixtures/pda_6_8_5_5.pda");

/// A 3-regular `(4,6,3,4)` array.
pub fn regular_4_6_3_4() -> Pda {
    Pda::parse(REGULAR_4_6_3_4).expect("bundled sample parses")
}

/// An optimal `(6,8,5,5)` array.
pub fn optimal_6_8_5_5() -> Pda {
    Pda::parse(OPTIMAL_6_8_5_5).expect("bundled sample parses")
}
