//! Placement delivery arrays (PDAs) for centralized coded caching.
//!
//! A PDA is an `F x K` array over a star symbol and the integers
//! `0..S`. Columns are users, rows are packet indices, stars mark
//! cached packets and each integer names the broadcast slot in which
//! the remaining packets are delivered as one XOR. The array encodes a
//! complete caching scheme: a `(K, F, Z, S)` PDA yields a `K`-user
//! scheme with memory ratio `Z/F` and delivery rate `S/F`.
//!
//! The crate provides:
//!
//! - the grid model with structural validation ([`grid`], [`validate`]),
//! - the incidence-set dual and coordinate conjugation ([`incidence`]),
//! - explicit families: the subset-indexed base array, its grouped
//!   extension and six conjugate-derived variants ([`construct`]),
//! - two lower bounds on `S`, a rate/subpacketization tradeoff bound
//!   and Pareto-optimality certificates ([`bounds`]),
//! - an exhaustive minimal-`S` search for small grids ([`oracle`]),
//! - a byte-level placement/delivery/decoding simulator ([`sim`]),
//! - scheme-family comparisons and reference tables ([`compare`],
//!   [`tables`]).
//!
//! All rates, ratios and bounds are exact rationals; decimals appear
//! only when rendering output.
//!
//! ```
//! use pda_core::construct::{build_mn, MnSpec};
//! use pda_core::sim::{demand_sweep, SweepConfig};
//! use pda_core::validate::validate;
//!
//! // The 3-regular (4, 6, 3, 4) array: 4 users each caching half of
//! // every file, 4 broadcast slots over 6 packets.
//! let pda = build_mn(MnSpec::new(4, 2)?)?;
//! let params = validate(&pda).params.expect("construction is valid");
//! assert_eq!(params.to_string(), "(K=4,F=6,Z=3,S=4) g=3");
//! assert_eq!(params.rate(), pda_core::rat(2, 3));
//!
//! // Every user decodes its demand under every request vector.
//! let sweep = demand_sweep(&pda, 4, &SweepConfig::default())?;
//! assert_eq!(sweep.demands_run, 256);
//! assert!(sweep.all_decoded());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod binom;
pub mod bounds;
pub mod compare;
pub mod construct;
pub mod decimal;
pub mod grid;
pub mod incidence;
pub mod oracle;
pub mod samples;
pub mod sim;
pub mod tables;
pub mod validate;

pub use grid::{Entry, GridError, ParseError, Pda};
pub use incidence::{CoordPerm, IncidenceError, IncidenceSet, IncidenceTriple};
pub use validate::{validate, OccupancyStats, PdaParams, Verdict, Violation};

/// Exact integer used for parameter arithmetic.
pub type Int = num_bigint::BigInt;
/// Exact rational used for rates, ratios and bounds.
pub type Rational = num_rational::BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}
