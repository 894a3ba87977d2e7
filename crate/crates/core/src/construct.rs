//! Explicit array families.
//!
//! The base family indexes rows by the `t`-subsets of `[0, k)` in
//! lexicographic order and columns by users: cell `(T, u)` is a star
//! when `u` is in `T` and otherwise carries the lexicographic rank of
//! the `(t+1)`-subset `T + {u}`. Grouping tiles several user groups
//! over the same row set with disjoint alphabets. Conjugating the base
//! array's incidence set yields six derived shapes, two of which
//! (`C` and `F`, exposed as P1 and P2) achieve the optimal tradeoff
//! between rate and row count.
//!
//! Two further families are tracked by parameters only, for
//! comparisons; their arrays are not built here.

use crate::binom::{binomial, binomial_big, rank_subset, unrank_subset};
use crate::grid::{Entry, Pda};
use crate::incidence::CoordPerm;
use crate::{Int, Rational};
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), ConstructError> {
    if cond {
        Ok(())
    } else {
        Err(ConstructError::ParameterOutOfRange(msg()))
    }
}

/// Parameters of the subset-indexed base construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MnSpec {
    pub k: usize,
    pub t: usize,
}

impl MnSpec {
    /// Requires `0 < t < k`.
    pub fn new(k: usize, t: usize) -> Result<Self, ConstructError> {
        require(k >= 2 && t > 0 && t < k, || {
            format!("need 0 < t < k, got k={k}, t={t}")
        })?;
        Ok(MnSpec { k, t })
    }
}

/// Builds the `(t+1)`-regular `(k, C(k,t), C(k-1,t-1), C(k,t+1))`
/// array with `t` stars in every row.
pub fn build_mn(spec: MnSpec) -> Result<Pda, ConstructError> {
    let MnSpec { k, t } = spec;
    let f = binomial(k, t)
        .filter(|&f| f.checked_mul(k).is_some())
        .ok_or_else(|| ConstructError::ParameterOutOfRange(format!("C({k},{t}) overflows")))?;
    let mut rows = Vec::with_capacity(f);
    let mut subset = Vec::with_capacity(t + 1);
    for r in 0..f {
        let t_set = unrank_subset(k, t, r);
        let mut row = Vec::with_capacity(k);
        for u in 0..k {
            if t_set.contains(&u) {
                row.push(Entry::Star);
            } else {
                subset.clear();
                subset.extend_from_slice(&t_set);
                let pos = subset.partition_point(|&x| x < u);
                subset.insert(pos, u);
                row.push(Entry::Symbol(rank_subset(k, &subset) as u32));
            }
        }
        rows.push(row);
    }
    Ok(Pda::from_rows(rows).expect("constructed rows are uniform"))
}

/// Tiles `m` user groups of size `k` over the shared row set; group
/// `j` is a copy of [`build_mn`] with symbols offset by
/// `j * C(k, t+1)`. Yields an `(mk, C(k,t), C(k-1,t-1), m*C(k,t+1))`
/// array.
pub fn build_grouped_mn(k: usize, t: usize, m: usize) -> Result<Pda, ConstructError> {
    require(m >= 1, || format!("need at least one group, got m={m}"))?;
    let base = build_mn(MnSpec::new(k, t)?)?;
    let s_block = binomial(k, t + 1).unwrap() as u32;
    require((m as u128) * (s_block as u128) <= u32::MAX as u128, || {
        format!("alphabet overflow: m={m} groups of {s_block} symbols")
    })?;
    Ok(Pda::from_fn(base.rows(), m * k, |i, j| {
        let (group, u) = (j / k, j % k);
        match base.entry(i, u) {
            Entry::Star => Entry::Star,
            Entry::Symbol(s) => Entry::Symbol(s + group as u32 * s_block),
        }
    }))
}

/// The six conjugate-derived shapes of the base array.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variant {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Variant {
    pub fn all() -> [Variant; 6] {
        [
            Variant::A,
            Variant::B,
            Variant::C,
            Variant::D,
            Variant::E,
            Variant::F,
        ]
    }

    pub fn from_letter(c: char) -> Option<Variant> {
        match c.to_ascii_lowercase() {
            'a' => Some(Variant::A),
            'b' => Some(Variant::B),
            'c' => Some(Variant::C),
            'd' => Some(Variant::D),
            'e' => Some(Variant::E),
            'f' => Some(Variant::F),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Variant::A => 'a',
            Variant::B => 'b',
            Variant::C => 'c',
            Variant::D => 'd',
            Variant::E => 'e',
            Variant::F => 'f',
        }
    }

    /// The coordinate reordering applied to the base array's
    /// incidence set.
    pub fn perm(self) -> CoordPerm {
        let order = match self {
            Variant::A => [0, 1, 2],
            Variant::B => [2, 1, 0],
            Variant::C => [0, 2, 1],
            Variant::D => [1, 2, 0],
            Variant::E => [2, 0, 1],
            Variant::F => [1, 0, 2],
        };
        CoordPerm::new(order).unwrap()
    }

    /// Closed-form `(K, F, Z, S)` of this variant at `(k, t)`.
    pub fn params(self, k: usize, t: usize) -> Option<(usize, usize, usize, usize)> {
        let c_t = binomial(k, t)?;
        let c_t1 = binomial(k, t + 1)?;
        Some(match self {
            Variant::A => (k, c_t, binomial(k - 1, t - 1)?, c_t1),
            Variant::B => (k, c_t1, binomial(k - 1, t + 1)?, c_t),
            Variant::C => (c_t1, c_t, c_t - (t + 1), k),
            Variant::D => (c_t1, k, k - (t + 1), c_t),
            Variant::E => (c_t, c_t1, c_t1 - (k - t), k),
            Variant::F => (c_t, k, t, c_t1),
        })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Builds one of the six derived shapes: the base array's incidence
/// set is conjugated, materialized, and its symbols canonicalized.
/// Requires `0 < t < k - 1` so that every shape is proper.
pub fn build_variant(spec: MnSpec, which: Variant) -> Result<Pda, ConstructError> {
    require(spec.t < spec.k - 1, || {
        format!("variants need 0 < t < k-1, got k={}, t={}", spec.k, spec.t)
    })?;
    let base = build_mn(spec)?;
    let conj = base.to_incidence_set().conjugate(which.perm());
    let p = Pda::from_incidence_set(&conj).expect("conjugates of a valid array cannot conflict");
    Ok(p.canonicalize_symbols())
}

/// Variant `C`: the `(C(k,t+1), C(k,t), C(k,t)-(t+1), k)` array.
pub fn build_p1(k: usize, t: usize) -> Result<Pda, ConstructError> {
    build_variant(MnSpec::new(k, t)?, Variant::C)
}

/// Variant `F`: the `(C(k,t), k, t, C(k,t+1))` array.
pub fn build_p2(k: usize, t: usize) -> Result<Pda, ConstructError> {
    build_variant(MnSpec::new(k, t)?, Variant::F)
}

/// A scheme family tracked by its parameters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Mn {
        k: u64,
        t: u64,
    },
    Grouped {
        k: u64,
        t: u64,
        m: u64,
    },
    /// `(q(m+1), (q-1)q^m, (q-1)^2 q^(m-1), q^m)`; parameters only.
    Yan {
        q: u64,
        m: u64,
    },
    /// `(C(m,l) q^l, q^m (q-1)^l, (q^m - q^(m-l))(q-1)^l, q^m)`;
    /// parameters only.
    Shang {
        q: u64,
        m: u64,
        l: u64,
    },
    P1 {
        k: u64,
        t: u64,
    },
    P2 {
        k: u64,
        t: u64,
    },
    Variant {
        k: u64,
        t: u64,
        which: Variant,
    },
}

/// Closed-form `(K, F, Z, S)` of a family member, exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyParams {
    pub family: Family,
    pub k: Int,
    pub f: Int,
    pub z: Int,
    pub s: Int,
}

impl FamilyParams {
    pub fn rate(&self) -> Rational {
        Rational::new(self.s.clone(), self.f.clone())
    }

    pub fn memory_ratio(&self) -> Rational {
        Rational::new(self.z.clone(), self.f.clone())
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={},F={},Z={},S={})", self.k, self.f, self.z, self.s)
    }
}

/// Evaluates a family's parameter formulas with exact integers. No
/// array is built.
pub fn family_params(family: Family) -> Result<FamilyParams, ConstructError> {
    let pow = |b: u64, e: u64| Int::from(b).pow(e as u32);
    let (k, f, z, s) = match family {
        Family::Mn { k, t } => {
            require(t > 0 && t < k, || {
                format!("need 0 < t < k, got k={k}, t={t}")
            })?;
            (
                Int::from(k),
                binomial_big(k, t),
                binomial_big(k - 1, t - 1),
                binomial_big(k, t + 1),
            )
        }
        Family::Grouped { k, t, m } => {
            require(t > 0 && t < k && m >= 1, || {
                format!("need 0 < t < k and m >= 1, got k={k}, t={t}, m={m}")
            })?;
            (
                Int::from(m * k),
                binomial_big(k, t),
                binomial_big(k - 1, t - 1),
                Int::from(m) * binomial_big(k, t + 1),
            )
        }
        Family::Yan { q, m } => {
            require(q >= 2 && m >= 1, || {
                format!("need q >= 2 and m >= 1, got q={q}, m={m}")
            })?;
            let q1 = Int::from(q - 1);
            (
                Int::from(q * (m + 1)),
                q1.clone() * pow(q, m),
                q1.clone() * q1 * pow(q, m - 1),
                pow(q, m),
            )
        }
        Family::Shang { q, m, l } => {
            require(q >= 2 && l >= 1 && l <= m, || {
                format!("need q >= 2 and 1 <= l <= m, got q={q}, m={m}, l={l}")
            })?;
            let q1l = Int::from(q - 1).pow(l as u32);
            (
                binomial_big(m, l) * pow(q, l),
                pow(q, m) * q1l.clone(),
                (pow(q, m) - pow(q, m - l)) * q1l,
                pow(q, m),
            )
        }
        Family::P1 { k, t } => {
            return family_params(Family::Variant {
                k,
                t,
                which: Variant::C,
            })
            .map(|p| FamilyParams { family, ..p })
        }
        Family::P2 { k, t } => {
            return family_params(Family::Variant {
                k,
                t,
                which: Variant::F,
            })
            .map(|p| FamilyParams { family, ..p })
        }
        Family::Variant { k, t, which } => {
            require(t > 0 && t + 1 < k, || {
                format!("need 0 < t < k-1, got k={k}, t={t}")
            })?;
            let c_t = binomial_big(k, t);
            let c_t1 = binomial_big(k, t + 1);
            match which {
                Variant::A => (Int::from(k), c_t, binomial_big(k - 1, t - 1), c_t1),
                Variant::B => (Int::from(k), c_t1, binomial_big(k - 1, t + 1), c_t),
                Variant::C => (c_t1, c_t.clone(), c_t - Int::from(t + 1), Int::from(k)),
                Variant::D => (c_t1, Int::from(k), Int::from(k - (t + 1)), c_t),
                Variant::E => (c_t, c_t1.clone(), c_t1 - Int::from(k - t), Int::from(k)),
                Variant::F => (c_t, Int::from(k), Int::from(t), c_t1),
            }
        }
    };
    require(
        k >= Int::one() && f >= Int::one() && s >= Int::one() && z >= Int::one(),
        || format!("degenerate parameters (K={k}, F={f}, Z={z}, S={s})"),
    )?;
    require(z < f, || format!("need Z < F, got Z={z}, F={f}"))?;
    Ok(FamilyParams { family, k, f, z, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate;

    #[test]
    fn smallest_base_array() {
        // k=2, t=1: one star per column, symbol 0 on the anti-diagonal.
        let p = build_mn(MnSpec::new(2, 1).unwrap()).unwrap();
        assert_eq!(p.to_text(), "2 2\n* 0\n0 *\n");
    }

    #[test]
    fn base_array_4_2_parameters() {
        let p = build_mn(MnSpec::new(4, 2).unwrap()).unwrap();
        let v = validate(&p);
        let params = v.params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (4, 6, Some(3), 4));
        assert_eq!(params.g, Some(3));
        // t stars per row.
        assert!(v.occupancy.row_counts.iter().all(|&r| params.k - r == 2));
    }

    #[test]
    fn base_array_6_3_parameters() {
        let p = build_mn(MnSpec::new(6, 3).unwrap()).unwrap();
        let params = validate(&p).params.unwrap();
        assert_eq!(
            (params.k, params.f, params.z, params.s),
            (6, 20, Some(10), 15)
        );
        assert_eq!(params.g, Some(4));
    }

    #[test]
    fn base_array_is_first_appearance_canonical() {
        for (k, t) in [(4, 2), (5, 2), (6, 3), (5, 4)] {
            let p = build_mn(MnSpec::new(k, t).unwrap()).unwrap();
            assert_eq!(p.canonicalize_symbols(), p, "k={k}, t={t}");
        }
    }

    #[test]
    fn grouped_single_group_is_identity() {
        let spec = MnSpec::new(4, 2).unwrap();
        assert_eq!(build_grouped_mn(4, 2, 1).unwrap(), build_mn(spec).unwrap());
    }

    #[test]
    fn grouped_parameters() {
        let p = build_grouped_mn(4, 2, 2).unwrap();
        let params = validate(&p).params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (8, 6, Some(3), 8));

        let p = build_grouped_mn(3, 1, 3).unwrap();
        let params = validate(&p).params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (9, 3, Some(1), 9));
        assert_eq!(params.g, Some(2));
    }

    #[test]
    fn variant_a_equals_base() {
        for (k, t) in [(4, 2), (5, 2), (5, 3), (6, 4)] {
            let spec = MnSpec::new(k, t).unwrap();
            assert_eq!(
                build_variant(spec, Variant::A).unwrap(),
                build_mn(spec).unwrap()
            );
        }
    }

    #[test]
    fn variant_c_and_f_at_4_2() {
        let spec = MnSpec::new(4, 2).unwrap();
        let p1 = build_variant(spec, Variant::C).unwrap();
        let params = validate(&p1).params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (4, 6, Some(3), 4));

        let p2 = build_variant(spec, Variant::F).unwrap();
        let params = validate(&p2).params.unwrap();
        assert_eq!((params.k, params.f, params.z, params.s), (6, 4, Some(2), 4));

        assert_eq!(build_p1(4, 2).unwrap(), p1);
        assert_eq!(build_p2(4, 2).unwrap(), p2);
    }

    #[test]
    fn all_variants_validate_with_advertised_parameters() {
        for (k, t) in [(4, 2), (5, 3), (6, 2)] {
            let spec = MnSpec::new(k, t).unwrap();
            for which in Variant::all() {
                let p = build_variant(spec, which).unwrap();
                let params = validate(&p).params.unwrap();
                let (kk, ff, zz, ss) = which.params(k, t).unwrap();
                assert_eq!(
                    (params.k, params.f, params.z, params.s),
                    (kk, ff, Some(zz), ss),
                    "variant {which} at k={k}, t={t}"
                );
            }
        }
    }

    #[test]
    fn variants_reject_t_k_minus_1() {
        let spec = MnSpec::new(4, 3).unwrap();
        assert!(build_mn(spec).is_ok());
        assert!(matches!(
            build_variant(spec, Variant::C),
            Err(ConstructError::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn family_params_examples() {
        let yan = family_params(Family::Yan { q: 5, m: 3 }).unwrap();
        assert_eq!(
            (yan.k, yan.f, yan.z, yan.s),
            (
                Int::from(20),
                Int::from(500),
                Int::from(400),
                Int::from(125)
            )
        );

        let shang = family_params(Family::Shang { q: 3, m: 3, l: 2 }).unwrap();
        assert_eq!(
            (shang.k, shang.f, shang.z, shang.s),
            (Int::from(27), Int::from(108), Int::from(96), Int::from(27))
        );

        let p1 = family_params(Family::P1 { k: 7, t: 3 }).unwrap();
        assert_eq!(p1.rate(), crate::rat(7, 35));
        assert_eq!(
            (p1.k, p1.f, p1.z, p1.s),
            (Int::from(35), Int::from(35), Int::from(31), Int::from(7))
        );
    }

    #[test]
    fn family_params_match_built_arrays() {
        for (k, t) in [(4usize, 2usize), (5, 2), (5, 3)] {
            for which in Variant::all() {
                let fp = family_params(Family::Variant {
                    k: k as u64,
                    t: t as u64,
                    which,
                })
                .unwrap();
                let built = validate(&build_variant(MnSpec::new(k, t).unwrap(), which).unwrap())
                    .params
                    .unwrap();
                assert_eq!(fp.k, Int::from(built.k));
                assert_eq!(fp.f, Int::from(built.f));
                assert_eq!(fp.z, Int::from(built.z.unwrap()));
                assert_eq!(fp.s, Int::from(built.s));
            }
        }
    }

    #[test]
    fn variant_duality_parameter_identities() {
        // With t' = k - t - 1: a@t = b@t', c@t = e@t', f@t = d@t'.
        for k in 3u64..=9 {
            for t in 1..k - 1 {
                let tp = k - t - 1;
                let get = |which, t| {
                    let p = family_params(Family::Variant { k, t, which }).unwrap();
                    (p.k, p.f, p.z, p.s)
                };
                assert_eq!(get(Variant::A, t), get(Variant::B, tp));
                assert_eq!(get(Variant::C, t), get(Variant::E, tp));
                assert_eq!(get(Variant::F, t), get(Variant::D, tp));
            }
        }
    }

    #[test]
    fn parameter_range_errors() {
        assert!(MnSpec::new(4, 0).is_err());
        assert!(MnSpec::new(4, 4).is_err());
        assert!(build_grouped_mn(4, 2, 0).is_err());
        assert!(family_params(Family::Yan { q: 1, m: 3 }).is_err());
        assert!(family_params(Family::Shang { q: 3, m: 2, l: 3 }).is_err());
    }
}
