//! Tradeoff ratios between scheme families at matched user counts and
//! memory ratios.
//!
//! Every ratio is computed twice — from the quotient of the raw
//! `(K, F, Z, S)` parameter formulas and from its closed form — and
//! the two are asserted equal as exact rationals.

use crate::binom::binomial_big;
use crate::construct::{family_params, Family, FamilyParams};
use crate::{Int, Rational};
use num_traits::{One, ToPrimitive};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("no matching parameters: {0}")]
    NoMatchingParameters(String),
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CompareError> {
    if cond {
        Ok(())
    } else {
        Err(CompareError::ParameterOutOfRange(msg()))
    }
}

/// One family-vs-family comparison at matched parameters.
#[derive(Clone, PartialEq, Debug)]
pub struct ComparisonRow {
    pub label: &'static str,
    /// Source parameters, e.g. `[("k", 6), ("t", 2), ("m", 3), ("q", 5)]`.
    pub source: Vec<(&'static str, u64)>,
    pub left: FamilyParams,
    pub right: FamilyParams,
    /// `K_left / K_right`.
    pub ratio_k: Rational,
    /// `(M/N)_left / (M/N)_right`.
    pub ratio_m: Rational,
    /// `F_left / F_right`.
    pub ratio_f: Rational,
    /// `R_left / R_right`.
    pub ratio_r: Rational,
    /// For scans: left dominates right (`K >= K'`, `M/N <= M'/N'`,
    /// `F < F'`, `R < R'`).
    pub dominates: Option<bool>,
    pub notes: Vec<String>,
}

fn ratios(left: &FamilyParams, right: &FamilyParams) -> (Rational, Rational, Rational, Rational) {
    (
        Rational::new(left.k.clone(), right.k.clone()),
        left.memory_ratio() / right.memory_ratio(),
        Rational::new(left.f.clone(), right.f.clone()),
        left.rate() / right.rate(),
    )
}

fn mn_at(users: &Int, memory_ratio: &Rational) -> Result<FamilyParams, CompareError> {
    let t = Rational::from_integer(users.clone()) * memory_ratio;
    require(t.is_integer(), || {
        format!("K * M/N = {t} is not an integer")
    })?;
    let t = t.to_integer();
    let users_u = users
        .to_u64()
        .ok_or_else(|| CompareError::ParameterOutOfRange("user count exceeds u64".into()))?;
    let t_u = t
        .to_u64()
        .filter(|&t| t > 0 && t < users_u)
        .ok_or_else(|| CompareError::ParameterOutOfRange(format!("need 0 < KM/N < K, got {t}")))?;
    family_params(Family::Mn { k: users_u, t: t_u })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))
}

/// Variant-C array vs the base construction at the same `K` and `M/N`:
/// `F` shrinks by `C(k,t) / C(C(k,t+1), k-t)` while `R` grows by
/// `k/(t+1) - k/C(k,t) + k/((k-t) C(k,t))`.
pub fn compare_p1_vs_mn(k: u64, t: u64) -> Result<ComparisonRow, CompareError> {
    require(t > 0 && t + 1 < k, || {
        format!("need 0 < t < k-1, got k={k}, t={t}")
    })?;
    let p1 = family_params(Family::P1 { k, t })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let mn = mn_at(&p1.k.clone(), &p1.memory_ratio())?;
    let (ratio_k, ratio_m, ratio_f, ratio_r) = ratios(&p1, &mn);
    assert!(
        ratio_k.is_one() && ratio_m.is_one(),
        "mismatched comparison point"
    );

    let c = binomial_big(k, t);
    let kr = |n: u64| Rational::from_integer(Int::from(n));
    let closed_r = kr(k) / kr(t + 1) - Rational::new(Int::from(k), c.clone())
        + Rational::new(Int::from(k), Int::from(k - t) * c);
    assert_eq!(
        ratio_r, closed_r,
        "closed-form rate ratio disagrees with direct quotient"
    );

    Ok(ComparisonRow {
        label: "P1 vs MN",
        source: vec![("k", k), ("t", t)],
        left: p1,
        right: mn,
        ratio_k,
        ratio_m,
        ratio_f,
        ratio_r,
        dominates: None,
        notes: Vec::new(),
    })
}

/// Variant-F array vs the base construction at the same `K` and `M/N`:
/// `F` shrinks by `k / C(C(k,t), C(k-1,t-1))` while `R` grows by
/// `(C(k-1,t-1) + 1) / (t + 1)`.
pub fn compare_p2_vs_mn(k: u64, t: u64) -> Result<ComparisonRow, CompareError> {
    require(t > 0 && t + 1 < k, || {
        format!("need 0 < t < k-1, got k={k}, t={t}")
    })?;
    let p2 = family_params(Family::P2 { k, t })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let mn = mn_at(&p2.k.clone(), &p2.memory_ratio())?;
    let (ratio_k, ratio_m, ratio_f, ratio_r) = ratios(&p2, &mn);
    assert!(
        ratio_k.is_one() && ratio_m.is_one(),
        "mismatched comparison point"
    );

    let closed_r = Rational::new(binomial_big(k - 1, t - 1) + 1, Int::from(t + 1));
    assert_eq!(
        ratio_r, closed_r,
        "closed-form rate ratio disagrees with direct quotient"
    );

    Ok(ComparisonRow {
        label: "P2 vs MN",
        source: vec![("k", k), ("t", t)],
        left: p2,
        right: mn,
        ratio_k,
        ratio_m,
        ratio_f,
        ratio_r,
        dominates: None,
        notes: Vec::new(),
    })
}

/// Variant-F array vs grouping at the same `K = C(k,t)`, `M/N = t/k`
/// and rate: equating rates forces group size `k`, and then
/// `F` shrinks by `k / C(k,t)`.
pub fn compare_p2_vs_grouped(k: u64, t: u64) -> Result<ComparisonRow, CompareError> {
    require(t > 0 && t < k, || {
        format!("need 0 < t < k, got k={k}, t={t}")
    })?;
    let c = binomial_big(k, t);
    // Variant-F parameters, valid for the whole 0 < t < k range here.
    let p2 = FamilyParams {
        family: Family::P2 { k, t },
        k: c.clone(),
        f: Int::from(k),
        z: Int::from(t),
        s: binomial_big(k, t + 1),
    };

    // A grouped scheme over K = C(k,t) users with group size K' has
    // rate (K'(1 - t/k) / (1 + K' t/k)) * K/K'. Setting it equal to
    // the variant-F rate C(k,t+1)/k and solving gives K' = k.
    let solved = Rational::new(Int::from(k) * Int::from(t + 1) - Int::from(k), Int::from(t));
    assert!(solved.is_integer() && solved.to_integer() == Int::from(k));
    let group = family_params(Family::Mn { k, t })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;

    let ratio_f = Rational::new(Int::from(k), c.clone());
    assert_eq!(ratio_f, Rational::new(p2.f.clone(), group.f.clone()));

    let mut notes = vec![format!("rate equality forces group size {k}")];
    let groups = Rational::new(c.clone(), Int::from(k));
    if !groups.is_integer() {
        notes.push(format!(
            "group count C({k},{t})/{k} = {groups} is fractional; the ratio is formal"
        ));
    }
    Ok(ComparisonRow {
        label: "P2 vs grouped MN",
        source: vec![("k", k), ("t", t)],
        left: p2,
        right: group,
        ratio_k: Rational::one(),
        ratio_m: Rational::one(),
        ratio_f,
        ratio_r: Rational::one(),
        dominates: None,
        notes,
    })
}

/// Variant-C array vs the `(q(m+1), (q-1)q^m, ...)` family at the same
/// `K` and `M/N`, which forces `q = C(k,t)/(t+1)` and `m = k-t-1`.
/// Fails with `NoMatchingParameters` when that `q` is not an integer.
pub fn compare_p1_vs_yan(k: u64, t: u64) -> Result<ComparisonRow, CompareError> {
    require(t > 0 && t + 1 < k, || {
        format!("need 0 < t < k-1, got k={k}, t={t}")
    })?;
    let c = binomial_big(k, t);
    let q = Rational::new(c.clone(), Int::from(t + 1));
    if !q.is_integer() {
        return Err(CompareError::NoMatchingParameters(format!(
            "C({k},{t})/(t+1) = {q} is not an integer"
        )));
    }
    let q = q
        .to_integer()
        .to_u64()
        .ok_or_else(|| CompareError::ParameterOutOfRange("q exceeds u64".into()))?;
    if q < 2 {
        return Err(CompareError::NoMatchingParameters(format!("q = {q} < 2")));
    }
    let m = k - t - 1;
    let p1 = family_params(Family::P1 { k, t })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let yan = family_params(Family::Yan { q, m })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let (ratio_k, ratio_m, ratio_f, ratio_r) = ratios(&p1, &yan);
    assert!(
        ratio_k.is_one() && ratio_m.is_one(),
        "q, m do not match the comparison point"
    );

    let kr = |n: u64| Rational::from_integer(Int::from(n));
    let closed_r = kr(k) / kr(t + 1) - Rational::new(Int::from(k), c);
    assert_eq!(
        ratio_r, closed_r,
        "closed-form rate ratio disagrees with direct quotient"
    );

    Ok(ComparisonRow {
        label: "P1 vs Yan",
        source: vec![("k", k), ("t", t), ("m", m), ("q", q)],
        left: p1,
        right: yan,
        ratio_k,
        ratio_m,
        ratio_f,
        ratio_r,
        dominates: None,
        notes: Vec::new(),
    })
}

/// Variant-C array vs the `(C(m,l)q^l, q^m(q-1)^l, ...)` family. All
/// four ratios are reported and the row is flagged when the left side
/// dominates: at least as many users, no more memory, fewer rows and a
/// lower rate.
pub fn compare_p1_vs_shang(
    k: u64,
    t: u64,
    m: u64,
    q: u64,
    l: u64,
) -> Result<ComparisonRow, CompareError> {
    require(t > 0 && t + 1 < k, || {
        format!("need 0 < t < k-1, got k={k}, t={t}")
    })?;
    let p1 = family_params(Family::P1 { k, t })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let shang = family_params(Family::Shang { q, m, l })
        .map_err(|e| CompareError::ParameterOutOfRange(e.to_string()))?;
    let (ratio_k, ratio_m, ratio_f, ratio_r) = ratios(&p1, &shang);

    let c = binomial_big(k, t);
    let closed_r = Rational::new(Int::from(k) * Int::from(q - 1).pow(l as u32), c);
    assert_eq!(
        ratio_r, closed_r,
        "closed-form rate ratio disagrees with direct quotient"
    );

    let dominates = ratio_k >= Rational::one()
        && p1.memory_ratio() <= shang.memory_ratio()
        && ratio_f < Rational::one()
        && ratio_r < Rational::one();
    Ok(ComparisonRow {
        label: "P1 vs Shang",
        source: vec![("k", k), ("t", t), ("m", m), ("q", q), ("l", l)],
        left: p1,
        right: shang,
        ratio_k,
        ratio_m,
        ratio_f,
        ratio_r,
        dominates: Some(dominates),
        notes: Vec::new(),
    })
}

/// Ranges for [`search_dominating_params`]; all bounds inclusive.
#[derive(Clone, Debug)]
pub struct ScanRanges {
    pub k: (u64, u64),
    /// Defaults to `1..=k-2` per `k`.
    pub t: Option<(u64, u64)>,
    pub m: (u64, u64),
    /// Defaults to `1..=m` per `m`.
    pub l: Option<(u64, u64)>,
    pub q: (u64, u64),
}

/// Exhaustively scans the ranges and returns the rows where the
/// variant-C array dominates, in lexicographic source order.
pub fn search_dominating_params(scan: &ScanRanges) -> Vec<ComparisonRow> {
    let mut out = Vec::new();
    for k in scan.k.0..=scan.k.1 {
        if k < 3 {
            continue;
        }
        let (t_lo, t_hi) = scan.t.unwrap_or((1, k - 2));
        for t in t_lo.max(1)..=t_hi.min(k.saturating_sub(2)) {
            for m in scan.m.0.max(1)..=scan.m.1 {
                let (l_lo, l_hi) = scan.l.unwrap_or((1, m));
                for l in l_lo.max(1)..=l_hi.min(m) {
                    for q in scan.q.0.max(2)..=scan.q.1 {
                        if let Ok(row) = compare_p1_vs_shang(k, t, m, q, l) {
                            if row.dominates == Some(true) {
                                out.push(row);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Closed-form envelopes on `F` and `R` ratios for the `t = k - 6`
/// families: `36(k-5)/(k(k-6))` and `36k/((k-5)(k-6))`. Both fall
/// strictly below 1 exactly when `k >= 47`.
pub fn k_minus_6_envelopes(k: u64) -> (Rational, Rational) {
    let (k5, k6) = (Int::from(k - 5), Int::from(k - 6));
    let f_env = Rational::new(Int::from(36) * &k5, Int::from(k) * &k6);
    let r_env = Rational::new(Int::from(36 * k), k5 * k6);
    (f_env, r_env)
}
