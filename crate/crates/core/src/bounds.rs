//! Lower bounds on the symbol count `S` of a `(K, F, Z, S)` array, the
//! induced rate/subpacketization tradeoff, and Pareto-optimality
//! certificates.
//!
//! Two incomparable bounds are computed. The first is the counting
//! bound `S >= nF / (KF + F - n)` with `n = (F - Z)K`, tight exactly
//! when rows and symbols are uniformly occupied. The second peels one
//! row at a time: a densest row carries `a = ceil((F-Z)K / F)` symbols
//! which cannot recur below it, leaving an `(a, F-1, Z)` subproblem;
//! iterating `F - Z` times and summing the peeled counts gives an
//! integer bound that often beats the ceiling of the first.

use crate::binom::binomial_big;
use crate::grid::Pda;
use crate::validate::validate;
use crate::{Int, Rational};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("F * (M/N) = {0} is not an integer")]
    NonIntegralZ(String),
    #[error("non-integral parameter: {0}")]
    NonIntegralParameter(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

fn check_kfz(k: u64, f: u64, z: u64) -> Result<(), BoundError> {
    if k == 0 {
        return Err(BoundError::DegenerateInput("K must be at least 1".into()));
    }
    if z == 0 || z >= f {
        return Err(BoundError::DegenerateInput(format!(
            "need 0 < Z < F so the array has symbols, got F={f}, Z={z}"
        )));
    }
    Ok(())
}

/// The counting bound `nF / (KF + F - n)` with `n = (F - Z)K`, exact.
pub fn bound_first(k: u64, f: u64, z: u64) -> Result<Rational, BoundError> {
    check_kfz(k, f, z)?;
    let (k, f, z) = (Int::from(k), Int::from(f), Int::from(z));
    let n = (&f - &z) * &k;
    Ok(Rational::new(&n * &f, &k * &f + &f - &n))
}

/// Whether the counting bound can be met with equality at these
/// parameters: the bound value, `n / bound` and `n / F` must all be
/// integers (uniform symbol and row occupancy).
pub fn bound_first_equality_feasible(k: u64, f: u64, z: u64) -> Result<bool, BoundError> {
    let b = bound_first(k, f, z)?;
    if !b.is_integer() {
        return Ok(false);
    }
    let n = Int::from((f - z) * k);
    let s = b.to_integer();
    Ok((&n % &s).is_zero() && (&n % Int::from(f)).is_zero())
}

/// Whether a concrete array meets the counting bound with equality:
/// it must validate with C2, have uniform row occupancy `n/F`, uniform
/// symbol occupancy `n/S`, and `S` equal to the bound.
pub fn first_bound_equality_holds(p: &Pda) -> bool {
    let v = validate(p);
    let Some(params) = v.params else {
        return false;
    };
    let (Some(z), true) = (params.z, params.n > 0) else {
        return false;
    };
    if z == 0 {
        return false;
    }
    let uniform = v.occupancy.regularity().is_some() && v.occupancy.uniform_row_count().is_some();
    let b = bound_first(params.k as u64, params.f as u64, z as u64)
        .expect("validated params are non-degenerate");
    uniform && b == Rational::from_integer(Int::from(params.s))
}

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// The row-peeling bound: `a0 = ceil((F-Z)K / F)`, then
/// `a_{r+1} = ceil(a_r (F-Z-1-r) / (F-1-r))`, summed over the `F - Z`
/// terms. Exact integer arithmetic throughout.
pub fn bound_second(k: u64, f: u64, z: u64) -> Result<u64, BoundError> {
    check_kfz(k, f, z)?;
    let (k, f, z) = (k as u128, f as u128, z as u128);
    let mut a = ceil_div((f - z) * k, f);
    let mut total = a;
    for r in 0..(f - z - 1) {
        a = ceil_div(a * (f - z - 1 - r), f - 1 - r);
        total += a;
    }
    u64::try_from(total).map_err(|_| BoundError::ParameterOutOfRange("bound exceeds u64".into()))
}

/// The peeled terms of [`bound_second`], for reporting.
pub fn bound_second_terms(k: u64, f: u64, z: u64) -> Result<Vec<u64>, BoundError> {
    check_kfz(k, f, z)?;
    let (k, f, z) = (k as u128, f as u128, z as u128);
    let mut a = ceil_div((f - z) * k, f);
    let mut terms = vec![a as u64];
    for r in 0..(f - z - 1) {
        a = ceil_div(a * (f - z - 1 - r), f - 1 - r);
        terms.push(a as u64);
    }
    Ok(terms)
}

/// The rate bound `R >= K(1 - M/N) / (F * M/N + 1)` for a fixed user
/// count and memory ratio.
#[derive(Clone, PartialEq, Debug)]
pub struct RateTradeoffBound {
    pub bound: Rational,
    /// The bound is known not to be tight when `F > K`.
    pub loose_when_f_exceeds_k: bool,
}

pub fn bound_rate_tradeoff(
    k: u64,
    f: u64,
    memory_ratio: &Rational,
) -> Result<RateTradeoffBound, BoundError> {
    if k == 0 || f == 0 {
        return Err(BoundError::DegenerateInput(
            "K and F must be at least 1".into(),
        ));
    }
    let one = Rational::one();
    if memory_ratio <= &Rational::zero() || memory_ratio >= &one {
        return Err(BoundError::DegenerateInput(format!(
            "memory ratio must lie strictly between 0 and 1, got {memory_ratio}"
        )));
    }
    let f_rat = Rational::from_integer(Int::from(f));
    let z = &f_rat * memory_ratio;
    if !z.is_integer() {
        return Err(BoundError::NonIntegralZ(z.to_string()));
    }
    let k_rat = Rational::from_integer(Int::from(k));
    let bound = &k_rat * (&one - memory_ratio) / (z + one);
    Ok(RateTradeoffBound {
        bound,
        loose_when_f_exceeds_k: f > k,
    })
}

/// Minimal row count `C(K, KZ/F)` for an array meeting the counting
/// bound with equality (which forces `(KZ/F + 1)`-regularity).
pub fn bound_rows_for_regular(k: u64, f: u64, z: u64) -> Result<Int, BoundError> {
    check_kfz(k, f, z)?;
    if !(k * z).is_multiple_of(f) {
        return Err(BoundError::NonIntegralParameter(format!(
            "KZ/F = {k}*{z}/{f} is not an integer"
        )));
    }
    Ok(binomial_big(k, k * z / f))
}

/// Whether a candidate `F` meets the row-count bound.
pub fn row_bound_met(k: u64, f: u64, z: u64) -> Result<bool, BoundError> {
    Ok(Int::from(f) >= bound_rows_for_regular(k, f, z)?)
}

/// Both bounds plus the tradeoff view, for one `(K, F, Z)`.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundReport {
    pub k: u64,
    pub f: u64,
    pub z: u64,
    pub n: u64,
    pub bound1: Rational,
    pub bound1_ceiling: u64,
    pub bound2: u64,
    pub rate_bound: Rational,
    /// Known achievable `S`, when these parameters belong to the base
    /// subset construction.
    pub achievable_s: Option<u64>,
}

impl BoundReport {
    /// Largest of the two lower bounds.
    pub fn best(&self) -> u64 {
        self.bound1_ceiling.max(self.bound2)
    }
}

pub fn bound_report(k: u64, f: u64, z: u64) -> Result<BoundReport, BoundError> {
    let bound1 = bound_first(k, f, z)?;
    let bound1_ceiling = bound1
        .ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| BoundError::ParameterOutOfRange("bound exceeds u64".into()))?;
    let bound2 = bound_second(k, f, z)?;
    let rate_bound = bound_rate_tradeoff(k, f, &Rational::new(Int::from(z), Int::from(f)))?.bound;
    let achievable_s = mn_achievable_s(k, f, z);
    Ok(BoundReport {
        k,
        f,
        z,
        n: (f - z) * k,
        bound1,
        bound1_ceiling,
        bound2,
        rate_bound,
        achievable_s,
    })
}

/// `Some(C(K, t+1))` when `(K, F, Z)` are exactly the base
/// construction's parameters for `t = KZ/F`.
fn mn_achievable_s(k: u64, f: u64, z: u64) -> Option<u64> {
    if !(k * z).is_multiple_of(f) {
        return None;
    }
    let t = k * z / f;
    if t == 0 || t >= k {
        return None;
    }
    if binomial_big(k, t) == Int::from(f) && binomial_big(k - 1, t - 1) == Int::from(z) {
        binomial_big(k, t + 1).to_u64()
    } else {
        None
    }
}

/// One competing row count below `F = C(k, t)` in the P1 certificate.
#[derive(Clone, PartialEq, Debug)]
pub struct ForwardCase {
    pub f_prime: u64,
    pub z_prime: u64,
    /// `ceil((F'-Z')K/F') + (F'-Z'-1)`: the peeling bound relaxed to
    /// one exact term plus unit terms.
    pub chain_floor: u64,
    /// Full [`bound_second`] at `(K, F', Z')`.
    pub recursive_floor: u64,
    pub rate_floor: Rational,
    /// `rate_floor > k / C(k,t)` strictly.
    pub exceeds_rate: bool,
}

/// One step of the converse direction: for `F' <= C(k,t)` with
/// `x = F'(t+1)/C(k,t)` integral, any symbol count `K'` making the
/// conjugate side consistent with the counting bound satisfies
/// `K' >= x + k - t - 1`, while a rate below `k/C(k,t)` would force
/// `K' < kx/(t+1)`. The certificate checks that the integer interval
/// between the two is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct ConverseCase {
    pub f_prime: u64,
    pub x: u64,
    /// `x + k - t - 1`.
    pub lower: u64,
    /// `k * x / (t + 1)`, exact.
    pub upper: Rational,
    pub region_empty: bool,
}

/// Machine-checked certificate that the variant-C array at `(k, t)` is
/// Pareto-optimal: every smaller row count at the same user count and
/// memory ratio forces a strictly larger rate (forward cases), and no
/// array at most as many rows can beat its rate (converse cases).
#[derive(Clone, PartialEq, Debug)]
pub struct P1ParetoCertificate {
    pub k: u64,
    pub t: u64,
    /// `k / C(k, t)`, the rate being certified.
    pub rate: Rational,
    pub forward: Vec<ForwardCase>,
    pub converse: Vec<ConverseCase>,
}

impl P1ParetoCertificate {
    pub fn holds(&self) -> bool {
        self.forward.iter().all(|c| c.exceeds_rate) && self.converse.iter().all(|c| c.region_empty)
    }
}

pub fn pareto_check_p1(k: u64, t: u64) -> Result<P1ParetoCertificate, BoundError> {
    if t == 0 || t + 1 >= k {
        return Err(BoundError::ParameterOutOfRange(format!(
            "certificate needs 0 < t < k-1, got k={k}, t={t}"
        )));
    }
    let c = binomial_big(k, t)
        .to_u64()
        .ok_or_else(|| BoundError::ParameterOutOfRange("C(k,t) exceeds u64".into()))?;
    let big_k = binomial_big(k, t + 1); // columns of the variant-C array
    let rate = Rational::new(Int::from(k), Int::from(c));

    let mut forward = Vec::new();
    let mut converse = Vec::new();
    for f_prime in 1..=c {
        if !(f_prime as u128 * (t + 1) as u128).is_multiple_of(c as u128) {
            continue;
        }
        let x = f_prime * (t + 1) / c; // symbols per column
        let z_prime = f_prime - x;

        if f_prime < c && z_prime > 0 {
            // ceil((F'-Z')K/F') evaluates to exactly k - t here.
            let first_term = Rational::new(Int::from(x) * &big_k, Int::from(f_prime))
                .ceil()
                .to_integer();
            debug_assert_eq!(first_term, Int::from(k - t));
            let chain_floor = (k - t) + (x - 1);
            let recursive_floor = big_k
                .to_u64()
                .and_then(|kb| bound_second(kb, f_prime, z_prime).ok())
                .unwrap_or(chain_floor);
            let floor = chain_floor.max(recursive_floor);
            let rate_floor = Rational::new(Int::from(floor), Int::from(f_prime));
            forward.push(ForwardCase {
                f_prime,
                z_prime,
                chain_floor,
                recursive_floor,
                rate_floor: rate_floor.clone(),
                exceeds_rate: rate_floor > rate,
            });
        }

        let lower = x + k - t - 1;
        let upper = Rational::new(Int::from(k) * Int::from(x), Int::from(t + 1));
        let region_empty = Rational::from_integer(Int::from(lower)) >= upper;
        converse.push(ConverseCase {
            f_prime,
            x,
            lower,
            upper,
            region_empty,
        });
    }
    Ok(P1ParetoCertificate {
        k,
        t,
        rate,
        forward,
        converse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_mn, MnSpec};
    use crate::rat;

    #[test]
    fn first_bound_values() {
        assert_eq!(bound_first(4, 6, 3).unwrap(), rat(4, 1));
        assert_eq!(bound_first(2, 2, 1).unwrap(), rat(1, 1));
        // 18*8 / (48 + 8 - 18) = 144/38 = 72/19, ceiling 4, strictly
        // below the true optimum 5.
        let b = bound_first(6, 8, 5).unwrap();
        assert_eq!(b, rat(144, 38));
        assert_eq!(b.ceil().to_integer(), Int::from(4));
    }

    #[test]
    fn first_bound_rejects_degenerate() {
        assert!(matches!(
            bound_first(4, 6, 6),
            Err(BoundError::DegenerateInput(_))
        ));
        assert!(matches!(
            bound_first(4, 6, 0),
            Err(BoundError::DegenerateInput(_))
        ));
        assert!(matches!(
            bound_first(0, 6, 3),
            Err(BoundError::DegenerateInput(_))
        ));
    }

    #[test]
    fn second_bound_values() {
        // Terms 3, 1, 1.
        assert_eq!(bound_second_terms(6, 8, 5).unwrap(), vec![3, 1, 1]);
        assert_eq!(bound_second(6, 8, 5).unwrap(), 5);
        // Terms 2, 1, 1.
        assert_eq!(bound_second(4, 6, 3).unwrap(), 4);
        assert_eq!(bound_second(1, 2, 1).unwrap(), 1);
        assert_eq!(bound_second(2, 10, 1).unwrap(), 17);
    }

    #[test]
    fn bounds_are_incomparable() {
        // The peeling bound wins at (6,8,5)...
        let r = bound_report(6, 8, 5).unwrap();
        assert_eq!(r.bound1_ceiling, 4);
        assert_eq!(r.bound2, 5);
        assert_eq!(r.best(), 5);
        // ...and the counting bound wins at (3, 5, 2).
        let r = bound_report(3, 5, 2).unwrap();
        assert_eq!(r.bound1, crate::rat(45, 11));
        assert_eq!(r.bound1_ceiling, 5);
        assert_eq!(r.bound2, 4);
        assert_eq!(r.best(), 5);
    }

    #[test]
    fn second_bound_dominates_simple_floor() {
        for k in 1..20u64 {
            for f in 2..20u64 {
                for z in 1..f {
                    let b2 = bound_second(k, f, z).unwrap();
                    let floor = Rational::new(Int::from((f - z) * k), Int::from(z + 1))
                        .ceil()
                        .to_integer();
                    assert!(Int::from(b2) >= floor, "K={k} F={f} Z={z}");
                }
            }
        }
    }

    #[test]
    fn base_construction_meets_first_bound_exactly() {
        for k in 2..=10u64 {
            for t in 1..k {
                let f = binomial_big(k, t).to_u64().unwrap();
                let z = binomial_big(k - 1, t - 1).to_u64().unwrap();
                let s = binomial_big(k, t + 1);
                let b = bound_first(k, f, z).unwrap();
                assert_eq!(b, Rational::from_integer(s));
                assert!(bound_first_equality_feasible(k, f, z).unwrap());
            }
        }
        let p = build_mn(MnSpec::new(4, 2).unwrap()).unwrap();
        assert!(first_bound_equality_holds(&p));
        // The (6,8,5,5) sample is optimal but not bound1-tight.
        assert!(!first_bound_equality_holds(
            &crate::samples::optimal_6_8_5_5()
        ));
    }

    #[test]
    fn rate_tradeoff_values() {
        let b = bound_rate_tradeoff(6, 4, &rat(1, 2)).unwrap();
        assert_eq!(b.bound, rat(1, 1));
        assert!(!b.loose_when_f_exceeds_k);

        let b = bound_rate_tradeoff(4, 6, &rat(1, 2)).unwrap();
        assert_eq!(b.bound, rat(1, 2));
        assert!(b.loose_when_f_exceeds_k);

        assert!(matches!(
            bound_rate_tradeoff(4, 6, &rat(1, 4)),
            Err(BoundError::NonIntegralZ(_))
        ));
        assert!(matches!(
            bound_rate_tradeoff(4, 6, &rat(3, 2)),
            Err(BoundError::DegenerateInput(_))
        ));
    }

    #[test]
    fn rate_tradeoff_meets_variant_f_rate() {
        for k in 3..=8u64 {
            for t in 1..k - 1 {
                let users = binomial_big(k, t).to_u64().unwrap();
                let b = bound_rate_tradeoff(users, k, &Rational::new(Int::from(t), Int::from(k)))
                    .unwrap();
                let rate = Rational::new(binomial_big(k, t + 1), Int::from(k));
                assert_eq!(b.bound, rate, "k={k} t={t}");
            }
        }
    }

    #[test]
    fn row_bound_values() {
        assert_eq!(bound_rows_for_regular(4, 6, 3).unwrap(), Int::from(6));
        assert!(row_bound_met(4, 6, 3).unwrap());
        assert_eq!(bound_rows_for_regular(2, 2, 1).unwrap(), Int::from(2));
        assert_eq!(bound_rows_for_regular(6, 20, 10).unwrap(), Int::from(20));
        assert!(matches!(
            bound_rows_for_regular(4, 6, 4),
            Err(BoundError::NonIntegralParameter(_))
        ));
    }

    #[test]
    fn report_detects_achievable_base_parameters() {
        assert_eq!(bound_report(4, 6, 3).unwrap().achievable_s, Some(4));
        assert_eq!(bound_report(6, 8, 5).unwrap().achievable_s, None);
        let r = bound_report(6, 20, 10).unwrap();
        assert_eq!(r.achievable_s, Some(15));
        assert!(r.best() <= 15);
    }

    #[test]
    fn pareto_certificate_4_2() {
        let cert = pareto_check_p1(4, 2).unwrap();
        assert_eq!(cert.rate, rat(4, 6));
        // Competing row counts with integral star budget: F' = 2, 4.
        let fs: Vec<u64> = cert.forward.iter().map(|c| c.f_prime).collect();
        assert_eq!(fs, vec![2, 4]);
        assert_eq!(cert.forward[0].rate_floor, rat(1, 1));
        assert_eq!(cert.forward[1].rate_floor, rat(3, 4));
        assert!(cert.holds());
    }

    #[test]
    fn pareto_certificate_5_3() {
        let cert = pareto_check_p1(5, 3).unwrap();
        assert_eq!(cert.rate, rat(1, 2));
        assert!(cert.holds());
        assert!(cert.forward.iter().all(|c| c.rate_floor > rat(1, 2)));
    }

    #[test]
    fn pareto_certificate_rejects_degenerate_t() {
        assert!(pareto_check_p1(4, 3).is_err());
        assert!(pareto_check_p1(4, 0).is_err());
    }
}
