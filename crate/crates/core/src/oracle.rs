//! Brute-force ground truth.
//!
//! The oracle multiplies by `T` one step at a time and inspects every
//! intermediate power. It shares nothing with the closed-form side except the
//! ring primitives in [`crate::circring`].

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::circring::{geom_sum, shift_power, CirculantElem};
use crate::error::{Error, Result};
use crate::nilpotence::{decide_zm, decide_zp, ZmVerdict};
use crate::numutil::{factorize, is_prime, pow_checked};

/// One closed-form prediction checked against the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: u64,
    pub m: u64,
    pub modulus: u64,
    pub oracle_index: Option<u64>,
    pub predicted_nilpotent: bool,
    pub predicted_index: Option<u64>,
    pub agree: bool,
    #[serde(rename = "elapsed_us", serialize_with = "as_micros")]
    pub elapsed: Duration,
}

fn as_micros<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros().min(u64::MAX as u128) as u64)
}

/// Smallest `k` in `[1, bound]` with `a^k = 0`, found by repeated multiplication.
pub fn min_nilpotent_index(a: &CirculantElem, bound: u64) -> Option<u64> {
    let mut power = a.clone();
    for k in 1..=bound {
        if power.is_zero() {
            return Some(k);
        }
        if k < bound {
            power = power.mul(a).expect("powers share the ring of a");
        }
    }
    None
}

fn order_of(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::overflow(format!("order {n}")))
}

/// Checks the `Z_p` verdict against the oracle with search bound `n`.
///
/// Over a field the index of a nilpotent `n x n` matrix never exceeds `n`.
pub fn verify_theorem1(n: u64, m: u64, p: u64) -> Result<OracleReport> {
    let start = Instant::now();
    let verdict = decide_zp(n, m, p)?;
    let t = geom_sum(order_of(n)?, m, p)?;
    let oracle_index = min_nilpotent_index(&t, n);
    let agree = oracle_index.is_some() == verdict.nilpotent && oracle_index == verdict.index;
    Ok(OracleReport {
        n,
        m,
        modulus: p,
        oracle_index,
        predicted_nilpotent: verdict.nilpotent,
        predicted_index: verdict.index,
        agree,
        elapsed: start.elapsed(),
    })
}

/// Search bound for the `Z_m` oracle that cannot miss a nilpotent `T`.
///
/// If `T^k = 0` mod `p` then `T^{ke} = 0` mod `p^e`, and over `Z_p` we have
/// `k <= n`, so `n * max_e` bounds the index over `Z_m`.
pub fn zm_search_bound(n: u64, m: u64) -> Result<u64> {
    let e = factorize(m)?.max_exponent() as u64;
    n.checked_mul(e)
        .ok_or_else(|| Error::overflow(format!("search bound {n} * {e}")))
}

/// Brute-force index of `T_{n,m}` over `Z_m`.
pub fn zm_exact_index(n: u64, m: u64) -> Result<Option<u64>> {
    let bound = zm_search_bound(n, m)?;
    let t = geom_sum(order_of(n)?, m, m)?;
    Ok(min_nilpotent_index(&t, bound))
}

/// [`decide_zm`] with `exact_index` filled in from the oracle.
pub fn decide_zm_with_index(n: u64, m: u64) -> Result<ZmVerdict> {
    let mut v = decide_zm(n, m)?;
    v.exact_index = zm_exact_index(n, m)?;
    Ok(v)
}

/// Checks the `Z_m` verdict against the oracle, and that a nilpotent index is at most `n`.
pub fn verify_corollary1(n: u64, m: u64) -> Result<OracleReport> {
    let start = Instant::now();
    let verdict = decide_zm(n, m)?;
    let oracle_index = zm_exact_index(n, m)?;
    let agree =
        oracle_index.is_some() == verdict.nilpotent && oracle_index.is_none_or(|k| k <= n);
    Ok(OracleReport {
        n,
        m,
        modulus: m,
        oracle_index,
        predicted_nilpotent: verdict.nilpotent,
        predicted_index: None,
        agree,
        elapsed: start.elapsed(),
    })
}

/// `x -> x^{p^k}` preserves sums and products of `a` and `b` over `Z_p`.
pub fn frobenius_check(a: &CirculantElem, b: &CirculantElem, k: u32) -> Result<bool> {
    let p = a.modulus();
    if !is_prime(p) {
        return Err(Error::invalid(format!(
            "Frobenius needs prime characteristic, modulus is {p}"
        )));
    }
    let pk = pow_checked(p, k as u64)?;
    let sum_ok = a.add(b)?.pow(pk) == a.pow(pk).add(&b.pow(pk))?;
    let prod_ok = a.mul(b)?.pow(pk) == a.pow(pk).mul(&b.pow(pk))?;
    Ok(sum_ok && prod_ok)
}

/// `T_{n,m} (I - S) = I - S^m` over `Z_q`.
pub fn geometric_identity_check(n: u64, m: u64, q: u64) -> Result<bool> {
    let order = order_of(n)?;
    let id = CirculantElem::identity(order, q)?;
    let s = shift_power(order, q, 1)?;
    let i_minus_s = id.add(&s.scalar_mul(q - 1))?;
    let lhs = geom_sum(order, m, q)?.mul(&i_minus_s)?;
    let rhs = id.add(&shift_power(order, q, m % n)?.scalar_mul(q - 1))?;
    Ok(lhs == rhs)
}
