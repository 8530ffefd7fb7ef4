//! Nilpotence of `T_{n,m} = I + S + ... + S^{m-1}`.
//!
//! Over `Z_p`, `T_{n,m}` is nilpotent exactly when `p | m` and the `p`-free
//! part of `n` divides the `p`-free part of `m`; the index is then
//! `ceil(p^a / (p^b - 1))` where `a = v_p(n)`, `b = v_p(m)`.
//!
//! Over `Z_m` two routes are provided: the direct classification
//! ([`decide_zm`]) and the reduction to every prime factor of `m`
//! ([`decide_zm_via_primes`]). They must always agree.
//!
//! The remaining functions turn the steps of the sufficiency/necessity
//! argument into executable checks: the explicit value of `T^{index-1}`,
//! the annihilation of that value by `T`, and the row-sum and permutation
//! facts used to rule out non-nilpotent parameters.

use serde::Serialize;

use crate::circring::{geom_sum, multiples_indicator, shift_power, CirculantElem};
use crate::error::{Error, Result};
use crate::numutil::{
    ceil_div, ensure_prime, factorize, mul_mod, p_adic_valuation, pow_checked, pow_mod,
};
use crate::oracle::min_nilpotent_index;

/// Outcome of the `Z_p` decision for `T_{n,m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZpVerdict {
    pub n: u64,
    pub m: u64,
    pub p: u64,
    /// `v_p(n)`
    pub a: u32,
    /// `v_p(m)`
    pub b: u32,
    pub n_star: u64,
    pub m_star: u64,
    pub nilpotent: bool,
    pub index: Option<u64>,
    /// `a / b`, present iff nilpotent.
    #[serde(skip)]
    pub qdiv: Option<u32>,
    /// `a % b`, present iff nilpotent.
    #[serde(skip)]
    pub rdiv: Option<u32>,
}

/// Which branch of the `Z_m` classification applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZmClause {
    /// `m = p^e` and `n = p^f` (including `f = 0`).
    SamePrimePowers,
    /// `m` has at least two distinct prime factors and `n | m`.
    MultiPrimeDivides,
    NotNilpotent,
}

impl ZmClause {
    pub fn as_str(self) -> &'static str {
        match self {
            ZmClause::SamePrimePowers => "SamePrimePowers",
            ZmClause::MultiPrimeDivides => "MultiPrimeDivides",
            ZmClause::NotNilpotent => "NotNilpotent",
        }
    }
}

/// Outcome of the `Z_m` decision for `T_{n,m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZmVerdict {
    pub n: u64,
    pub m: u64,
    pub nilpotent: bool,
    pub clause: ZmClause,
    pub per_prime: Vec<ZpVerdict>,
    /// Exact index over `Z_m`, filled in on demand by the brute-force oracle.
    pub exact_index: Option<u64>,
}

/// `index_formula` split along `a = b * qdiv + rdiv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexExpansion {
    pub qdiv: u32,
    pub rdiv: u32,
    /// `p^rdiv * (1 + p^b + ... + p^{b(qdiv-1)}) + 1`
    pub value: u64,
}

/// `T^{index-1}` next to its predicted closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    /// `T^{index-1}` computed by repeated squaring.
    pub power: CirculantElem,
    /// `((m*)^qdiv / n* mod p) * sum_{p^rdiv | c} S^c`
    pub witness: CirculantElem,
    pub scalar: u64,
    pub matches: bool,
}

/// Executable form of the argument that rules out non-nilpotent parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessityReport {
    pub n: u64,
    pub m: u64,
    pub p: u64,
    /// Largest `k` for which `row_sum(T^k) = m^k mod p` was checked.
    pub powers_checked: u32,
    pub row_sums_ok: bool,
    /// Brute-force index over `Z_p` with search bound `n`.
    pub oracle_index: Option<u64>,
    pub p_divides_m: bool,
    /// Smallest `k <= v_p(n) + 1` with `S^{m p^k} = I`, i.e. `n | m p^k`.
    pub divisibility_exponent: Option<u32>,
    /// Row sums hold, and an oracle-nilpotent `T` satisfies both necessary conditions.
    pub consistent: bool,
}

const NECESSITY_POWERS: u32 = 8;

fn positive(name: &str, x: u64) -> Result<()> {
    if x == 0 {
        return Err(Error::invalid(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn order_of(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::overflow(format!("order {n}")))
}

/// `ceil(p^a / (p^b - 1))`.
pub fn index_formula(a: u32, b: u32, p: u64) -> Result<u64> {
    ensure_prime(p)?;
    if b == 0 {
        return Err(Error::invalid("index formula needs b >= 1 (p must divide m)"));
    }
    let num = pow_checked(p, a as u64)?;
    let den = pow_checked(p, b as u64)? - 1;
    ceil_div(num, den)
}

/// Evaluates the index through the expansion `p^r (1 + p^b + ... + p^{b(q-1)}) + 1`.
///
/// Requires `a >= b`; below that `T` is already zero and there is nothing to expand.
pub fn index_expansion(a: u32, b: u32, p: u64) -> Result<IndexExpansion> {
    ensure_prime(p)?;
    if b == 0 || a < b {
        return Err(Error::invalid(format!(
            "index expansion needs 1 <= b <= a, got a={a}, b={b}"
        )));
    }
    let qdiv = a / b;
    let rdiv = a % b;
    let pb = pow_checked(p, b as u64)?;
    let mut series = 0u64;
    let mut term = 1u64;
    for j in 0..qdiv {
        series = series
            .checked_add(term)
            .ok_or_else(|| Error::overflow("index expansion series"))?;
        if j + 1 < qdiv {
            term = term
                .checked_mul(pb)
                .ok_or_else(|| Error::overflow("index expansion term"))?;
        }
    }
    let value = pow_checked(p, rdiv as u64)?
        .checked_mul(series)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::overflow("index expansion value"))?;
    Ok(IndexExpansion { qdiv, rdiv, value })
}

pub fn decide_zp(n: u64, m: u64, p: u64) -> Result<ZpVerdict> {
    ensure_prime(p)?;
    positive("n", n)?;
    positive("m", m)?;
    let vn = p_adic_valuation(n, p)?;
    let vm = p_adic_valuation(m, p)?;
    // n | m p^k for some k  <=>  n* | m*
    let nilpotent = vm.exponent >= 1 && vm.cofactor % vn.cofactor == 0;
    let (index, qdiv, rdiv) = if nilpotent {
        let index = index_formula(vn.exponent, vm.exponent, p)?;
        (
            Some(index),
            Some(vn.exponent / vm.exponent),
            Some(vn.exponent % vm.exponent),
        )
    } else {
        (None, None, None)
    };
    Ok(ZpVerdict {
        n,
        m,
        p,
        a: vn.exponent,
        b: vm.exponent,
        n_star: vn.cofactor,
        m_star: vm.cofactor,
        nilpotent,
        index,
        qdiv,
        rdiv,
    })
}

fn per_prime_verdicts(n: u64, m: u64) -> Result<Vec<ZpVerdict>> {
    factorize(m)?
        .primes()
        .map(|p| decide_zp(n, m, p))
        .collect()
}

fn check_zm_args(n: u64, m: u64) -> Result<()> {
    positive("n", n)?;
    if m < 2 {
        return Err(Error::invalid(format!("modulus m must be at least 2, got {m}")));
    }
    Ok(())
}

/// Classifies `T_{n,m}` over `Z_m` directly from the shapes of `n` and `m`.
pub fn decide_zm(n: u64, m: u64) -> Result<ZmVerdict> {
    check_zm_args(n, m)?;
    let fm = factorize(m)?;
    let clause = if fm.distinct_primes() == 1 {
        let p = fm.pairs[0].0;
        if p_adic_valuation(n, p)?.cofactor == 1 {
            ZmClause::SamePrimePowers
        } else {
            ZmClause::NotNilpotent
        }
    } else if m.is_multiple_of(n) {
        ZmClause::MultiPrimeDivides
    } else {
        ZmClause::NotNilpotent
    };
    Ok(ZmVerdict {
        n,
        m,
        nilpotent: clause != ZmClause::NotNilpotent,
        clause,
        per_prime: per_prime_verdicts(n, m)?,
        exact_index: None,
    })
}

/// Nilpotent over `Z_m` iff nilpotent over `Z_p` for every prime `p | m`.
pub fn decide_zm_via_primes(n: u64, m: u64) -> Result<ZmVerdict> {
    check_zm_args(n, m)?;
    let per_prime = per_prime_verdicts(n, m)?;
    let nilpotent = per_prime.iter().all(|v| v.nilpotent);
    let clause = match (nilpotent, per_prime.len()) {
        (false, _) => ZmClause::NotNilpotent,
        (true, 1) => ZmClause::SamePrimePowers,
        (true, _) => ZmClause::MultiPrimeDivides,
    };
    Ok(ZmVerdict {
        n,
        m,
        nilpotent,
        clause,
        per_prime,
        exact_index: None,
    })
}

// Nilpotent verdict with a >= b, or the reason the proof identities do not apply.
fn expandable_verdict(n: u64, m: u64, p: u64) -> Result<ZpVerdict> {
    let v = decide_zp(n, m, p)?;
    if !v.nilpotent {
        return Err(Error::invalid(format!(
            "T_{{{n},{m}}} is not nilpotent over Z_{p}"
        )));
    }
    if v.a < v.b {
        return Err(Error::invalid(format!(
            "a = {} < b = {}: T_{{{n},{m}}} is already zero over Z_{p}",
            v.a, v.b
        )));
    }
    Ok(v)
}

/// Compares `T^{index-1}` with the scaled indicator of multiples of `p^rdiv`.
///
/// The scalar is `(m*)^qdiv / n*`, divided exactly over the integers
/// (`n* | m*`) before reducing mod `p`; it is a unit, so the witness is nonzero.
pub fn witness_nonvanishing(n: u64, m: u64, p: u64) -> Result<WitnessCheck> {
    let v = expandable_verdict(n, m, p)?;
    let index = v.index.expect("nilpotent verdict carries an index");
    let qdiv = v.qdiv.expect("nilpotent verdict carries qdiv") as u64;
    let rdiv = v.rdiv.expect("nilpotent verdict carries rdiv") as u64;
    let order = order_of(n)?;

    let power = geom_sum(order, m, p)?.pow(index - 1);

    // (m*)^q / n* = (m*/n*) * (m*)^(q-1)
    let scalar = mul_mod((v.m_star / v.n_star) % p, pow_mod(v.m_star, qdiv - 1, p), p);
    let witness = multiples_indicator(order, p, pow_checked(p, rdiv)?)?.scalar_mul(scalar);
    let matches = power == witness;
    Ok(WitnessCheck {
        power,
        witness,
        scalar,
        matches,
    })
}

/// True iff `(sum_{p^rdiv | c} S^c) * T_{n,m}` vanishes over `Z_p`.
pub fn annihilation_check(n: u64, m: u64, p: u64) -> Result<bool> {
    let v = expandable_verdict(n, m, p)?;
    let rdiv = v.rdiv.expect("nilpotent verdict carries rdiv") as u64;
    let order = order_of(n)?;
    let indicator = multiples_indicator(order, p, pow_checked(p, rdiv)?)?;
    Ok(indicator.mul(&geom_sum(order, m, p)?)?.is_zero())
}

pub fn necessity_checks(n: u64, m: u64, p: u64) -> Result<NecessityReport> {
    ensure_prime(p)?;
    positive("n", n)?;
    positive("m", m)?;
    let order = order_of(n)?;
    let t = geom_sum(order, m, p)?;

    // T xi = m xi on the all-ones vector, so the row sum of T^k is m^k
    let mut row_sums_ok = true;
    let mut power = t.clone();
    for k in 1..=NECESSITY_POWERS {
        row_sums_ok &= power.row_sum() == pow_mod(m, k as u64, p);
        power = power.mul(&t)?;
    }

    let oracle_index = min_nilpotent_index(&t, n);
    let p_divides_m = m.is_multiple_of(p);

    // I - S^{m p^k} = 0 exactly when the permutation S^{m p^k} is the identity
    let max_k = p_adic_valuation(n, p)?.exponent + 1;
    let divisibility_exponent = (0..=max_k).find(|&k| {
        let shift = mul_mod(m % n, pow_mod(p, k as u64, n), n);
        shift_power(order, p, shift)
            .map(|s| s.is_identity())
            .unwrap_or(false)
    });

    let consistent =
        row_sums_ok && (oracle_index.is_none() || (p_divides_m && divisibility_exponent.is_some()));
    Ok(NecessityReport {
        n,
        m,
        p,
        powers_checked: NECESSITY_POWERS,
        row_sums_ok,
        oracle_index,
        p_divides_m,
        divisibility_exponent,
        consistent,
    })
}
