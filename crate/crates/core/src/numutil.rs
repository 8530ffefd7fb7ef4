//! Integer helpers: p-adic valuations, trial-division factorization,
//! deterministic 64-bit primality, and checked powers.
//!
//! Everything here is checked. An out-of-range value comes back as
//! [`Error::Overflow`], never as a wrapped result.

use serde::Serialize;

use crate::error::{Error, Result};

/// `x = p^exponent * cofactor` with `p` not dividing `cofactor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Valuation {
    pub exponent: u32,
    pub cofactor: u64,
}

/// Prime factorization as `(prime, exponent)` pairs, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn distinct_primes(&self) -> usize {
        self.pairs.len()
    }

    pub fn max_exponent(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> Result<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            let pe = pow_checked(p, e as u64)?;
            acc.checked_mul(pe)
                .ok_or_else(|| Error::overflow("factorization product"))
        })
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// First twelve primes: a complete deterministic witness set below 3.3e24.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// Splits `x` into `p^e * c` with `p` not dividing `c`.
pub fn p_adic_valuation(x: u64, p: u64) -> Result<Valuation> {
    ensure_prime(p)?;
    if x == 0 {
        return Err(Error::invalid("valuation of 0 is undefined"));
    }
    let mut exponent = 0;
    let mut cofactor = x;
    while cofactor.is_multiple_of(p) {
        cofactor /= p;
        exponent += 1;
    }
    Ok(Valuation { exponent, cofactor })
}

/// Trial division up to `sqrt(q)`.
pub fn factorize(q: u64) -> Result<Factorization> {
    if q < 2 {
        return Err(Error::invalid(format!("cannot factor {q}; need q >= 2")));
    }
    let mut pairs = Vec::new();
    let mut rest = q;
    let mut push = |rest: &mut u64, f: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(f) {
            *rest /= f;
            e += 1;
        }
        if e > 0 {
            pairs.push((f, e));
        }
    };
    push(&mut rest, 2);
    let mut f = 3u64;
    // f <= rest / f avoids squaring past u64::MAX
    while f <= rest / f {
        push(&mut rest, f);
        f += 2;
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

pub fn ceil_div(a: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::invalid("ceil_div by zero"));
    }
    Ok(a.div_ceil(b))
}

pub fn pow_checked(base: u64, exp: u64) -> Result<u64> {
    // 0^e and 1^e never overflow, even for huge e
    if base <= 1 {
        return Ok(if exp == 0 { 1 } else { base });
    }
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .ok_or_else(|| Error::overflow(format!("{base}^{exp}")))
}
