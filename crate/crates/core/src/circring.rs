//! The ring of `n x n` circulant matrices over `Z_q`.
//!
//! A circulant matrix is a polynomial in the cyclic shift `S`, so an element
//! is stored as its coefficient vector modulo `x^n - 1`: coefficient `j`
//! multiplies `S^j`. Multiplication is cyclic convolution. Dense matrices only
//! appear in [`CirculantElem::to_dense`], which exists for cross-checking.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numutil::mul_mod;

/// Largest order [`CirculantElem::to_dense`] will expand by default.
pub const DENSE_BOUND: usize = 512;

/// An element `sum_j coeffs[j] * S^j` of the circulant ring of order `order` over `Z_modulus`.
///
/// Coefficients are always canonical, i.e. in `[0, modulus)`, so structural
/// equality is ring equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElem")]
pub struct CirculantElem {
    order: usize,
    modulus: u64,
    coeffs: Vec<u64>,
}

#[derive(Deserialize)]
struct RawElem {
    order: usize,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl TryFrom<RawElem> for CirculantElem {
    type Error = Error;

    fn try_from(raw: RawElem) -> Result<Self> {
        if raw.coeffs.len() != raw.order {
            return Err(Error::invalid(format!(
                "coeffs has {} entries, order is {}",
                raw.coeffs.len(),
                raw.order
            )));
        }
        if raw.coeffs.iter().any(|&c| c >= raw.modulus) {
            return Err(Error::invalid("coefficient not reduced modulo q"));
        }
        CirculantElem::from_coeffs(raw.modulus, raw.coeffs)
    }
}

fn check_params(n: usize, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("order must be at least 1"));
    }
    if q < 2 {
        return Err(Error::invalid(format!("modulus must be at least 2, got {q}")));
    }
    Ok(())
}

impl CirculantElem {
    /// Builds an element from raw coefficients, reducing each modulo `q`.
    pub fn from_coeffs(q: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_params(coeffs.len(), q)?;
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % q).collect();
        Ok(Self {
            order: coeffs.len(),
            modulus: q,
            coeffs,
        })
    }

    pub fn zero(n: usize, q: u64) -> Result<Self> {
        check_params(n, q)?;
        Ok(Self {
            order: n,
            modulus: q,
            coeffs: vec![0; n],
        })
    }

    pub fn identity(n: usize, q: u64) -> Result<Self> {
        shift_power(n, q, 0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.modulus != other.modulus {
            return Err(Error::ShapeMismatch {
                left_order: self.order,
                left_modulus: self.modulus,
                right_order: other.order,
                right_modulus: other.modulus,
            });
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> Self {
        Self {
            order: self.order,
            modulus: self.modulus,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let q = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&x, &y)| {
                // x, y < q so x + y < 2q; subtract instead of overflowing when q > 2^63
                let (s, carry) = x.overflowing_add(y);
                if carry || s >= q {
                    s.wrapping_sub(q)
                } else {
                    s
                }
            })
            .collect();
        Ok(self.with_coeffs(coeffs))
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        let q = self.modulus;
        let c = c % q;
        self.with_coeffs(self.coeffs.iter().map(|&x| mul_mod(c, x, q)).collect())
    }

    /// Additive inverse, computed as `(q - 1) * self` so residues stay canonical.
    pub fn neg(&self) -> Self {
        self.scalar_mul(self.modulus - 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Cyclic convolution: `result[k] = sum_{i + j = k mod n} a[i] * b[j] mod q`.
    ///
    /// Schoolbook, `O(n^2)`, reducing after every multiply-add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.order;
        let q = self.modulus;
        let a = &self.coeffs;
        let b = &other.coeffs;
        let mut out = vec![0u64; n];
        if q <= 1 << 32 {
            // residues fit in 32 bits, so a u64 accumulator cannot overflow:
            // (q-1)^2 + (q-1) < 2^64
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let (head, tail) = b.split_at(n - i);
                for (slot, &bj) in out[i..].iter_mut().zip(head) {
                    *slot = (*slot + ai * bj) % q;
                }
                for (slot, &bj) in out[..i].iter_mut().zip(tail) {
                    *slot = (*slot + ai * bj) % q;
                }
            }
        } else {
            let q128 = q as u128;
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (j, &bj) in b.iter().enumerate() {
                    let k = if i + j >= n { i + j - n } else { i + j };
                    out[k] = ((out[k] as u128 + ai as u128 * bj as u128) % q128) as u64;
                }
            }
        }
        Ok(self.with_coeffs(out))
    }

    /// `self^k` by square-and-multiply, `O(n^2 log k)`. `self^0` is the identity.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = identity_like(self);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Sum of the coefficients, i.e. the eigenvalue on the all-ones vector.
    pub fn row_sum(&self) -> u64 {
        let q = self.modulus as u128;
        (self.coeffs.iter().map(|&c| c as u128).sum::<u128>() % q) as u64
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<u64>>> {
        self.to_dense_bounded(DENSE_BOUND)
    }

    /// Row `i`, column `j` holds `coeffs[(j - i) mod n]`.
    pub fn to_dense_bounded(&self, bound: usize) -> Result<Vec<Vec<u64>>> {
        let n = self.order;
        if n > bound {
            return Err(Error::TooLarge { order: n, bound });
        }
        Ok((0..n)
            .map(|i| (0..n).map(|j| self.coeffs[(j + n - i) % n]).collect())
            .collect())
    }
}

fn identity_like(a: &CirculantElem) -> CirculantElem {
    let mut coeffs = vec![0; a.order];
    coeffs[0] = 1;
    a.with_coeffs(coeffs)
}

impl fmt::Display for CirculantElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match (c, j) {
                (_, 0) => c.to_string(),
                (1, _) => format!("S^{j}"),
                _ => format!("{c}*S^{j}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", terms.join(" + "))?;
        }
        write!(f, " (n={}, mod {})", self.order, self.modulus)
    }
}

/// `T_{n,m} = I + S + ... + S^{m-1}` over `Z_q`.
///
/// Coefficient `j` counts the `i` in `[0, m)` with `i = j mod n`.
pub fn geom_sum(n: usize, m: u64, q: u64) -> Result<CirculantElem> {
    check_params(n, q)?;
    if m == 0 {
        return Err(Error::invalid("m must be at least 1"));
    }
    let n64 = n as u64;
    let full = m / n64;
    let extra = m % n64;
    let coeffs = (0..n64)
        .map(|j| (full + u64::from(j < extra)) % q)
        .collect();
    Ok(CirculantElem {
        order: n,
        modulus: q,
        coeffs,
    })
}

/// `S^s`, a permutation matrix: one coefficient at `s mod n`.
pub fn shift_power(n: usize, q: u64, s: u64) -> Result<CirculantElem> {
    check_params(n, q)?;
    let mut coeffs = vec![0; n];
    coeffs[(s % n as u64) as usize] = 1;
    Ok(CirculantElem {
        order: n,
        modulus: q,
        coeffs,
    })
}

/// `sum_{0 <= c < n, step | c} S^c`.
pub fn multiples_indicator(n: usize, q: u64, step: u64) -> Result<CirculantElem> {
    check_params(n, q)?;
    if step == 0 || !(n as u64).is_multiple_of(step) {
        return Err(Error::invalid(format!("step {step} does not divide order {n}")));
    }
    let coeffs = (0..n as u64).map(|c| u64::from(c % step == 0)).collect();
    Ok(CirculantElem {
        order: n,
        modulus: q,
        coeffs,
    })
}
