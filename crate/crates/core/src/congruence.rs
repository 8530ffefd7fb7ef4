//! Counting solutions of `x_0 + d x_1 + ... + d^{q-1} x_{q-1} = c (mod n)`
//! with every `x_i` in `[0, m)`, where `m = d m*` and `n = d^q n*`.
//!
//! Under the hypotheses `gcd(d, m*) = gcd(d, n*) = 1` and `n* | m*` the count
//! is `(m*)^q / n*` for every `c`. Three independent routes compute it:
//! the closed form, a flat enumeration of all `m^q` tuples, and the induction
//! on `q` that fixes `x_0` modulo `d` and recurses on `(c - x_0) / d` modulo `n / d`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numutil::{gcd, pow_checked};

/// Default cap on the number of tuples the enumeration may visit.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// A validated congruence instance. `c` is stored reduced modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma1Instance {
    d: u64,
    m_star: u64,
    n_star: u64,
    qvars: u32,
    c: u64,
    m: u64,
    n: u64,
}

impl Lemma1Instance {
    pub fn d(&self) -> u64 {
        self.d
    }
    pub fn m_star(&self) -> u64 {
        self.m_star
    }
    pub fn n_star(&self) -> u64 {
        self.n_star
    }
    pub fn qvars(&self) -> u32 {
        self.qvars
    }
    pub fn c(&self) -> u64 {
        self.c
    }
    /// `d * m*`, the exclusive upper bound on each variable.
    pub fn m(&self) -> u64 {
        self.m
    }
    /// `d^q * n*`, the modulus of the congruence.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Same instance with target `c mod n`.
    pub fn with_target(mut self, c: i64) -> Self {
        self.c = (c as i128).rem_euclid(self.n as i128) as u64;
        self
    }

    /// Number of tuples in `[0, m)^q`, or `None` past `u128`.
    pub fn tuple_count(&self) -> Option<u128> {
        (self.m as u128).checked_pow(self.qvars)
    }
}

/// Checks the hypotheses and builds an instance with target `c = 0`.
pub fn validate(d: u64, m_star: u64, n_star: u64, qvars: u32) -> Result<Lemma1Instance> {
    if d < 2 {
        return Err(Error::invalid(format!("d must be at least 2, got {d}")));
    }
    if m_star == 0 || n_star == 0 {
        return Err(Error::invalid("m* and n* must be positive"));
    }
    if qvars == 0 {
        return Err(Error::invalid("the number of variables q must be positive"));
    }
    for other in [m_star, n_star] {
        let g = gcd(d, other);
        if g != 1 {
            return Err(Error::CoprimalityViolated { d, other, gcd: g });
        }
    }
    if !m_star.is_multiple_of(n_star) {
        return Err(Error::DivisibilityViolated { n_star, m_star });
    }
    let m = d
        .checked_mul(m_star)
        .ok_or_else(|| Error::overflow(format!("m = {d} * {m_star}")))?;
    let n = pow_checked(d, qvars as u64)?
        .checked_mul(n_star)
        .ok_or_else(|| Error::overflow(format!("n = {d}^{qvars} * {n_star}")))?;
    Ok(Lemma1Instance {
        d,
        m_star,
        n_star,
        qvars,
        c: 0,
        m,
        n,
    })
}

/// `(m*)^q / n*`; exact since `n* | m*`.
pub fn count_closed_form(inst: &Lemma1Instance) -> Result<u64> {
    Ok(pow_checked(inst.m_star, inst.qvars as u64)? / inst.n_star)
}

fn check_budget(inst: &Lemma1Instance, budget: u64) -> Result<()> {
    match inst.tuple_count() {
        Some(t) if t <= budget as u128 => Ok(()),
        other => Err(Error::BudgetExceeded {
            needed: other.unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Weights `1, d, ..., d^{q-1}` reduced modulo `n`.
fn weights(inst: &Lemma1Instance) -> Vec<u64> {
    let n = inst.n as u128;
    let mut w = Vec::with_capacity(inst.qvars as usize);
    let mut cur = 1u128 % n;
    for _ in 0..inst.qvars {
        w.push(cur as u64);
        cur = cur * inst.d as u128 % n;
    }
    w
}

// Calls `visit` with the residue of every tuple in [0, m)^q.
fn walk(w: &[u64], m: u64, n: u64, acc: u64, visit: &mut impl FnMut(u64)) {
    let Some((&wi, rest)) = w.split_first() else {
        visit(acc);
        return;
    };
    let mut s = acc;
    for _ in 0..m {
        walk(rest, m, n, s, visit);
        s = ((s as u128 + wi as u128) % n as u128) as u64;
    }
}

/// Exhaustive count for the instance's target `c`, within [`ENUMERATION_BUDGET`].
pub fn count_enumerate(inst: &Lemma1Instance) -> Result<u64> {
    count_enumerate_with_budget(inst, ENUMERATION_BUDGET)
}

pub fn count_enumerate_with_budget(inst: &Lemma1Instance, budget: u64) -> Result<u64> {
    check_budget(inst, budget)?;
    let mut hits = 0u64;
    walk(&weights(inst), inst.m, inst.n, 0, &mut |r| {
        hits += u64::from(r == inst.c)
    });
    Ok(hits)
}

/// Exhaustive counts for every target at once: entry `c` is the count for `c`.
pub fn enumerate_all_targets(inst: &Lemma1Instance, budget: u64) -> Result<Vec<u64>> {
    check_budget(inst, budget)?;
    let n = usize::try_from(inst.n).map_err(|_| Error::overflow("histogram size"))?;
    let mut hist = vec![0u64; n];
    walk(&weights(inst), inst.m, inst.n, 0, &mut |r| hist[r as usize] += 1);
    Ok(hist)
}

/// Count by induction on the number of variables.
///
/// One variable: `x_0 = c (mod n)` has `m / n` solutions in `[0, m)`.
/// Otherwise `x_0 = c (mod d)` has `m*` choices in `[0, m)`; each one leaves
/// `x_1 + d x_2 + ... = (c - x_0) / d (mod n / d)`. Branches are summed, not
/// multiplied, so a wrong branch count would show up.
pub fn count_recursive(inst: &Lemma1Instance) -> Result<u64> {
    Ok(recurse(inst.d, inst.m, inst.n, inst.qvars, inst.c))
}

fn recurse(d: u64, m: u64, n: u64, qvars: u32, c: u64) -> u64 {
    if qvars == 1 {
        return m / n;
    }
    let n_next = n / d;
    (c % d..m)
        .step_by(d as usize)
        .map(|x0| {
            // (c - x0) mod n is a multiple of d because d | n and x0 = c (mod d)
            let diff = ((c as i128 - x0 as i128).rem_euclid(n as i128)) as u64;
            recurse(d, m, n_next, qvars - 1, diff / d)
        })
        .sum()
}

/// The three counts for one target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub instance: Lemma1Instance,
    pub closed_form: u64,
    pub enumerated: Option<u64>,
    pub recursive: u64,
    pub agree: bool,
}

/// Reports for target `c`, or for every `c` in `[0, n)` when `c` is `None`.
///
/// When `enumerate` is set, the enumeration runs once per call (all targets
/// share one pass) and a budget overrun is an error.
pub fn lemma1_reports(
    inst: &Lemma1Instance,
    c: Option<i64>,
    enumerate: bool,
    budget: u64,
) -> Result<Vec<Lemma1Report>> {
    let closed_form = count_closed_form(inst)?;
    let targets: Vec<Lemma1Instance> = match c {
        Some(c) => vec![inst.with_target(c)],
        None => (0..inst.n).map(|c| Lemma1Instance { c, ..*inst }).collect(),
    };
    let enumerated: Option<Vec<u64>> = match (enumerate, c) {
        (false, _) => None,
        (true, Some(_)) => Some(vec![count_enumerate_with_budget(&targets[0], budget)?]),
        (true, None) => Some(enumerate_all_targets(inst, budget)?),
    };
    targets
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let recursive = count_recursive(t)?;
            let enumerated = enumerated.as_ref().map(|e| e[i]);
            let agree = recursive == closed_form && enumerated.is_none_or(|e| e == closed_form);
            Ok(Lemma1Report {
                instance: *t,
                closed_form,
                enumerated,
                recursive,
                agree,
            })
        })
        .collect()
}
