//! Nilpotence of the circulant geometric sum `T_{n,m} = I + S + ... + S^{m-1}`
//! over `Z_p` and `Z_m`, with exact arithmetic throughout.
//!
//! - [`numutil`]: valuations, factorization, primality, checked powers
//! - [`circring`]: the circulant ring as polynomials modulo `x^n - 1`
//! - [`nilpotence`]: closed-form decisions, index formula, proof identities
//! - [`congruence`]: solution counts for `x_0 + d x_1 + ... = c (mod n)`
//! - [`oracle`]: brute-force ground truth for all of the above
//! - [`cli`]: the `circnil` command-line front end

pub mod circring;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod nilpotence;
pub mod numutil;
pub mod oracle;

pub use circring::{geom_sum, multiples_indicator, shift_power, CirculantElem};
pub use error::{Error, Result};
pub use nilpotence::{
    annihilation_check, decide_zm, decide_zm_via_primes, decide_zp, index_expansion,
    index_formula, necessity_checks, witness_nonvanishing, ZmClause, ZmVerdict, ZpVerdict,
};
pub use oracle::{min_nilpotent_index, verify_corollary1, verify_theorem1, OracleReport};
