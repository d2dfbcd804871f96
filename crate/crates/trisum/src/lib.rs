//! Mixed sums of squares and triangular numbers.
//!
//! This crate enumerates, counts, and constructs representations of natural
//! numbers by the mixed ternary forms `x² + y² + T_z`, `x² + T_y + T_z`,
//! `x² + y² + z²`, `x² + 8y² + 8z²`, and `x² + 4y² + 4z²`, where
//! `T_i = i(i+1)/2` is a triangular number. On top of the enumerators it
//! provides:
//!
//! * the Hurwitz closed form for the number of lattice points on the sphere
//!   `x² + y² + z² = n²` (odd `n`), cross-checkable against brute force,
//! * constructive decompositions producing self-validating certificates,
//!   e.g. `T_m = a² + b² + T_v` with `a, b` odd whenever `2m+1` is not a
//!   prime congruent to 3 mod 4,
//! * a representation-based criterion for primes congruent to 3 mod 4 and
//!   for odd numbers whose prime divisors are all congruent to 1 mod 4,
//! * exhaustive range verifiers for the theorem-level claims, with
//!   partition-independent parallel scanning.
//!
//! All arithmetic is exact 64-bit integer arithmetic with explicit overflow
//! detection; nothing here is probabilistic.

pub mod arith;
pub mod constructive;
pub mod criteria;
pub mod hurwitz;
pub mod reps;
pub mod verify;

pub use arith::{
    as_triangular, integer_sqrt, is_prime, is_sum_of_three_squares, odd_factorize, triangular,
    OddFactorization,
};
pub use constructive::{
    compose_four_squares, decompose_odd_square_two_tri, decompose_sq_odd_sq_tri,
    decompose_two_odd_squares_tri, split_tri_pair, Certificate, FourSquareSeed, Outcome,
};
pub use criteria::{
    all_divisors_1mod4_by_representation, classify_odd_sq_two_tri_exception,
    is_prime_3mod4_by_representation,
};
pub use hurwitz::{hurwitz_count, r_sum_expected};
pub use reps::{
    count_form, count_three_squares, enum_sq_sq_tri, enum_sq_tri_tri, r0, r1,
    three_square_decompositions, Form, Parity, ParityStructure, RepTriple,
};
pub use verify::{
    scan_two_odd_sq_tri_exceptions, verify, Counterexample, TheoremId, VerificationReport,
    KNOWN_TWO_ODD_SQ_TRI_EXCEPTIONS,
};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// 64-bit arithmetic would wrap; never silently ignored.
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    /// Input outside an operation's domain (e.g. even input to an odd-only map).
    #[error("{0}")]
    Domain(String),
    /// Input too large for the squaring guard; see [`max_guard`].
    #[error("input {value} exceeds the size guard {guard} (set TRISUM_MAX_GUARD to raise it)")]
    GuardExceeded { value: u64, guard: u64 },
    /// A condition the underlying mathematics guarantees failed to hold.
    /// Any occurrence is a bug and must be surfaced, never swallowed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default bound on any value that enters a squaring operation.
///
/// `3·10⁹` squared still fits in an `i64`/`u64`, so every intermediate the
/// library forms under this guard is exact.
pub const DEFAULT_MAX_GUARD: u64 = 3_000_000_000;

/// Current guard value: `TRISUM_MAX_GUARD` from the environment, or
/// [`DEFAULT_MAX_GUARD`] when unset or unparseable.
pub fn max_guard() -> u64 {
    std::env::var("TRISUM_MAX_GUARD")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_GUARD)
}

pub(crate) fn check_guard(value: u64) -> Result<()> {
    let guard = max_guard();
    if value > guard {
        Err(Error::GuardExceeded { value, guard })
    } else {
        Ok(())
    }
}
