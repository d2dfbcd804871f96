//! Decision procedures built on representation counting alone: a primality
//! criterion for p ≡ 3 (mod 4), a test that every prime divisor is
//! ≡ 1 (mod 4), and the classification of numbers that are not a sum of an
//! odd square and two triangular numbers. Trial-division answers serve only
//! as test oracles; the shipped verdicts come from the counts.

use crate::arith::{as_triangular, odd_factorize};
use crate::reps::{count_form, Form};
use crate::{check_guard, Error, Result};

fn require_odd_above_one(value: u64, name: &str) -> Result<()> {
    if value <= 1 || value % 2 == 0 {
        return Err(Error::Domain(format!(
            "{name} must be an odd integer > 1, got {value}"
        )));
    }
    check_guard(value)
}

/// True iff `p² = x² + 8(y² + z²)` has no all-odd solution, which holds
/// exactly when `p` is a prime congruent to 3 mod 4.
pub fn is_prime_3mod4_by_representation(p: u64) -> Result<bool> {
    require_odd_above_one(p, "p")?;
    Ok(count_form(p * p, Form::X2Plus8Y2Plus8Z2, true)? == 0)
}

/// True iff `n² = x² + 4(y² + z²)` has no all-odd solution, which holds
/// exactly when every prime divisor of `n` is congruent to 1 mod 4.
pub fn all_divisors_1mod4_by_representation(n: u64) -> Result<bool> {
    require_odd_above_one(n, "n")?;
    Ok(count_form(n * n, Form::X2Plus4Y2Plus4Z2, true)? == 0)
}

/// Identifies the numbers that are *not* a sum of an odd square and two
/// triangular numbers: exactly those `n = 2T_m` with `m ≥ 1` and `2m+1`
/// free of prime divisors ≡ 3 (mod 4). Returns that `m` when `n` is such
/// an exception, `None` otherwise.
pub fn classify_odd_sq_two_tri_exception(n: u64) -> Option<u64> {
    if n == 0 || n % 2 != 0 {
        return None;
    }
    let m = as_triangular(n / 2)?;
    if m < 1 {
        return None;
    }
    let p = 2 * (m as u64) + 1;
    let factorization = odd_factorize(p).ok()?;
    (!factorization.has_3mod4_divisor()).then_some(m as u64)
}
