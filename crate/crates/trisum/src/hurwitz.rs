//! Closed-form lattice-point count on the sphere `x² + y² + z² = n²` for
//! odd `n`, and the derived per-6 sum used by the parity-split identities.

use crate::arith::odd_factorize;
use crate::{check_guard, Error, Result};

/// `|{(x,y,z) ∈ ℤ³ : x² + y² + z² = n²}|` for odd `n ≥ 1`, via the
/// multiplicative closed form `6·n₀·∏(p^α + 2(p^α − 1)/(p − 1))` over the
/// prime divisors `p ≡ 3 (mod 4)` of `n`.
///
/// ```
/// use trisum::{hurwitz_count, count_three_squares};
///
/// assert_eq!(hurwitz_count(9)?, 102); // 9 = 3², factor 3² + 2·(1+3) = 17
/// assert_eq!(count_three_squares(81), 102);
/// # Ok::<(), trisum::Error>(())
/// ```
pub fn hurwitz_count(n: u64) -> Result<u64> {
    check_guard(n)?;
    let f = odd_factorize(n)?; // rejects even and zero input
    let overflow = || Error::Overflow("hurwitz count");
    let mut count = f.n0.checked_mul(6).ok_or_else(overflow)?;
    for &(p, alpha) in &f.factors3mod4 {
        // (p^α − 1)/(p − 1) evaluated as 1 + p + ... + p^{α−1}: exact by
        // construction, and keeps intermediates small.
        let mut pow = 1u64;
        let mut geometric = 0u64;
        for _ in 0..alpha {
            geometric = geometric.checked_add(pow).ok_or_else(overflow)?;
            pow = pow.checked_mul(p).ok_or_else(overflow)?;
        }
        let factor = pow
            .checked_add(geometric.checked_mul(2).ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
        count = count.checked_mul(factor).ok_or_else(overflow)?;
    }
    Ok(count)
}

/// `hurwitz_count(2m+1) / 6`, which equals `r₀(2T_m) + r₁(2T_m)`.
///
/// The division is asserted exact; a remainder would indicate a bug in the
/// closed form.
pub fn r_sum_expected(m: u64) -> Result<u64> {
    let n = m
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("2m+1"))?;
    let count = hurwitz_count(n)?;
    if count % 6 != 0 {
        return Err(Error::Invariant(format!(
            "hurwitz_count({n}) = {count} is not divisible by 6"
        )));
    }
    Ok(count / 6)
}
