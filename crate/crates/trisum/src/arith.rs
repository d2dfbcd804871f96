//! Exact integer primitives: triangular numbers, integer square roots,
//! deterministic trial-division factorization and primality, and the
//! three-square admissibility test.

use crate::{Error, Result};

/// Canonical (nonnegative) index of a triangular number: `T_i = T_{-i-1}`,
/// so every index maps to `max(i, -i-1) ≥ 0`.
pub fn canonical_tri_index(i: i64) -> i64 {
    if i >= 0 {
        i
    } else {
        -(i + 1)
    }
}

/// `T_i = i(i+1)/2`. Accepts any signed index; the value is always ≥ 0.
///
/// Errors with [`Error::Overflow`] when the value does not fit in a `u64`.
pub fn triangular(i: i64) -> Result<u64> {
    let c = canonical_tri_index(i) as u128;
    u64::try_from(c * (c + 1) / 2).map_err(|_| Error::Overflow("triangular number"))
}

/// Inverse of [`triangular`]: the canonical nonnegative index `z` with
/// `T_z = n`, or `None` when `8n+1` is not a perfect square.
pub fn as_triangular(n: u64) -> Option<i64> {
    if let Some(d) = n.checked_mul(8).and_then(|v| v.checked_add(1)) {
        let r = d.isqrt();
        return (r * r == d).then(|| ((r - 1) / 2) as i64);
    }
    // 8n+1 exceeds u64 only near u64::MAX; fall back to u128.
    let d = 8 * n as u128 + 1;
    let r = d.isqrt();
    (r * r == d).then(|| ((r - 1) / 2) as i64)
}

/// True iff `n` is a triangular number `T_z` for some integer `z`.
pub fn is_triangular(n: u64) -> bool {
    as_triangular(n).is_some()
}

/// Floor square root together with an exactness flag: `root = ⌊√n⌋` and
/// `exact ⇔ root² = n`.
pub fn integer_sqrt(n: u64) -> (u64, bool) {
    let r = n.isqrt();
    (r, r * r == n)
}

/// `√n` when `n` is a perfect square, `None` otherwise.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let (r, exact) = integer_sqrt(n);
    exact.then_some(r)
}

/// `x²` as a `u64`; safe for every `x` whose square fits (|x| ≤ ⌊√u64::MAX⌋).
pub(crate) fn sq(x: i64) -> u64 {
    let a = x.unsigned_abs();
    a * a
}

/// Deterministic primality by trial division up to `√n`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An odd number split as `n = n0 · ∏ p^α` over its prime divisors
/// `p ≡ 3 (mod 4)`; every prime divisor of the cofactor `n0` is ≡ 1 (mod 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddFactorization {
    pub n: u64,
    /// Part free of primes ≡ 3 (mod 4); may be 1.
    pub n0: u64,
    /// `(p, α)` pairs with `p ≡ 3 (mod 4)` prime, ascending in `p`.
    pub factors3mod4: Vec<(u64, u32)>,
}

impl OddFactorization {
    /// Reassembles `n0 · ∏ p^α`; equals `self.n` by construction.
    pub fn product(&self) -> u64 {
        self.factors3mod4
            .iter()
            .fold(self.n0, |acc, &(p, a)| acc * p.pow(a))
    }

    pub fn has_3mod4_divisor(&self) -> bool {
        !self.factors3mod4.is_empty()
    }
}

/// Factors an odd `n ≥ 1` by trial division, separating out the primes
/// congruent to 3 mod 4.
pub fn odd_factorize(n: u64) -> Result<OddFactorization> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Domain(format!(
            "odd_factorize requires an odd n >= 1, got {n}"
        )));
    }
    let mut rest = n;
    let mut n0 = 1u64;
    let mut factors3mod4 = Vec::new();
    let mut record = |p: u64, alpha: u32| {
        if p % 4 == 3 {
            factors3mod4.push((p, alpha));
        } else {
            n0 *= p.pow(alpha);
        }
    };
    let mut d = 3;
    while d <= rest / d {
        if rest % d == 0 {
            let mut alpha = 0;
            while rest % d == 0 {
                rest /= d;
                alpha += 1;
            }
            record(d, alpha);
        }
        d += 2;
    }
    if rest > 1 {
        record(rest, 1);
    }
    Ok(OddFactorization {
        n,
        n0,
        factors3mod4,
    })
}

/// Gauss–Legendre admissibility: true iff `n` is not of the form `4^k(8l+7)`,
/// i.e. iff `n` is a sum of three integer squares.
pub fn is_sum_of_three_squares(mut n: u64) -> bool {
    while n > 0 && n % 4 == 0 {
        n /= 4;
    }
    n % 8 != 7
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular(0).unwrap(), 0);
        assert_eq!(triangular(3).unwrap(), 6);
        assert_eq!(triangular(-4).unwrap(), 6);
        assert_eq!(
            triangular(i64::MAX),
            Err(Error::Overflow("triangular number"))
        );
        // canonical index of i64::MIN is i64::MAX, so this overflows too
        assert_eq!(
            triangular(i64::MIN),
            Err(Error::Overflow("triangular number"))
        );
    }

    #[test]
    fn triangular_symmetry_and_square_identity() {
        for i in -300i64..=300 {
            let t = triangular(i).unwrap();
            assert_eq!(t, triangular(-i - 1).unwrap());
            let d = 8 * t + 1;
            let r = d.isqrt();
            assert_eq!(r * r, d, "8T_{i}+1 must be a perfect square");
            assert_eq!(r % 2, 1);
            assert_eq!(r as i64, 2 * canonical_tri_index(i) + 1);
        }
    }

    #[test]
    fn as_triangular_examples_and_roundtrip() {
        assert_eq!(as_triangular(6), Some(3));
        assert_eq!(as_triangular(5), None);
        assert_eq!(as_triangular(0), Some(0));
        for i in -200i64..=200 {
            let t = triangular(i).unwrap();
            assert_eq!(as_triangular(t), Some(canonical_tri_index(i)));
        }
    }

    #[test]
    fn integer_sqrt_examples() {
        assert_eq!(integer_sqrt(49), (7, true));
        assert_eq!(integer_sqrt(50), (7, false));
        assert_eq!(integer_sqrt(0), (0, true));
        assert_eq!(exact_sqrt(u64::MAX), None);
        for n in 0u64..=10_000 {
            let (r, exact) = integer_sqrt(n);
            assert!(r * r <= n && n < (r + 1) * (r + 1));
            assert_eq!(exact, r * r == n);
        }
    }

    #[test]
    fn odd_factorize_examples() {
        let f = odd_factorize(1).unwrap();
        assert_eq!((f.n0, f.factors3mod4.as_slice()), (1, &[][..]));

        let f = odd_factorize(45).unwrap();
        assert_eq!((f.n0, f.factors3mod4.as_slice()), (5, &[(3, 2)][..]));

        // 21 = 3·7 and both primes are ≡ 3 (mod 4), so n0 = 1.
        let f = odd_factorize(21).unwrap();
        assert_eq!(
            (f.n0, f.factors3mod4.as_slice()),
            (1, &[(3, 1), (7, 1)][..])
        );

        assert!(odd_factorize(0).is_err());
        assert!(odd_factorize(42).is_err());
    }

    #[test]
    fn odd_factorize_invariants() {
        for n in (1u64..=20_001).step_by(2) {
            let f = odd_factorize(n).unwrap();
            assert_eq!(f.product(), n, "reassembly failed for {n}");
            for &(p, alpha) in &f.factors3mod4 {
                assert!(is_prime(p) && p % 4 == 3 && alpha > 0);
            }
            // every prime divisor of n0 is ≡ 1 (mod 4)
            let mut rest = f.n0;
            let mut d = 3;
            while d <= rest / d {
                while rest % d == 0 {
                    assert_eq!(d % 4, 1);
                    rest /= d;
                }
                d += 2;
            }
            if rest > 1 {
                assert_eq!(rest % 4, 1);
            }
        }
    }

    #[test]
    fn is_prime_examples_and_sieve_agreement() {
        assert!(is_prime(2));
        assert!(!is_prime(91)); // 7·13
        assert!(is_prime(101));

        // independent sieve of Eratosthenes on [0, 1e5]
        const LIMIT: usize = 100_000;
        let mut sieve = vec![true; LIMIT + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut p = 2;
        while p * p <= LIMIT {
            if sieve[p] {
                let mut q = p * p;
                while q <= LIMIT {
                    sieve[q] = false;
                    q += p;
                }
            }
            p += 1;
        }
        for n in 0..=LIMIT {
            assert_eq!(is_prime(n as u64), sieve[n], "disagreement at {n}");
        }
    }

    #[test]
    fn three_square_admissibility_examples() {
        assert!(!is_sum_of_three_squares(7));
        assert!(!is_sum_of_three_squares(28)); // 4·7
        assert!(is_sum_of_three_squares(3));
        assert!(is_sum_of_three_squares(0));
    }

    #[test]
    fn three_square_admissibility_matches_brute_force() {
        for n in 0u64..=10_000 {
            let mut found = false;
            let r = n.isqrt();
            'outer: for x in 0..=r {
                let xs = x * x;
                for y in x..=r {
                    let rest = match n.checked_sub(xs + y * y) {
                        Some(v) => v,
                        None => break,
                    };
                    if rest >= y * y && exact_sqrt(rest).is_some() {
                        found = true;
                        break 'outer;
                    }
                }
            }
            assert_eq!(is_sum_of_three_squares(n), found, "mismatch at {n}");
        }
    }
}
