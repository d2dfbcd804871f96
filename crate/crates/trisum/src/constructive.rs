//! Constructive decompositions. Rather than merely asserting that a
//! representation exists, these routines build one explicitly — via a
//! four-square composition identity and a split of twice a triangular
//! number into a triangular pair — and return certificates that carry the
//! full derivation and can be re-validated from their raw fields.

use crate::arith::{canonical_tri_index, is_prime, odd_factorize, sq, triangular};
use crate::reps::{first_three_square_decomposition, ParityStructure};
use crate::{check_guard, Error, Result};
use std::fmt;

/// Tuple `(k, w, x, y, z)` with `k` positive odd and `k(w²+x²+y²+z²)` odd;
/// the input to the four-square composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourSquareSeed {
    pub k: i64,
    pub w: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl FourSquareSeed {
    pub fn new(k: i64, w: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        let seed = FourSquareSeed { k, w, x, y, z };
        seed.validate_domain()?;
        Ok(seed)
    }

    fn validate_domain(&self) -> Result<()> {
        if self.k <= 0 || self.k % 2 == 0 {
            return Err(Error::Domain(format!(
                "seed multiplier k must be positive and odd, got {}",
                self.k
            )));
        }
        // sum of squares is odd iff an odd number of the entries are odd
        let parity = (self.w & 1) ^ (self.x & 1) ^ (self.y & 1) ^ (self.z & 1);
        if parity == 0 {
            return Err(Error::Domain(format!(
                "seed target k(w²+x²+y²+z²) must be odd, got even for {self:?}"
            )));
        }
        Ok(())
    }

    /// The odd target `k(w² + x² + y² + z²) = 2m + 1`.
    pub fn target(&self) -> Result<u64> {
        self.validate_domain()?;
        let s: i128 = [self.w, self.x, self.y, self.z]
            .iter()
            .map(|&c| c as i128 * c as i128)
            .sum();
        u64::try_from(self.k as i128 * s).map_err(|_| Error::Overflow("seed target"))
    }
}

/// Intermediate values recorded by the decomposition pipelines so a
/// certificate can be audited step by step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    /// Divisor `d` of `2m+1` the pipeline chose (≡ 1 mod 4 for the
    /// two-odd-squares pipeline, ≡ 3 mod 4 for the odd-square pipeline).
    pub divisor: u64,
    /// `k = (2m+1) / divisor`.
    pub cofactor: u64,
    /// `w = 1 + (−1)^q` where `divisor = 4q ± 1`.
    pub w: i64,
    /// Seed fed to the four-square composition.
    pub seed: FourSquareSeed,
    /// Raw (possibly negative) triangular index produced by the composition.
    pub v: i64,
    /// Index shift `u` of the `T_{v+u} + T_{v−u}` split, when used.
    pub shift: Option<i64>,
    /// `y/2` and `z/2` of the seed, when the pipeline halves the even pair.
    pub y_half: Option<i64>,
    pub z_half: Option<i64>,
}

/// A constructive witness for one representation; `validate` re-derives the
/// claimed equation and parity constraints from the raw fields alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `n = a² + b² + T_v` with both `a` and `b` odd.
    TwoOddSqTri {
        n: u64,
        a: i64,
        b: i64,
        v: i64,
        provenance: Option<Provenance>,
    },
    /// `n = a² + T_s + T_t` with `a` odd.
    OddSqTwoTri {
        n: u64,
        a: i64,
        s: i64,
        t: i64,
        provenance: Option<Provenance>,
    },
    /// `n = a² + b² + T_v` with `b` odd (`a` unconstrained).
    SqOddSqTri { n: u64, a: i64, b: i64, v: i64 },
    /// `2T_m = a² + b² + 2T_v`, straight from the four-square composition.
    Composition {
        m: u64,
        a: i64,
        b: i64,
        v: i64,
        seed: FourSquareSeed,
    },
}

impl Certificate {
    /// The number the certificate represents (for the composition variant,
    /// `2T_m`).
    pub fn represented(&self) -> Result<u64> {
        match *self {
            Certificate::TwoOddSqTri { n, .. }
            | Certificate::OddSqTwoTri { n, .. }
            | Certificate::SqOddSqTri { n, .. } => Ok(n),
            Certificate::Composition { m, .. } => {
                let m = i64::try_from(m).map_err(|_| Error::Overflow("2T_m"))?;
                triangular(m)?.checked_mul(2).ok_or(Error::Overflow("2T_m"))
            }
        }
    }

    /// Re-evaluates the variant's equation and parity constraints; true iff
    /// everything holds exactly.
    pub fn validate(&self) -> bool {
        fn eval(parts: &[Result<u64>]) -> Option<u64> {
            parts
                .iter()
                .try_fold(0u64, |acc, p| acc.checked_add(*p.as_ref().ok()?))
        }
        match *self {
            Certificate::TwoOddSqTri { n, a, b, v, .. } => {
                a % 2 != 0 && b % 2 != 0 && eval(&[Ok(sq(a)), Ok(sq(b)), triangular(v)]) == Some(n)
            }
            Certificate::OddSqTwoTri { n, a, s, t, .. } => {
                a % 2 != 0 && eval(&[Ok(sq(a)), triangular(s), triangular(t)]) == Some(n)
            }
            Certificate::SqOddSqTri { n, a, b, v } => {
                b % 2 != 0 && eval(&[Ok(sq(a)), Ok(sq(b)), triangular(v)]) == Some(n)
            }
            Certificate::Composition { m, a, b, v, .. } => {
                let double = |i: i64| {
                    triangular(i).and_then(|t| t.checked_mul(2).ok_or(Error::Overflow("2T")))
                };
                let Ok(m) = i64::try_from(m) else {
                    return false;
                };
                let Ok(lhs) = double(m) else { return false };
                eval(&[Ok(sq(a)), Ok(sq(b)), double(v)]) == Some(lhs)
            }
        }
    }
}

fn fmt_square(f: &mut fmt::Formatter<'_>, c: i64) -> fmt::Result {
    if c < 0 {
        write!(f, "({c})²")
    } else {
        write!(f, "{c}²")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Certificate::TwoOddSqTri { n, a, b, v, .. }
            | Certificate::SqOddSqTri { n, a, b, v } => {
                write!(f, "{n} = ")?;
                fmt_square(f, a)?;
                write!(f, " + ")?;
                fmt_square(f, b)?;
                write!(f, " + T_{v}")
            }
            Certificate::OddSqTwoTri { n, a, s, t, .. } => {
                write!(f, "{n} = ")?;
                fmt_square(f, a)?;
                write!(f, " + T_{s} + T_{t}")
            }
            Certificate::Composition { m, a, b, v, .. } => {
                write!(f, "2·T_{m} = ")?;
                fmt_square(f, a)?;
                write!(f, " + ")?;
                fmt_square(f, b)?;
                write!(f, " + 2·T_{v}")
            }
        }
    }
}

/// Result of a decomposition request: either a certificate or a justified
/// impossibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Witness(Certificate),
    NonRepresentable { reason: String },
}

impl Outcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::Witness(c) => Some(c),
            Outcome::NonRepresentable { .. } => None,
        }
    }

    pub fn is_representable(&self) -> bool {
        matches!(self, Outcome::Witness(_))
    }
}

/// Four-square composition: for a seed with target `2m+1 = k(w²+x²+y²+z²)`,
/// produces `a = k(wy+xz)`, `b = k(wz−xy)` and the index `v` defined by
/// `2v+1 = k(w²+x²−y²−z²)`, so that `2T_m = a² + b² + 2T_v` exactly.
///
/// ```
/// use trisum::{compose_four_squares, FourSquareSeed};
///
/// // 2m+1 = 9 = 3·(1² + 1² + 1² + 0²), so m = 4
/// let seed = FourSquareSeed::new(3, 1, 1, 1, 0)?;
/// let (m, cert) = compose_four_squares(&seed)?;
/// assert_eq!(m, 4);
/// assert!(cert.validate()); // 2·T_4 = 20 = 3² + (−3)² + 2·T_1
/// # Ok::<(), trisum::Error>(())
/// ```
pub fn compose_four_squares(seed: &FourSquareSeed) -> Result<(u64, Certificate)> {
    let target = seed.target()?; // validates oddness of the target
    let m = (target - 1) / 2;

    let (k, w, x, y, z) = (
        seed.k as i128,
        seed.w as i128,
        seed.x as i128,
        seed.y as i128,
        seed.z as i128,
    );
    // k(w²+x²−(y²+z²)) is odd because it has the target's parity
    let diff = k * (w * w + x * x - y * y - z * z);
    let to_i64 =
        |val: i128, what: &'static str| i64::try_from(val).map_err(|_| Error::Overflow(what));
    let v = to_i64((diff - 1) / 2, "composition index v")?;
    let a = to_i64(k * (w * y + x * z), "composition output a")?;
    let b = to_i64(k * (w * z - x * y), "composition output b")?;

    let cert = Certificate::Composition {
        m,
        a,
        b,
        v,
        seed: *seed,
    };
    Ok((m, cert))
}

/// Splits `u² + 2T_v` into the triangular pair `T_{v+u} + T_{v−u}`,
/// returning the canonical nonnegative indices.
pub fn split_tri_pair(v: i64, u: i64) -> Result<(i64, i64)> {
    let canonical = |s: i128| -> Result<i64> {
        let c = if s >= 0 { s } else { -(s + 1) };
        i64::try_from(c).map_err(|_| Error::Overflow("triangular pair index"))
    };
    Ok((
        canonical(v as i128 + u as i128)?,
        canonical(v as i128 - u as i128)?,
    ))
}

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

/// Smallest divisor of odd `p` congruent to `residue` mod 4 and ≥ `lower`.
fn smallest_divisor_mod4(p: u64, residue: u64, lower: u64) -> Option<u64> {
    let mut best: Option<u64> = None;
    let mut i = 1u64;
    while i * i <= p {
        if p % i == 0 {
            for d in [i, p / i] {
                if d % 4 == residue && d >= lower && best.map_or(true, |b| d < b) {
                    best = Some(d);
                }
            }
        }
        i += 2; // p is odd, so all divisors are odd
    }
    best
}

/// Decomposes `T_m` as a sum of two odd squares and a triangular number,
/// `T_m = a² + b² + T_v` with `a, b` odd — possible exactly when `2m+1` is
/// not a prime congruent to 3 mod 4.
///
/// The construction: pick the smallest divisor `d ≡ 1 (mod 4)`, `d ≥ 5`, of
/// `2m+1`; with `d = 4q+1` set `w = 1+(−1)^q`, so `d − w²` is positive and
/// ≡ 5 (mod 8) and therefore splits as `x² + y² + z²` with `x` odd and
/// `y, z` even. Compose the seed `(k, w, x, y, z)`, `k = (2m+1)/d`, and fold
/// the two even outputs into two odd squares.
///
/// ```
/// use trisum::{decompose_two_odd_squares_tri, Outcome};
///
/// match decompose_two_odd_squares_tri(4)? {
///     Outcome::Witness(cert) => {
///         assert!(cert.validate());
///         assert_eq!(cert.represented()?, 10); // T_4 = 10 = 3² + (−1)² + T_0
///     }
///     Outcome::NonRepresentable { .. } => unreachable!("9 is not prime"),
/// }
/// // 2·1 + 1 = 3 is a prime congruent to 3 mod 4, so T_1 is excluded
/// assert!(!decompose_two_odd_squares_tri(1)?.is_representable());
/// # Ok::<(), trisum::Error>(())
/// ```
pub fn decompose_two_odd_squares_tri(m: u64) -> Result<Outcome> {
    if m == 0 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    check_guard(m)?;
    let p = 2 * m + 1;
    if p % 4 == 3 && is_prime(p) {
        return Ok(Outcome::NonRepresentable {
            reason: format!("2m+1 = {p} is a prime congruent to 3 mod 4"),
        });
    }

    let d = smallest_divisor_mod4(p, 1, 5)
        .ok_or_else(|| invariant(format!("{p} has no divisor ≡ 1 (mod 4) above 1")))?;
    let k = p / d;
    let q = (d - 1) / 4; // q ≥ 1 because d ≥ 5
    let w: i64 = if q % 2 == 0 { 2 } else { 0 };
    let rest = d - sq(w);
    if rest % 8 != 5 {
        return Err(invariant(format!("d − w² = {rest} is not ≡ 5 (mod 8)")));
    }
    let (x, y, z) = first_three_square_decomposition(rest, ParityStructure::OneOddTwoEven)
        .ok_or_else(|| invariant(format!("{rest} ≡ 5 (mod 8) has no one-odd-two-even split")))?;
    let (y_half, z_half) = (y / 2, z / 2);
    if (y_half - z_half) % 2 == 0 {
        return Err(invariant(format!(
            "y/2 = {y_half} and z/2 = {z_half} must have opposite parity"
        )));
    }

    let seed = FourSquareSeed::new(k as i64, w, x, y, z)?;
    let (m_composed, composition) = compose_four_squares(&seed)?;
    if m_composed != m {
        return Err(invariant(format!(
            "composition target {m_composed} differs from requested {m}"
        )));
    }
    let Certificate::Composition {
        a: a2, b: b2, v, ..
    } = composition
    else {
        unreachable!("compose_four_squares returns the composition variant");
    };
    // both composition outputs are even (the seed's y, z are), and their
    // half-sum/half-difference are the two odd squares
    if a2 % 2 != 0 || b2 % 2 != 0 {
        return Err(invariant(format!(
            "composition outputs {a2}, {b2} are not both even"
        )));
    }
    let a = (a2 + b2) / 2;
    let b = (a2 - b2) / 2;
    if a % 2 == 0 || b % 2 == 0 {
        return Err(invariant(format!(
            "assembled squares {a}, {b} are not both odd"
        )));
    }

    let n = triangular(i64::try_from(m).map_err(|_| Error::Overflow("T_m"))?)?;
    let cert = Certificate::TwoOddSqTri {
        n,
        a,
        b,
        v: canonical_tri_index(v),
        provenance: Some(Provenance {
            divisor: d,
            cofactor: k,
            w,
            seed,
            v,
            shift: None,
            y_half: Some(y_half),
            z_half: Some(z_half),
        }),
    };
    if !cert.validate() {
        return Err(invariant(format!(
            "constructed certificate fails validation: {cert}"
        )));
    }
    Ok(Outcome::Witness(cert))
}

/// Decomposes `2T_m` as a sum of an odd square and two triangular numbers,
/// `2T_m = a² + T_s + T_t` with `a` odd — possible exactly when `2m+1` has
/// a prime divisor congruent to 3 mod 4.
///
/// The construction: take the smallest such prime `d = 4q−1`, set
/// `w = 1+(−1)^q`, split `d − w² ≡ 3 (mod 8)` into three odd squares,
/// compose the seed, then split `u² + 2T_v` into `T_{v+u} + T_{v−u}` with
/// `u` the composition's second output.
pub fn decompose_odd_square_two_tri(m: u64) -> Result<Outcome> {
    if m == 0 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    check_guard(m)?;
    let p = 2 * m + 1;
    let factorization = odd_factorize(p)?;
    let Some(&(d, _)) = factorization.factors3mod4.first() else {
        return Ok(Outcome::NonRepresentable {
            reason: format!("2m+1 = {p} has no prime divisor congruent to 3 mod 4"),
        });
    };

    let k = p / d;
    let q = (d + 1) / 4;
    let w: i64 = if q % 2 == 0 { 2 } else { 0 };
    let rest = d - sq(w);
    if rest % 8 != 3 {
        return Err(invariant(format!("d − w² = {rest} is not ≡ 3 (mod 8)")));
    }
    let (x, y, z) = first_three_square_decomposition(rest, ParityStructure::AllOdd)
        .ok_or_else(|| invariant(format!("{rest} ≡ 3 (mod 8) has no all-odd split")))?;

    let seed = FourSquareSeed::new(k as i64, w, x, y, z)?;
    let (m_composed, composition) = compose_four_squares(&seed)?;
    if m_composed != m {
        return Err(invariant(format!(
            "composition target {m_composed} differs from requested {m}"
        )));
    }
    let Certificate::Composition { a, b: shift, v, .. } = composition else {
        unreachable!("compose_four_squares returns the composition variant");
    };
    if a % 2 == 0 {
        return Err(invariant(format!("composition output {a} should be odd")));
    }
    let (s, t) = split_tri_pair(v, shift)?;

    let n = 2 * triangular(i64::try_from(m).map_err(|_| Error::Overflow("T_m"))?)?;
    let cert = Certificate::OddSqTwoTri {
        n,
        a,
        s,
        t,
        provenance: Some(Provenance {
            divisor: d,
            cofactor: k,
            w,
            seed,
            v,
            shift: Some(shift),
            y_half: None,
            z_half: None,
        }),
    };
    if !cert.validate() {
        return Err(invariant(format!(
            "constructed certificate fails validation: {cert}"
        )));
    }
    Ok(Outcome::Witness(cert))
}

/// Finds `n = a² + b² + T_v` with `b` odd by bounded exhaustive search
/// (smallest odd `b` first, then smallest `a ≥ 0`). Every positive integer
/// has such a representation, so exhaustion is an internal error.
pub fn decompose_sq_odd_sq_tri(n: u64) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let mut b = 1i64;
    while sq(b) <= n {
        let rest = n - sq(b);
        let mut a = 0i64;
        while sq(a) <= rest {
            if let Some(v) = crate::arith::as_triangular(rest - sq(a)) {
                return Ok(Certificate::SqOddSqTri { n, a, b, v });
            }
            a += 1;
        }
        b += 2;
    }
    Err(invariant(format!(
        "search exhausted: {n} admits no representation a² + b² + T_v with b odd"
    )))
}
