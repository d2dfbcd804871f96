//! Exhaustive enumeration and counting of solutions to the mixed ternary
//! forms. These enumerators follow the set conventions that make the
//! counting identities hold exactly: square variables range over all of ℤ,
//! triangular indices over the canonical ℕ representatives, and pairs of
//! triangular indices are ordered.

use crate::arith::{as_triangular, exact_sqrt, sq};
use crate::{Error, Result};
use std::ops::ControlFlow;

/// Residue constraint mod 2 on a single variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parity {
    #[default]
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn matches(self, x: i64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => x % 2 == 0,
            Parity::Odd => x % 2 != 0,
        }
    }
}

/// The ternary forms handled by the enumerators and counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `x² + y² + T_z` (z a canonical triangular index)
    SqSqTri,
    /// `x² + T_y + T_z` (y, z canonical triangular indices, ordered pair)
    SqTriTri,
    /// `x² + y² + z²`
    ThreeSquares,
    /// `x² + 8y² + 8z²`
    X2Plus8Y2Plus8Z2,
    /// `x² + 4y² + 4z²`
    X2Plus4Y2Plus4Z2,
}

impl Form {
    /// Evaluates the form at `(x, y, z)`. Triangular slots interpret their
    /// variable as an index (any sign); square slots square it.
    pub fn eval(self, x: i64, y: i64, z: i64) -> Result<u64> {
        let tri = |i: i64| crate::arith::triangular(i);
        let add = |a: u64, b: u64| a.checked_add(b).ok_or(Error::Overflow("form evaluation"));
        match self {
            Form::SqSqTri => add(add(sq(x), sq(y))?, tri(z)?),
            Form::SqTriTri => add(add(sq(x), tri(y)?)?, tri(z)?),
            Form::ThreeSquares => add(add(sq(x), sq(y))?, sq(z)),
            Form::X2Plus8Y2Plus8Z2 => add(
                sq(x),
                8u64.checked_mul(add(sq(y), sq(z))?)
                    .ok_or(Error::Overflow("form evaluation"))?,
            ),
            Form::X2Plus4Y2Plus4Z2 => add(
                sq(x),
                4u64.checked_mul(add(sq(y), sq(z))?)
                    .ok_or(Error::Overflow("form evaluation"))?,
            ),
        }
    }
}

/// One solution `(x, y, z)` of `form = n`, self-checkable via [`RepTriple::is_valid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepTriple {
    pub form: Form,
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub n: u64,
}

impl RepTriple {
    pub fn coords(&self) -> (i64, i64, i64) {
        (self.x, self.y, self.z)
    }

    /// Re-evaluates the form and the canonical-index conventions from the
    /// raw fields.
    pub fn is_valid(&self) -> bool {
        let canon = match self.form {
            Form::SqSqTri => self.z >= 0,
            Form::SqTriTri => self.y >= 0 && self.z >= 0,
            _ => true,
        };
        canon && self.form.eval(self.x, self.y, self.z) == Ok(self.n)
    }
}

/// All `(x, y, z) ∈ ℤ×ℤ×ℕ` with `x² + y² + T_z = n`, `x`/`y` filtered by
/// their parity classes, and (when `same_parity` is set) by `x ≡ y (mod 2)`
/// or its negation. Lexicographic in `(x, y)`.
pub fn enum_sq_sq_tri(n: u64, px: Parity, py: Parity, same_parity: Option<bool>) -> Vec<RepTriple> {
    let mut out = Vec::new();
    let r = n.isqrt() as i64;
    for x in -r..=r {
        if !px.matches(x) {
            continue;
        }
        let xs = sq(x);
        let ry = (n - xs).isqrt() as i64;
        for y in -ry..=ry {
            if !py.matches(y) {
                continue;
            }
            if let Some(same) = same_parity {
                if ((x - y) % 2 == 0) != same {
                    continue;
                }
            }
            if let Some(z) = as_triangular(n - xs - sq(y)) {
                out.push(RepTriple {
                    form: Form::SqSqTri,
                    x,
                    y,
                    z,
                    n,
                });
            }
        }
    }
    out
}

/// All `(x, y, z) ∈ ℤ×ℕ×ℕ` with `x² + T_y + T_z = n` and `x` in the given
/// parity class. `(y, z)` is an ordered pair of canonical indices.
pub fn enum_sq_tri_tri(n: u64, px: Parity) -> Vec<RepTriple> {
    let mut out = Vec::new();
    let r = n.isqrt() as i64;
    for x in -r..=r {
        if !px.matches(x) {
            continue;
        }
        let rest = n - sq(x);
        let mut ty = 0u64; // running T_y
        let mut y = 0i64;
        while ty <= rest {
            if let Some(z) = as_triangular(rest - ty) {
                out.push(RepTriple {
                    form: Form::SqTriTri,
                    x,
                    y,
                    z,
                    n,
                });
            }
            y += 1;
            ty += y as u64;
        }
    }
    out
}

/// Count of `x² + T_y + T_z = n` solutions with `x` in the parity class,
/// identical to `enum_sq_tri_tri(n, px).len()` without materializing them.
fn count_sq_tri_tri(n: u64, px: Parity) -> u64 {
    let mut count = 0u64;
    let r = n.isqrt() as i64;
    for x in 0..=r {
        if !px.matches(x) {
            continue;
        }
        let weight = if x == 0 { 1 } else { 2 }; // ±x
        let rest = n - sq(x);
        let mut ty = 0u64;
        let mut y = 0i64;
        while ty <= rest {
            if as_triangular(rest - ty).is_some() {
                count += weight;
            }
            y += 1;
            ty += y as u64;
        }
    }
    count
}

/// `r₀(n)`: solutions of `x² + T_y + T_z = n` over ℤ×ℕ×ℕ with `x` even.
pub fn r0(n: u64) -> u64 {
    count_sq_tri_tri(n, Parity::Even)
}

/// `r₁(n)`: solutions of `x² + T_y + T_z = n` over ℤ×ℕ×ℕ with `x` odd.
pub fn r1(n: u64) -> u64 {
    count_sq_tri_tri(n, Parity::Odd)
}

/// `|{(x,y,z) ∈ ℤ³ : x² + y² + z² = n}|` by exhaustive search.
pub fn count_three_squares(n: u64) -> u64 {
    let weight = |v: u64| if v == 0 { 1 } else { 2 };
    let mut count = 0u64;
    let r = n.isqrt();
    for x in 0..=r {
        let xs = x * x;
        let ry = (n - xs).isqrt();
        for y in 0..=ry {
            if let Some(z) = exact_sqrt(n - xs - y * y) {
                count += weight(x) * weight(y) * weight(z);
            }
        }
    }
    count
}

/// Parity shape requested from [`three_square_decompositions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityStructure {
    Any,
    /// First coordinate odd, the other two even.
    OneOddTwoEven,
    AllOdd,
}

/// Visits nonnegative decompositions `n = a² + b² + c²` in a deterministic
/// order, shaped by `structure`:
///
/// * `Any`: `a ≤ b ≤ c`, ascending in `(a, b)`.
/// * `OneOddTwoEven`: `a` odd ascending, then even `b ≤ c` ascending — the
///   smallest odd coordinate always comes first.
/// * `AllOdd`: `a ≤ b ≤ c` all odd, ascending.
fn visit_three_square_decompositions<F>(n: u64, structure: ParityStructure, mut f: F)
where
    F: FnMut(i64, i64, i64) -> ControlFlow<()>,
{
    match structure {
        ParityStructure::Any => {
            let mut a = 0u64;
            while 3 * a * a <= n {
                let mut b = a;
                while a * a + 2 * b * b <= n {
                    if let Some(c) = exact_sqrt(n - a * a - b * b) {
                        // c ≥ b holds because b² ≤ remainder
                        if let ControlFlow::Break(()) = f(a as i64, b as i64, c as i64) {
                            return;
                        }
                    }
                    b += 1;
                }
                a += 1;
            }
        }
        ParityStructure::OneOddTwoEven => {
            let mut a = 1u64;
            while a * a <= n {
                let rest = n - a * a;
                let mut b = 0u64;
                while 2 * b * b <= rest {
                    if let Some(c) = exact_sqrt(rest - b * b) {
                        if c % 2 == 0 {
                            if let ControlFlow::Break(()) = f(a as i64, b as i64, c as i64) {
                                return;
                            }
                        }
                    }
                    b += 2;
                }
                a += 2;
            }
        }
        ParityStructure::AllOdd => {
            let mut a = 1u64;
            while 3 * a * a <= n {
                let mut b = a;
                while a * a + 2 * b * b <= n {
                    if let Some(c) = exact_sqrt(n - a * a - b * b) {
                        if c % 2 == 1 {
                            if let ControlFlow::Break(()) = f(a as i64, b as i64, c as i64) {
                                return;
                            }
                        }
                    }
                    b += 2;
                }
                a += 2;
            }
        }
    }
}

/// All decompositions `n = x² + y² + z²` over nonnegative coordinates with
/// the requested parity structure; one triple per unordered solution, with
/// the structure's distinguished coordinate first. Empty iff none exists.
pub fn three_square_decompositions(n: u64, structure: ParityStructure) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    visit_three_square_decompositions(n, structure, |x, y, z| {
        out.push((x, y, z));
        ControlFlow::Continue(())
    });
    out
}

/// First decomposition in the deterministic order, if any.
pub(crate) fn first_three_square_decomposition(
    n: u64,
    structure: ParityStructure,
) -> Option<(i64, i64, i64)> {
    let mut found = None;
    visit_three_square_decompositions(n, structure, |x, y, z| {
        found = Some((x, y, z));
        ControlFlow::Break(())
    });
    found
}

/// Number of `(x,y,z) ∈ ℤ³` with `x² + c(y² + z²) = n` for the scaled forms
/// (`c = 8` or `c = 4`); with `all_odd`, only solutions in odd `x, y, z`
/// are counted.
pub fn count_form(n: u64, form: Form, all_odd: bool) -> Result<u64> {
    let c: u64 = match form {
        Form::X2Plus8Y2Plus8Z2 => 8,
        Form::X2Plus4Y2Plus4Z2 => 4,
        other => {
            return Err(Error::Domain(format!(
                "count_form only handles the scaled forms, got {other:?}"
            )))
        }
    };
    let weight = |v: u64| if v == 0 { 1 } else { 2 };
    let (start, step) = if all_odd { (1, 2) } else { (0, 1) };
    let budget = n / c; // y² + z² ≤ ⌊n/c⌋ ⇔ c(y²+z²) ≤ n
    let mut count = 0u64;
    let mut y = start;
    while y * y <= budget {
        let mut z = start;
        while y * y + z * z <= budget {
            if let Some(x) = exact_sqrt(n - c * (y * y + z * z)) {
                if !all_odd || x % 2 == 1 {
                    count += weight(x) * weight(y) * weight(z);
                }
            }
            z += step;
        }
        y += step;
    }
    Ok(count)
}
