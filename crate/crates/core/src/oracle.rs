//! Brute-force representation counters: the ground truth everything else is
//! tested against.
//!
//! For a quadruple of positive weights `(a, b, c, d)`:
//!
//! - [`count_n`] counts integer solutions of `m = a*x^2 + b*y^2 + c*z^2 + d*w^2`,
//! - [`count_n0`] restricts to solutions with all four coordinates odd,
//! - [`count_t`] counts solutions of `n = a*T(x) + ... + d*T(w)` with
//!   `T(x) = x(x-1)/2`, computed through the identity
//!   `t(a,b,c,d; n) = N0(a,b,c,d; 8n + a+b+c+d)` (substitute `x -> 2x - 1`),
//! - [`count_t_by_triangles`] recounts the same quantity by enumerating
//!   triangular values directly — an independent second route kept so the
//!   oracle can check itself,
//! - [`count_t_prime`] is `count_t / 16`, the count over positive quadruples
//!   (each triangular value arises from exactly two integers, one per slot).
//!
//! Enumeration is three nested loops with the fourth coordinate resolved by an
//! exact integer square root, `O(m^(3/2))` per call. A per-call iteration
//! budget (default [`DEFAULT_BUDGET`]) guards against accidentally huge
//! inputs; exceeding it is a reported error, not a panic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on inner-loop iterations per counting call.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// An ordered quadruple of positive weights naming a quaternary form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Form {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl Form {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Form> {
        if a == 0 || b == 0 || c == 0 || d == 0 {
            return Err(Error::Domain(format!(
                "form coefficients must be positive, got ({a},{b},{c},{d})"
            )));
        }
        Ok(Form { a, b, c, d })
    }

    /// Const constructor for registry tables; panics at compile time on a
    /// zero coefficient.
    pub const fn of(a: u64, b: u64, c: u64, d: u64) -> Form {
        assert!(a >= 1 && b >= 1 && c >= 1 && d >= 1);
        Form { a, b, c, d }
    }

    pub fn coefficients(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Coefficients sorted ascending; `t` and `N` are invariant under
    /// permutations, so registries key on this.
    pub fn canonical(&self) -> [u64; 4] {
        let mut k = self.coefficients();
        k.sort_unstable();
        k
    }

    pub fn sum(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Form> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Domain(format!(
                "form must be four comma-separated positive integers, got {s:?}"
            )));
        }
        let mut k = [0u64; 4];
        for (slot, part) in k.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Domain(format!("invalid form coefficient {part:?}")))?;
        }
        Form::new(k[0], k[1], k[2], k[3])
    }
}

/// Iteration meter shared by the counting loops.
struct Meter {
    spent: u64,
    cap: u64,
}

impl Meter {
    fn new(cap: u64) -> Meter {
        Meter { spent: 0, cap }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.cap {
            Err(Error::Budget { spent: self.spent, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// Number of integer quadruples with `m = a*x^2 + b*y^2 + c*z^2 + d*w^2`.
pub fn count_n(form: Form, m: u64, budget: u64) -> Result<u64> {
    let [a, b, c, d] = form.coefficients();
    let mut meter = Meter::new(budget);
    let mut total = 0u64;
    for x in 0..=(m / a).isqrt() {
        let rx = m - a * x * x;
        let wx = if x == 0 { 1 } else { 2 };
        for y in 0..=(rx / b).isqrt() {
            let ry = rx - b * y * y;
            let wy = if y == 0 { 1 } else { 2 };
            for z in 0..=(ry / c).isqrt() {
                meter.tick()?;
                let rz = ry - c * z * z;
                let wz = if z == 0 { 1 } else { 2 };
                if rz % d == 0 {
                    let w2 = rz / d;
                    let w = w2.isqrt();
                    if w * w == w2 {
                        let ww = if w == 0 { 1 } else { 2 };
                        total += wx * wy * wz * ww;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// As [`count_n`] but restricted to quadruples with all coordinates odd.
pub fn count_n0(form: Form, m: u64, budget: u64) -> Result<u64> {
    let [a, b, c, d] = form.coefficients();
    let mut meter = Meter::new(budget);
    let mut total = 0u64;
    // odd coordinates only: each nonzero absolute value carries both signs
    for x in (1..=(m / a).isqrt()).step_by(2) {
        let rx = m - a * x * x;
        for y in (1..=(rx / b).isqrt()).step_by(2) {
            let ry = rx - b * y * y;
            for z in (1..=(ry / c).isqrt()).step_by(2) {
                meter.tick()?;
                let rz = ry - c * z * z;
                if rz % d == 0 {
                    let w2 = rz / d;
                    let w = w2.isqrt();
                    if w % 2 == 1 && w * w == w2 {
                        total += 16;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Number of integer quadruples representing `n` by weighted triangular
/// numbers, via `t(a,b,c,d; n) = N0(a,b,c,d; 8n + a+b+c+d)`.
pub fn count_t(form: Form, n: u64, budget: u64) -> Result<u64> {
    count_n0(form, 8 * n + form.sum(), budget)
}

/// Second route for [`count_t`]: enumerate nonnegative triangular values in
/// the first three slots and resolve the fourth; each solution over
/// triangular values lifts to `2^4` integer quadruples.
pub fn count_t_by_triangles(form: Form, n: u64, budget: u64) -> Result<u64> {
    let [a, b, c, d] = form.coefficients();
    let mut meter = Meter::new(budget);
    let mut total = 0u64;
    let mut i = 0u64;
    while a * tri(i) <= n {
        let ri = n - a * tri(i);
        let mut j = 0u64;
        while b * tri(j) <= ri {
            let rj = ri - b * tri(j);
            let mut k = 0u64;
            while c * tri(k) <= rj {
                meter.tick()?;
                let rk = rj - c * tri(k);
                if rk % d == 0 && is_triangular(rk / d) {
                    total += 16;
                }
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    Ok(total)
}

/// `count_t / 16`: representations with all four slot variables positive.
pub fn count_t_prime(form: Form, n: u64, budget: u64) -> Result<u64> {
    let t = count_t(form, n, budget)?;
    if t % 16 != 0 {
        return Err(Error::Invariant(format!("t({form}; {n}) = {t} is not divisible by 16")));
    }
    Ok(t / 16)
}

#[inline]
fn tri(i: u64) -> u64 {
    i * (i + 1) / 2
}

#[inline]
fn is_triangular(v: u64) -> bool {
    let s = 8 * v + 1;
    let r = s.isqrt();
    r * r == s
}
