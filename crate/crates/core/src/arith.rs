//! Exact integer arithmetic: factorization, divisor sums, Kronecker symbols,
//! and the twisted / lattice sums the closed formulas are built from.
//!
//! Everything here is a pure function of its arguments. The only shared state
//! is a smallest-prime-factor sieve built lazily on first use and read-only
//! afterwards, so all functions are safe to call from multiple threads.
//!
//! Conventions:
//!
//! - `sigma(x)` is the sum of positive divisors for `x >= 1` and `0` for
//!   `x <= 0`; `sigma_div(n, q)` is `sigma(n/q)` when `q | n` and `0`
//!   otherwise, so piecewise formulas can apply it without divisibility
//!   checks.
//! - `kronecker(a, n)` is the full Kronecker symbol, total on all integer
//!   pairs.
//! - `decompose(n)` splits `n = 2^alpha * 3^beta * n1` with `gcd(n1, 6) = 1`;
//!   every piecewise formula in [`crate::formulas`] branches on this shape.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// All positive divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// The four twisted divisor sums
///
/// ```text
/// A(n) = sum_{d|n} d*(12/(n/d))      B(n) = sum_{d|n} d*(-3/d)*(-4/(n/d))
/// C(n) = sum_{d|n} d*(-3/(n/d))*(-4/d)   D(n) = sum_{d|n} d*(12/d)
/// ```
///
/// where `(x/y)` is the Kronecker symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedSums {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

const SIEVE_LIMIT: usize = 1 << 20;

/// Smallest-prime-factor table for 0..2^20, built once (linear sieve).
fn spf_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..SIEVE_LIMIT {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                if p > spf[i] || i * p as usize >= SIEVE_LIMIT {
                    break;
                }
                spf[i * p as usize] = p;
            }
        }
        spf
    })
}

/// Factor `n >= 1`. Sieve lookup below 2^20, trial division above.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("factorize requires n >= 1".into()));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            factors.push((p, e));
        }
    };
    if (n as usize) < SIEVE_LIMIT {
        let spf = spf_table();
        let mut m = n as usize;
        while m > 1 {
            let p = spf[m] as u64;
            let mut e = 0;
            while m as u64 % p == 0 {
                m /= p as usize;
                e += 1;
            }
            push(p, e);
        }
    } else {
        let mut m = n;
        let strip = |m: &mut u64, p: u64| {
            let mut e = 0;
            while *m % p == 0 {
                *m /= p;
                e += 1;
            }
            e
        };
        let e2 = strip(&mut m, 2);
        push(2, e2);
        let e3 = strip(&mut m, 3);
        push(3, e3);
        let mut p = 5u64;
        while p * p <= m {
            let e = strip(&mut m, p);
            push(p, e);
            // 6k +/- 1 wheel
            p += if p % 6 == 5 { 2 } else { 4 };
        }
        if m > 1 {
            push(m, 1);
        }
    }
    Ok(Factorization { value: n, factors })
}

/// Split `n = 2^alpha * 3^beta * n1` with `gcd(n1, 6) = 1`.
pub fn decompose(n: u64) -> (u32, u32, u64) {
    assert!(n >= 1, "decompose requires n >= 1");
    let mut n1 = n;
    let mut alpha = 0;
    while n1 % 2 == 0 {
        n1 /= 2;
        alpha += 1;
    }
    let mut beta = 0;
    while n1 % 3 == 0 {
        n1 /= 3;
        beta += 1;
    }
    (alpha, beta, n1)
}

/// Sum of positive divisors, with `sigma(x) = 0` for `x <= 0`.
pub fn sigma(x: i64) -> u64 {
    if x <= 0 {
        return 0;
    }
    let f = factorize(x as u64).expect("positive");
    let mut total = 1u64;
    for (p, e) in f.factors {
        let mut term = 1u64;
        let mut pk = 1u64;
        for _ in 0..e {
            pk = pk.checked_mul(p).expect("sigma overflow");
            term = term.checked_add(pk).expect("sigma overflow");
        }
        total = total.checked_mul(term).expect("sigma overflow");
    }
    total
}

/// `sigma(n/q)` when `q | n` and `n/q >= 1`, else 0.
pub fn sigma_div(n: u64, q: u64) -> u64 {
    assert!(q >= 1);
    if n % q == 0 {
        sigma((n / q) as i64)
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`, total on all integers.
///
/// Extends the Jacobi symbol by `(a/0) = 1` iff `a = +-1`, `(a/-1) = sign a`
/// (with `(a/-1) = 1` for `a >= 0`), and the 8-periodic rule at 2.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut acc = 1i64;
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        acc = match a.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1, // 3 or 5; even a was rejected above
        };
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            acc = -acc;
        }
    }
    // Jacobi loop; n is odd and positive from here on.
    loop {
        if n == 1 {
            return acc;
        }
        a = a.rem_euclid(n);
        if a == 0 {
            return 0;
        }
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                acc = -acc;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut a, &mut n);
    }
}

/// The four twisted divisor sums at `n >= 1` by direct divisor enumeration.
pub fn twisted_sums(n: u64) -> TwistedSums {
    let f = factorize(n).expect("twisted_sums requires n >= 1");
    let mut s = TwistedSums { a: 0, b: 0, c: 0, d: 0 };
    for d in f.divisors() {
        let q = (n / d) as i64;
        let d = d as i64;
        s.a += d * kronecker(12, q);
        s.b += d * kronecker(-3, d) * kronecker(-4, q);
        s.c += d * kronecker(-3, q) * kronecker(-4, d);
        s.d += d * kronecker(12, d);
    }
    s
}

/// `(3/m) * sum_{d|m} d*(3/d)` for `gcd(m, 6) = 1`; equals
/// [`twisted_sums`]`(m).a` on that domain.
pub fn reduced_a(m: u64) -> Result<i64> {
    if m == 0 || m % 2 == 0 || m % 3 == 0 {
        return Err(Error::Domain(format!("reduced_a requires gcd(m, 6) = 1, got {m}")));
    }
    let f = factorize(m)?;
    let mut sum = 0i64;
    for d in f.divisors() {
        sum += d as i64 * kronecker(3, d as i64);
    }
    Ok(kronecker(3, m as i64) * sum)
}

/// Lattice sum `S_m(n) = sum r` over all `(r, s)` in `Z^2` with
/// `n = r^2 + m*s^2` and `r = 1 (mod 4)`, for `m` in `{2, 4}` and odd `n`.
///
/// Vanishes for (m = 2, n = 5, 7 mod 8) and (m = 4, n = 3 mod 4) since those
/// residues are never attained.
pub fn s_m(m: u64, n: u64) -> Result<i64> {
    if m != 2 && m != 4 {
        return Err(Error::Domain(format!("s_m requires m in {{2, 4}}, got {m}")));
    }
    if n == 0 || n % 2 == 0 {
        return Err(Error::Domain(format!("s_m requires odd n >= 1, got {n}")));
    }
    let mut total = 0i64;
    let mut s0 = 0u64;
    while m * s0 * s0 <= n {
        let rem = n - m * s0 * s0;
        let r0 = rem.isqrt();
        if r0 * r0 == rem {
            // rem is odd, so r0 is odd and nonzero; exactly one of +-r0
            // is 1 mod 4.
            let weight = if s0 == 0 { 1 } else { 2 };
            let r = if r0 % 4 == 1 { r0 as i64 } else { -(r0 as i64) };
            total += r * weight;
        }
        s0 += 1;
    }
    Ok(total)
}

/// Twisted sum `S(n) = sum_{d|n} (n/d)*(2/d)` for odd `n >= 1`.
pub fn s_cap(n: u64) -> Result<i64> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::Domain(format!("s_cap requires odd n >= 1, got {n}")));
    }
    let f = factorize(n)?;
    let mut total = 0i64;
    for d in f.divisors() {
        total += (n / d) as i64 * kronecker(2, d as i64);
    }
    Ok(total)
}

/// Coefficient of `q^n` in `q * prod_{k>=1} (1 - q^{6k})^4`, computed as the
/// signed lattice sum
///
/// ```text
/// c(n) = (1/3) * sum (-1)^a * a   over  4n = a^2 + 3b^2,
///        a = 2 (mod 3), b = a + 2 (mod 4),  (a, b) in Z^2.
/// ```
///
/// The division by 3 is always exact; a remainder would indicate an
/// enumeration bug and panics.
pub fn c_coeff(n: u64) -> i64 {
    let target = 4 * n;
    let mut sum = 0i64;
    let mut b0 = 0u64;
    while 3 * b0 * b0 <= target {
        let rem = target - 3 * b0 * b0;
        let a0 = rem.isqrt();
        if a0 * a0 == rem {
            for a in signed(a0) {
                if a.rem_euclid(3) != 2 {
                    continue;
                }
                for b in signed(b0) {
                    if b.rem_euclid(4) == (a + 2).rem_euclid(4) {
                        sum += if a % 2 == 0 { a } else { -a };
                    }
                }
            }
        }
        b0 += 1;
    }
    assert!(sum % 3 == 0, "c_coeff lattice sum {sum} not divisible by 3 at n = {n}");
    sum / 3
}

/// `[v, -v]` without duplicating zero.
fn signed(v: u64) -> impl Iterator<Item = i64> {
    let v = v as i64;
    std::iter::once(v).chain((v != 0).then_some(-v))
}
