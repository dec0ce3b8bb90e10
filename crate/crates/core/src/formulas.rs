//! Registry of closed-form evaluators for the representation counts.
//!
//! Thirteen quadruples have exact divisor-sum formulas for `t(a,b,c,d; n)`:
//!
//! ```text
//! (1,1,1,1)  (1,1,2,2)  (1,1,3,3)  (1,3,3,9)  (1,3,9,9)  (1,1,3,9)
//! (1,1,4,4)  (1,4,4,4)  (1,2,2,4)  (1,2,4,4)  (1,1,9,9)  (1,9,9,9)
//! (1,1,1,9)
//! ```
//!
//! and a fourteenth, `(1,1,3,4)`, has a conjectured formula that is routed to
//! the conjecture checker instead of [`t_formula`]. A second registry holds
//! closed forms for `N(a,b,c,d; n)` on restricted residue classes; those are
//! the ingredients the `t` formulas were assembled from, and
//! [`t_by_inclusion_exclusion`] rebuilds any `t` value from sixteen `N`
//! counts as a structural cross-check.
//!
//! Lookups are permutation-insensitive (both counts are symmetric in the
//! coefficients). Rational prefactors such as 4/3 or 1/2 are evaluated as
//! exact integer divisions; a nonzero remainder means a misimplemented
//! formula and comes back as [`Error::Invariant`] rather than a rounded
//! value.

use crate::arith::{
    c_coeff, decompose, factorize, kronecker, s_cap, s_m, sigma, sigma_div, twisted_sums,
};
use crate::error::{Error, Result};
use crate::oracle::{count_n, count_t_prime, Form};

/// Provenance class of a registry entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaStatus {
    /// Derived together with the rest of this collection.
    Theorem,
    /// Imported as a known result and used as an ingredient.
    Cited,
    /// Conjectured only; excluded from the theorem suites.
    Conjectured,
}

/// A closed form for `t(form; n)`, total on all `n >= 0`.
pub struct TFormula {
    form: Form,
    pub label: &'static str,
    pub status: FormulaStatus,
    eval: fn(u64) -> Result<i64>,
    branch_modulus: u64,
    branch_classes: &'static [&'static [u64]],
}

impl TFormula {
    pub fn form(&self) -> Form {
        self.form
    }

    pub fn eval(&self, n: u64) -> Result<i64> {
        (self.eval)(n)
    }

    /// The residue classes (modulo [`Self::branch_modulus`]) the evaluator
    /// branches on; they must partition all of `n >= 0`.
    pub fn branch_classes(&self) -> &'static [&'static [u64]] {
        self.branch_classes
    }

    pub fn branch_modulus(&self) -> u64 {
        self.branch_modulus
    }
}

/// A closed form for `N(form; n)` valid on a residue/divisibility domain.
pub struct NFormula {
    form: Form,
    pub label: &'static str,
    pub status: FormulaStatus,
    domain: fn(u64) -> bool,
    eval: fn(u64) -> Result<i64>,
}

impl NFormula {
    pub fn form(&self) -> Form {
        self.form
    }

    pub fn in_domain(&self, m: u64) -> bool {
        m >= 1 && (self.domain)(m)
    }

    pub fn eval(&self, m: u64) -> Result<i64> {
        if !self.in_domain(m) {
            return Err(Error::Domain(format!(
                "n = {m} is outside the validity domain of {}",
                self.label
            )));
        }
        (self.eval)(m)
    }
}

/// Evaluate the registered closed form for `t(form; n)`.
pub fn t_formula(form: Form, n: u64) -> Result<i64> {
    let key = form.canonical();
    for entry in T_REGISTRY {
        if entry.form.canonical() == key {
            if entry.status == FormulaStatus::Conjectured {
                return Err(Error::UnsupportedForm(format!(
                    "t({form}) has only a conjectured formula; use the conjecture checker"
                )));
            }
            return entry.eval(n);
        }
    }
    Err(Error::UnsupportedForm(format!("no closed formula registered for t({form})")))
}

/// Evaluate the registered closed form for `N(form; m)` if `m` lies in its
/// validity domain.
pub fn n_formula(form: Form, m: u64) -> Result<i64> {
    let key = form.canonical();
    let mut known_form = false;
    for entry in N_REGISTRY {
        if entry.form.canonical() == key {
            known_form = true;
            if entry.in_domain(m) {
                return entry.eval(m);
            }
        }
    }
    if known_form {
        Err(Error::Domain(format!("n = {m} is outside the validity domain for N({form})")))
    } else {
        Err(Error::UnsupportedForm(format!("no closed formula registered for N({form})")))
    }
}

/// All `t` entries, the conjectured one included.
pub fn t_registry() -> &'static [TFormula] {
    T_REGISTRY
}

/// All registered `N` closed forms.
pub fn n_registry() -> &'static [NFormula] {
    N_REGISTRY
}

/// The thirteen quadruples [`t_formula`] accepts.
pub fn supported_t_forms() -> impl Iterator<Item = Form> {
    T_REGISTRY.iter().filter(|e| e.status != FormulaStatus::Conjectured).map(|e| e.form)
}

/// The quadruple with the conjectured formula.
pub const CONJECTURE_FORM: Form = Form::of(1, 1, 3, 4);

/// Closed-form capacity constant `16 + 4*i1*(i1-1)*i2 + 8*i1*i3`, where `i_j`
/// counts coefficients equal to `j`. Defined for coefficient sums up to 8.
///
/// This is the constant that should link `N(form; 8n + sum)` to
/// `t'(form; n)`; compare with [`derived_capacity_constant`], which measures
/// the ratio directly (the two disagree at `(1,1,1,1)` — see the relations
/// verification suite).
pub fn capacity_constant(form: Form) -> Result<u64> {
    if form.sum() > 8 {
        return Err(Error::Domain(format!(
            "capacity constant needs coefficient sum <= 8, got {}",
            form.sum()
        )));
    }
    let count = |v: u64| form.coefficients().iter().filter(|&&k| k == v).count() as u64;
    let (i1, i2, i3) = (count(1), count(2), count(3));
    Ok(16 + 4 * i1 * (i1.saturating_sub(1)) * i2 + 8 * i1 * i3)
}

/// Capacity constant measured from enumeration: the ratio of
/// `N(form; sum)` (or `N(form; 8) - N(form; 2)` when the sum is 8) to
/// `t'(form; 0)`.
pub fn derived_capacity_constant(form: Form, budget: u64) -> Result<u64> {
    let sum = form.sum();
    if sum > 8 {
        return Err(Error::Domain(format!(
            "capacity constant needs coefficient sum <= 8, got {sum}"
        )));
    }
    let numerator = if sum == 8 {
        let big = count_n(form, 8, budget)?;
        let small = count_n(form, 2, budget)?;
        big.checked_sub(small).ok_or_else(|| {
            Error::Invariant(format!("N({form}; 8) < N({form}; 2): {big} < {small}"))
        })?
    } else {
        count_n(form, sum, budget)?
    };
    let t0 = count_t_prime(form, 0, budget)?;
    if t0 == 0 || numerator % t0 != 0 {
        return Err(Error::Invariant(format!(
            "capacity ratio for ({form}) is not integral: {numerator}/{t0}"
        )));
    }
    Ok(numerator / t0)
}

/// Rebuild `t(form; n)` from the sixteen counts `N(f'; 8n + sum)` where `f'`
/// ranges over all ways of multiplying a subset of the coefficients by 4,
/// signed by the parity of the subset.
pub fn t_by_inclusion_exclusion(form: Form, n: u64, budget: u64) -> Result<u64> {
    let coeffs = form.coefficients();
    let target = 8 * n + form.sum();
    let mut acc = 0i64;
    for mask in 0u32..16 {
        let mut scaled = coeffs;
        for (bit, k) in scaled.iter_mut().enumerate() {
            if mask & (1 << bit) != 0 {
                *k *= 4;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        let count =
            count_n(Form::new(scaled[0], scaled[1], scaled[2], scaled[3])?, target, budget)?;
        acc += sign * s64(count);
    }
    u64::try_from(acc)
        .map_err(|_| Error::Invariant(format!("signed combination for t({form}; {n}) is {acc}")))
}

/// The conjectured closed form for `t(1,1,3,4; n)`: with
/// `8n + 9 = 3^beta * n1` (`3` does not divide `n1`),
///
/// ```text
/// (1/2) * (3^(beta+1) * (3/n1) - 1) * sum_{d | n1} d*(3/d)
///   - sum (-1)^((a-1)/2) * a   over  4(8n+9) = a^2 + 3b^2, a,b >= 1, a odd.
/// ```
pub fn conjectured_t_1134(n: u64) -> Result<i64> {
    let m = 8 * n + 9;
    let (beta, n1) = three_part(m);
    let lead = 3i64
        .checked_pow(beta + 1)
        .and_then(|p| p.checked_mul(kronecker(3, s64(n1))))
        .and_then(|p| p.checked_sub(1))
        .expect("overflow in conjectured formula");
    let divisor_part = exact_div(
        lead.checked_mul(twisted3(n1)).expect("overflow in conjectured formula"),
        2,
        "conjectured t(1,1,3,4)",
    )?;

    let target = 4 * m;
    let mut lattice = 0i64;
    let mut a = 1u64;
    while a * a <= target {
        let rem = target - a * a;
        if rem > 0 && rem % 3 == 0 {
            let b2 = rem / 3;
            let b = b2.isqrt();
            if b >= 1 && b * b == b2 {
                let sign = if a % 4 == 1 { 1 } else { -1 };
                lattice += sign * a as i64;
            }
        }
        a += 2;
    }
    Ok(divisor_part - lattice)
}

// ---------------------------------------------------------------------------
// t evaluators
// ---------------------------------------------------------------------------

fn t_1111(n: u64) -> Result<i64> {
    checked_mul(16, s64(sigma(s64(2 * n + 1))))
}

fn t_1122(n: u64) -> Result<i64> {
    // 4 * sum_{d | 4n+3} (d - (-1)^((d-1)/2)); every divisor is odd
    let sum: i64 =
        divisors(4 * n + 3).iter().map(|&d| s64(d) - if d % 4 == 1 { 1 } else { -1 }).sum();
    checked_mul(4, sum)
}

fn t_1133(n: u64) -> Result<i64> {
    let (alpha, _, n1) = decompose(n + 1);
    let s = s64(sigma(s64(n1)));
    if n % 2 == 0 {
        checked_mul(16, s)
    } else {
        checked_mul(pow2(alpha + 4), s)
    }
}

fn t_1339(n: u64) -> Result<i64> {
    let (alpha, _, n1) = decompose(n + 2);
    let s = s64(sigma(s64(n1)));
    match n % 6 {
        2 | 5 => Ok(0),
        1 => checked_mul(16, s),
        4 => checked_mul(pow2(alpha + 4), s),
        3 => checked_mul(8, s),
        0 => checked_mul(pow2(alpha + 3), s),
        _ => unreachable!(),
    }
}

fn t_1399(n: u64) -> Result<i64> {
    match n % 3 {
        2 => Ok(0),
        0 => exact_div(4 * twisted3(4 * n + 11), 3, "t(1,3,9,9)"),
        1 => three_power_branch(4 * n + 11),
        _ => unreachable!(),
    }
}

fn t_1139(n: u64) -> Result<i64> {
    match n % 3 {
        0 => exact_div(-8 * twisted3(4 * n + 7), 3, "t(1,1,3,9)"),
        1 => exact_div(8 * twisted3(4 * n + 7), 3, "t(1,1,3,9)"),
        2 => three_power_branch(4 * n + 7),
        _ => unreachable!(),
    }
}

/// Shared branch of t(1,3,9,9) and t(1,1,3,9): with `m = 3^beta * n1`,
/// `2 * (3^(beta-1) * (3/n1) - 1) * sum_{d | n1} d*(3/d)`. Only reached when
/// `3 | m`, so `beta >= 1`.
fn three_power_branch(m: u64) -> Result<i64> {
    let (beta, n1) = three_part(m);
    debug_assert!(beta >= 1);
    let lead = 3i64.checked_pow(beta - 1).expect("overflow") * kronecker(3, s64(n1)) - 1;
    checked_mul(2, checked_mul(lead, twisted3(n1))?)
}

fn t_1144(n: u64) -> Result<i64> {
    let m = 4 * n + 5;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    checked_mul(2, s64(sigma(s64(m))) + sign * s_m(4, m)?)
}

fn t_1444(n: u64) -> Result<i64> {
    let m = 8 * n + 13;
    exact_div(s64(sigma(s64(m))) - 3 * s_m(4, m)?, 2, "t(1,4,4,4)")
}

fn t_1224(n: u64) -> Result<i64> {
    let m = 8 * n + 9;
    Ok(s64(sigma(s64(m))) - s_m(4, m)?)
}

fn t_1244(n: u64) -> Result<i64> {
    let m = 8 * n + 11;
    Ok(-twisted2(m) - s_m(2, m)?)
}

fn t_1199(n: u64) -> Result<i64> {
    let m = 2 * n + 5;
    match n % 3 {
        0 => exact_div(8 * s64(sigma(s64(m))), 3, "t(1,1,9,9)"),
        1 => exact_div(8 * (s64(sigma(s64(m))) - c_coeff(m)), 3, "t(1,1,9,9)"),
        2 => match n % 9 {
            2 => checked_mul(16, s64(sigma_div(m, 9))),
            5 | 8 => Ok(0),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

fn t_1999(n: u64) -> Result<i64> {
    let m = 2 * n + 7;
    match n % 9 {
        1 => checked_mul(16, s64(sigma_div(m, 9))),
        2 | 4 | 5 | 7 | 8 => Ok(0),
        0 | 3 | 6 => exact_div(4 * (s64(sigma(s64(m))) - c_coeff(m)), 3, "t(1,9,9,9)"),
        _ => unreachable!(),
    }
}

fn t_1119(n: u64) -> Result<i64> {
    let m = 2 * n + 3;
    match n % 3 {
        0 => Ok(4 * s64(sigma(s64(m))) + 12 * s64(sigma_div(m, 9))),
        1 => checked_mul(8, s64(sigma(s64(m)))),
        2 => checked_mul(4, s64(sigma(s64(m))) - c_coeff(m)),
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// N evaluators
// ---------------------------------------------------------------------------

fn n_1399(m: u64) -> Result<i64> {
    match m % 3 {
        0 => {
            let s = twisted_sums(m / 3);
            Ok(2 * s.a + 2 * s.b - s.c - s.d)
        }
        1 => {
            let s = twisted_sums(m);
            exact_div(6 * s.a - 2 * s.b + 3 * s.c - s.d, 3, "N(1,3,9,9)")
        }
        _ => Ok(0),
    }
}

fn n_1139(m: u64) -> Result<i64> {
    match m % 3 {
        0 => {
            let s = twisted_sums(m / 3);
            Ok(2 * s.a + 2 * s.b - s.c - s.d)
        }
        1 => {
            let s = twisted_sums(m);
            exact_div(12 * s.a - 4 * s.b + 6 * s.c - 2 * s.d, 3, "N(1,1,3,9)")
        }
        2 => {
            let s = twisted_sums(m);
            exact_div(6 * s.a - 2 * s.b + 3 * s.c - s.d, 3, "N(1,1,3,9)")
        }
        _ => unreachable!(),
    }
}

fn n_1144(m: u64) -> Result<i64> {
    checked_mul(4, s64(sigma(s64(m / 2))))
}

/// Shared by N(1,1,16,16) and N(1,1,4,16) on n = 2 (mod 8).
fn n_half_twisted(m: u64) -> Result<i64> {
    let h = m / 2;
    Ok(2 * s64(sigma(s64(h))) + 2 * kronecker(2, s64(h)) * s_m(4, h)?)
}

fn n_1444(m: u64) -> Result<i64> {
    checked_mul(2, s64(sigma(s64(m))))
}

fn n_1_4_16_16(m: u64) -> Result<i64> {
    let eps = if ((m - 1) / 4) % 2 == 0 { 1 } else { -1 };
    exact_div(s64(sigma(s64(m))) + (2 + eps) * s_m(4, m)?, 2, "N(1,4,16,16)")
}

/// sigma(n) + S_4(n); shared by several forms on their own domains.
fn n_sigma_plus_s4(m: u64) -> Result<i64> {
    Ok(s64(sigma(s64(m))) + s_m(4, m)?)
}

fn n_1224(m: u64) -> Result<i64> {
    checked_mul(2, s64(sigma(s64(m))))
}

/// sigma(n) + (-1)^((n-1)/4) * S_4(n) on n = 1 (mod 4).
fn n_sigma_signed_s4(m: u64) -> Result<i64> {
    let eps = if ((m - 1) / 4) % 2 == 0 { 1 } else { -1 };
    Ok(s64(sigma(s64(m))) + eps * s_m(4, m)?)
}

/// S(n) + S_2(n) on n = 1, 3 (mod 8).
fn n_s_plus_s2(m: u64) -> Result<i64> {
    Ok(s_cap(m)? + s_m(2, m)?)
}

fn n_1244(m: u64) -> Result<i64> {
    checked_mul(2, s_cap(m)?)
}

fn n_1199(m: u64) -> Result<i64> {
    match m % 6 {
        2 | 4 => Ok(4 * s64(sigma(s64(m))) - 8 * s64(sigma(s64(m / 2)))),
        5 => exact_div(4 * s64(sigma(s64(m))), 3, "N(1,1,9,9)"),
        0 => Ok(8 * s64(sigma_div(m, 9)) - 32 * s64(sigma_div(m, 36))),
        _ => unreachable!("outside domain"),
    }
}

fn n_1999(m: u64) -> Result<i64> {
    match m % 6 {
        3 => checked_mul(8, s64(sigma_div(m, 9))),
        4 => Ok(2 * s64(sigma(s64(m))) - 4 * s64(sigma(s64(m / 2)))),
        0 => Ok(8 * s64(sigma_div(m, 9)) - 32 * s64(sigma_div(m, 36))),
        _ => unreachable!("outside domain"),
    }
}

/// Shared by the seven forms with coefficients from {1, 4, 9, 36} whose
/// closed form branches modulo 12 (valid on 4 | n).
fn n_mod12_family(m: u64) -> Result<i64> {
    match m % 12 {
        4 => exact_div(
            4 * s64(sigma(s64(m / 4))) - 16 * s64(sigma_div(m, 16)) + 8 * c_coeff(m / 4),
            3,
            "N mod-12 family",
        ),
        8 => {
            exact_div(4 * s64(sigma(s64(m / 4))) - 16 * s64(sigma_div(m, 16)), 3, "N mod-12 family")
        }
        0 => Ok(8 * s64(sigma_div(m, 36)) - 32 * s64(sigma_div(m, 144))),
        _ => unreachable!("outside domain"),
    }
}

// ---------------------------------------------------------------------------
// registries
// ---------------------------------------------------------------------------

const TOTAL: &[&[u64]] = &[&[0]];
const PARITY: &[&[u64]] = &[&[0], &[1]];
const MOD3: &[&[u64]] = &[&[0], &[1], &[2]];

static T_REGISTRY: &[TFormula] = &[
    TFormula {
        form: Form::of(1, 1, 1, 1),
        label: "t(1,1,1,1) = 16 sigma(2n+1)",
        status: FormulaStatus::Cited,
        eval: t_1111,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 1, 2, 2),
        label: "t(1,1,2,2) = 4 sum_{d|4n+3} (d - (-1)^((d-1)/2))",
        status: FormulaStatus::Cited,
        eval: t_1122,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 1, 3, 3),
        label: "t(1,1,3,3) via n+1 = 2^a 3^b n1",
        status: FormulaStatus::Theorem,
        eval: t_1133,
        branch_modulus: 2,
        branch_classes: PARITY,
    },
    TFormula {
        form: Form::of(1, 3, 3, 9),
        label: "t(1,3,3,9) via n+2 = 2^a 3^b n1, branching mod 6",
        status: FormulaStatus::Theorem,
        eval: t_1339,
        branch_modulus: 6,
        branch_classes: &[&[2, 5], &[1], &[4], &[3], &[0]],
    },
    TFormula {
        form: Form::of(1, 3, 9, 9),
        label: "t(1,3,9,9) via twisted divisor sums of 4n+11",
        status: FormulaStatus::Theorem,
        eval: t_1399,
        branch_modulus: 3,
        branch_classes: &[&[2], &[0], &[1]],
    },
    TFormula {
        form: Form::of(1, 1, 3, 9),
        label: "t(1,1,3,9) via twisted divisor sums of 4n+7",
        status: FormulaStatus::Theorem,
        eval: t_1139,
        branch_modulus: 3,
        branch_classes: MOD3,
    },
    TFormula {
        form: Form::of(1, 1, 4, 4),
        label: "t(1,1,4,4) = 2(sigma(4n+5) + (-1)^n S_4(4n+5))",
        status: FormulaStatus::Theorem,
        eval: t_1144,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 4, 4, 4),
        label: "t(1,4,4,4) = (sigma(8n+13) - 3 S_4(8n+13))/2",
        status: FormulaStatus::Theorem,
        eval: t_1444,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 2, 2, 4),
        label: "t(1,2,2,4) = sigma(8n+9) - S_4(8n+9)",
        status: FormulaStatus::Theorem,
        eval: t_1224,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 2, 4, 4),
        label: "t(1,2,4,4) = -sum_{d|8n+11} d(2/d) - S_2(8n+11)",
        status: FormulaStatus::Theorem,
        eval: t_1244,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
    TFormula {
        form: Form::of(1, 1, 9, 9),
        label: "t(1,1,9,9) via sigma and c at 2n+5, branching mod 9",
        status: FormulaStatus::Theorem,
        eval: t_1199,
        branch_modulus: 9,
        branch_classes: &[&[0, 3, 6], &[1, 4, 7], &[2], &[5, 8]],
    },
    TFormula {
        form: Form::of(1, 9, 9, 9),
        label: "t(1,9,9,9) via sigma and c at 2n+7, branching mod 9",
        status: FormulaStatus::Theorem,
        eval: t_1999,
        branch_modulus: 9,
        branch_classes: &[&[1], &[2, 4, 5, 7, 8], &[0, 3, 6]],
    },
    TFormula {
        form: Form::of(1, 1, 1, 9),
        label: "t(1,1,1,9) via sigma and c at 2n+3, branching mod 3",
        status: FormulaStatus::Theorem,
        eval: t_1119,
        branch_modulus: 3,
        branch_classes: MOD3,
    },
    TFormula {
        form: CONJECTURE_FORM,
        label: "t(1,1,3,4) conjectured via 8n+9 = 3^b n1 and a lattice sum",
        status: FormulaStatus::Conjectured,
        eval: conjectured_t_1134,
        branch_modulus: 1,
        branch_classes: TOTAL,
    },
];

static N_REGISTRY: &[NFormula] = &[
    NFormula {
        form: Form::of(1, 3, 9, 9),
        label: "N(1,3,9,9) via twisted sums A, B, C, D",
        status: FormulaStatus::Cited,
        domain: |_| true,
        eval: n_1399,
    },
    NFormula {
        form: Form::of(1, 1, 3, 9),
        label: "N(1,1,3,9) via twisted sums A, B, C, D",
        status: FormulaStatus::Cited,
        domain: |_| true,
        eval: n_1139,
    },
    NFormula {
        form: Form::of(1, 1, 4, 4),
        label: "N(1,1,4,4) = 4 sigma(n/2) on n = 2 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 2,
        eval: n_1144,
    },
    NFormula {
        form: Form::of(1, 1, 16, 16),
        label: "N(1,1,16,16) = 2 sigma(n/2) + 2 (2/(n/2)) S_4(n/2) on n = 2 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 2,
        eval: n_half_twisted,
    },
    NFormula {
        form: Form::of(1, 1, 4, 16),
        label: "N(1,1,4,16) = 2 sigma(n/2) + 2 (2/(n/2)) S_4(n/2) on n = 2 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 2,
        eval: n_half_twisted,
    },
    NFormula {
        form: Form::of(1, 4, 4, 4),
        label: "N(1,4,4,4) = 2 sigma(n) on n = 1 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 1,
        eval: n_1444,
    },
    NFormula {
        form: Form::of(1, 4, 16, 16),
        label: "N(1,4,16,16) = (sigma(n) + (2 + (-1)^((n-1)/4)) S_4(n))/2 on n = 1 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 1,
        eval: n_1_4_16_16,
    },
    NFormula {
        form: Form::of(1, 4, 4, 16),
        label: "N(1,4,4,16) = sigma(n) + S_4(n) on n = 1 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 1,
        eval: n_sigma_plus_s4,
    },
    NFormula {
        form: Form::of(1, 2, 2, 4),
        label: "N(1,2,2,4) = 2 sigma(n) on odd n",
        status: FormulaStatus::Cited,
        domain: |m| m % 2 == 1,
        eval: n_1224,
    },
    NFormula {
        form: Form::of(1, 2, 2, 16),
        label: "N(1,2,2,16) = sigma(n) + S_4(n) on n = 1 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 1,
        eval: n_sigma_plus_s4,
    },
    NFormula {
        form: Form::of(1, 8, 8, 16),
        label: "N(1,8,8,16) = sigma(n) + S_4(n) on n = 1 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 1,
        eval: n_sigma_plus_s4,
    },
    NFormula {
        form: Form::of(1, 2, 8, 16),
        label: "N(1,2,8,16) = sigma(n) + S_4(n) on n = 1 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 1,
        eval: n_sigma_plus_s4,
    },
    NFormula {
        form: Form::of(1, 2, 4, 8),
        label: "N(1,2,4,8) = sigma(n) + (-1)^((n-1)/4) S_4(n) on n = 1 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 1,
        eval: n_sigma_signed_s4,
    },
    NFormula {
        form: Form::of(1, 4, 8, 8),
        label: "N(1,4,8,8) = sigma(n) + (-1)^((n-1)/4) S_4(n) on n = 1 (mod 4)",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 1,
        eval: n_sigma_signed_s4,
    },
    NFormula {
        form: Form::of(1, 2, 4, 16),
        label: "N(1,2,4,16) = S(n) + S_2(n) on n = 1, 3 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 1 || m % 8 == 3,
        eval: n_s_plus_s2,
    },
    NFormula {
        form: Form::of(1, 2, 16, 16),
        label: "N(1,2,16,16) = S(n) + S_2(n) on n = 1, 3 (mod 8)",
        status: FormulaStatus::Cited,
        domain: |m| m % 8 == 1 || m % 8 == 3,
        eval: n_s_plus_s2,
    },
    NFormula {
        form: Form::of(1, 2, 4, 4),
        label: "N(1,2,4,4) = 2 S(n) on odd n",
        status: FormulaStatus::Cited,
        domain: |m| m % 2 == 1,
        eval: n_1244,
    },
    NFormula {
        form: Form::of(1, 1, 9, 9),
        label: "N(1,1,9,9) piecewise in sigma, on n = 0, 2, 4, 5 (mod 6)",
        status: FormulaStatus::Cited,
        domain: |m| matches!(m % 6, 0 | 2 | 4 | 5),
        eval: n_1199,
    },
    NFormula {
        form: Form::of(1, 9, 9, 9),
        label: "N(1,9,9,9) piecewise in sigma, on n = 0, 3, 4 (mod 6)",
        status: FormulaStatus::Cited,
        domain: |m| matches!(m % 6, 0 | 3 | 4),
        eval: n_1999,
    },
    NFormula {
        form: Form::of(1, 1, 36, 36),
        label: "N(1,1,36,36) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(1, 4, 36, 36),
        label: "N(1,4,36,36) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(1, 1, 9, 36),
        label: "N(1,1,9,36) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(1, 4, 9, 9),
        label: "N(1,4,9,9) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(1, 4, 9, 36),
        label: "N(1,4,9,36) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(4, 4, 9, 9),
        label: "N(4,4,9,9) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
    NFormula {
        form: Form::of(4, 4, 9, 36),
        label: "N(4,4,9,36) piecewise mod 12 on 4 | n",
        status: FormulaStatus::Cited,
        domain: |m| m % 4 == 0,
        eval: n_mod12_family,
    },
];

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn s64(x: u64) -> i64 {
    i64::try_from(x).expect("value exceeds i64")
}

fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or_else(|| Error::Invariant(format!("overflow computing {a} * {b}")))
}

fn exact_div(value: i64, divisor: i64, what: &str) -> Result<i64> {
    if value % divisor != 0 {
        return Err(Error::Invariant(format!("{what}: {value} is not divisible by {divisor}")));
    }
    Ok(value / divisor)
}

fn divisors(m: u64) -> Vec<u64> {
    factorize(m).expect("positive argument").divisors()
}

/// `sum_{d | m} d * (3/d)`.
fn twisted3(m: u64) -> i64 {
    divisors(m).iter().map(|&d| s64(d) * kronecker(3, s64(d))).sum()
}

/// `sum_{d | m} d * (2/d)`.
fn twisted2(m: u64) -> i64 {
    divisors(m).iter().map(|&d| s64(d) * kronecker(2, s64(d))).sum()
}

/// Split `m = 3^beta * n1` with `3` not dividing `n1`.
fn three_part(m: u64) -> (u32, u64) {
    let mut beta = 0;
    let mut n1 = m;
    while n1 % 3 == 0 {
        n1 /= 3;
        beta += 1;
    }
    (beta, n1)
}

fn pow2(e: u32) -> i64 {
    2i64.checked_pow(e).expect("power of two exceeds i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{count_t, DEFAULT_BUDGET};

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn t_formula_spot_values() {
        let cases: &[([u64; 4], u64, i64)] = &[
            ([1, 3, 9, 9], 3, 32),
            ([1, 3, 9, 9], 2, 0),
            ([1, 1, 4, 4], 1, 32),
            ([1, 4, 4, 4], 0, 16),
            ([1, 2, 4, 4], 1, 16),
            ([1, 2, 2, 4], 1, 16),
            ([1, 1, 9, 9], 1, 32),
            ([1, 9, 9, 9], 3, 16),
            ([1, 1, 1, 9], 3, 64),
            ([1, 1, 1, 9], 2, 48),
            ([1, 3, 3, 9], 4, 32),
            ([1, 1, 3, 9], 2, 16),
        ];
        for &([a, b, c, d], n, expect) in cases {
            let form = Form::of(a, b, c, d);
            assert_eq!(t_formula(form, n).unwrap(), expect, "t({form}; {n})");
        }
    }

    #[test]
    fn t_formula_is_permutation_insensitive() {
        assert_eq!(t_formula(Form::of(9, 9, 3, 1), 3).unwrap(), 32);
        assert_eq!(t_formula(Form::of(4, 1, 4, 1), 1).unwrap(), 32);
    }

    #[test]
    fn t_formula_rejects_unknown_and_conjectured_forms() {
        assert!(matches!(t_formula(Form::of(2, 2, 2, 2), 1), Err(Error::UnsupportedForm(_))));
        let err = t_formula(CONJECTURE_FORM, 1).unwrap_err();
        assert!(err.to_string().contains("conjecture"), "{err}");
    }

    #[test]
    fn every_t_formula_value_is_sixteen_at_zero() {
        for form in supported_t_forms() {
            assert_eq!(t_formula(form, 0).unwrap(), 16, "t({form}; 0)");
        }
    }

    #[test]
    fn t_formulas_match_enumeration_on_a_short_range() {
        for form in supported_t_forms() {
            for n in 0..=40 {
                let expect = count_t(form, n, B).unwrap() as i64;
                assert_eq!(t_formula(form, n).unwrap(), expect, "t({form}; {n})");
            }
        }
    }

    #[test]
    fn n_formula_spot_values() {
        assert_eq!(n_formula(Form::of(1, 1, 4, 4), 10).unwrap(), 24);
        assert_eq!(n_formula(Form::of(1, 4, 4, 4), 13).unwrap(), 28);
        assert_eq!(n_formula(Form::of(1, 3, 9, 9), 22).unwrap(), 40);
        assert_eq!(n_formula(Form::of(1, 1, 9, 9), 5).unwrap(), 8);
    }

    #[test]
    fn n_formula_domains() {
        assert!(matches!(n_formula(Form::of(1, 1, 4, 4), 3), Err(Error::Domain(_))));
        assert!(matches!(n_formula(Form::of(5, 5, 5, 5), 1), Err(Error::UnsupportedForm(_))));
    }

    #[test]
    fn n_formulas_match_enumeration_on_a_short_range() {
        for entry in n_registry() {
            for m in 1..=120u64 {
                if !entry.in_domain(m) {
                    continue;
                }
                let expect = count_n(entry.form(), m, B).unwrap() as i64;
                assert_eq!(entry.eval(m).unwrap(), expect, "{} at {m}", entry.label);
            }
        }
    }

    #[test]
    fn capacity_constants() {
        assert_eq!(capacity_constant(Form::of(1, 1, 2, 2)).unwrap(), 32);
        assert_eq!(capacity_constant(Form::of(1, 1, 1, 3)).unwrap(), 40);
        assert_eq!(capacity_constant(Form::of(1, 1, 3, 3)).unwrap(), 48);
        assert_eq!(capacity_constant(Form::of(1, 1, 1, 1)).unwrap(), 16);
        assert!(capacity_constant(Form::of(3, 3, 3, 3)).is_err());

        assert_eq!(derived_capacity_constant(Form::of(1, 1, 2, 2), B).unwrap(), 32);
        assert_eq!(derived_capacity_constant(Form::of(1, 1, 3, 3), B).unwrap(), 48);
        // the one quadruple where the closed form and the ratio disagree
        assert_eq!(derived_capacity_constant(Form::of(1, 1, 1, 1), B).unwrap(), 24);
    }

    #[test]
    fn inclusion_exclusion_rebuilds_t() {
        assert_eq!(t_by_inclusion_exclusion(Form::of(1, 1, 4, 4), 0, B).unwrap(), 16);
        assert_eq!(t_by_inclusion_exclusion(Form::of(1, 2, 2, 4), 1, B).unwrap(), 16);
        assert_eq!(t_by_inclusion_exclusion(Form::of(1, 1, 1, 1), 0, B).unwrap(), 16);
    }

    #[test]
    fn conjectured_formula_small_values() {
        assert_eq!(conjectured_t_1134(0).unwrap(), 16);
        assert_eq!(conjectured_t_1134(1).unwrap(), 32);
        for n in 0..=20 {
            let oracle = count_t(CONJECTURE_FORM, n, B).unwrap() as i64;
            assert_eq!(conjectured_t_1134(n).unwrap(), oracle, "n = {n}");
        }
    }

    /// Each piecewise formula's branch classes partition the nonnegative
    /// integers.
    #[test]
    fn branch_classes_partition_every_residue() {
        for entry in t_registry() {
            let modulus = entry.branch_modulus();
            let mut seen = vec![false; modulus as usize];
            for class in entry.branch_classes() {
                for &r in *class {
                    assert!(r < modulus, "{}: residue {r} out of range", entry.label);
                    assert!(!seen[r as usize], "{}: residue {r} covered twice", entry.label);
                    seen[r as usize] = true;
                }
            }
            assert!(seen.iter().all(|&s| s), "{}: uncovered residue", entry.label);
        }
    }
}
