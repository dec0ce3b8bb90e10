//! Batch verification harness: sweeps every closed form against the
//! enumeration oracle, checks the theta-series identities to a truncation
//! order, replays the structural relations between `N`, `N0`, `t` and `t'`,
//! and runs the conjecture checker for `t(1,1,3,4)`.
//!
//! Each suite returns a [`Report`]: deterministic for a given (suite, range,
//! budget) regardless of how many threads rayon uses, because the sweep is a
//! parallel map over an ordered case list and results are collected back in
//! order. Counterexamples carry the input and both values, enough to
//! reproduce the comparison with a single `eval --method both` call.
//!
//! Two discrepancies are *expected* and surface as informational notes rather
//! than failures:
//!
//! - the even branch of the `t(1,1,3,3)` formula needs the constant 16
//!   (a variant constant of 4 contradicts the enumeration already at n = 0),
//! - the closed-form capacity constant at `(1,1,1,1)` gives 16 while the
//!   enumeration ratio is 24; the capacity relations are verified with the
//!   enumerated constants.
//!
//! A run with any other deviation anywhere is a failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{c_coeff, decompose, sigma};
use crate::error::Error;
use crate::formulas::capacity_constant;
use crate::formulas::{
    conjectured_t_1134, derived_capacity_constant, n_registry, supported_t_forms,
    t_by_inclusion_exclusion, t_formula, CONJECTURE_FORM,
};
use crate::oracle::{count_n, count_t, count_t_by_triangles, Form};
use crate::qseries::{eta_pow, gen_n, gen_t_prime, phi, psi, Series};

pub const DEFAULT_T_MAX: u64 = 300;
pub const DEFAULT_N_MAX: u64 = 2000;
pub const DEFAULT_SERIES_ORDER: usize = 512;
pub const DEFAULT_RELATIONS_MAX: u64 = 100;
pub const DEFAULT_CONJECTURE_MAX: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

/// One evaluated comparison: the enumerated value and the formula value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub input: String,
    pub oracle: i64,
    pub formula: i64,
}

impl Comparison {
    pub fn matched(&self) -> bool {
        self.oracle == self.formula
    }
}

/// Outcome of one verification suite.
///
/// `status` is `pass` exactly when `counterexamples` is empty and the budget
/// was not hit; counterexamples appear in ascending input order (the sweep
/// order). `informational` carries expected findings that are not failures.
/// `rows` holds every evaluated comparison for optional CSV dumps and is not
/// serialized.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub range: (u64, u64),
    pub status: Status,
    pub cases: u64,
    pub counterexamples: Vec<Comparison>,
    pub informational: Vec<String>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub rows: Vec<Comparison>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

type Case = (String, crate::error::Result<(i64, i64)>);

fn assemble(
    suite: &str,
    range: (u64, u64),
    cases: Vec<Case>,
    mut informational: Vec<String>,
    start: Instant,
) -> Report {
    let mut rows = Vec::with_capacity(cases.len());
    let mut counterexamples = Vec::new();
    let mut budget_hit = false;
    for (input, outcome) in cases {
        match outcome {
            Ok((oracle, formula)) => {
                let row = Comparison { input, oracle, formula };
                if !row.matched() {
                    counterexamples.push(row.clone());
                }
                rows.push(row);
            }
            Err(Error::Budget { spent, cap }) => {
                if !budget_hit {
                    informational.push(format!(
                        "work budget exhausted at {input} ({spent} iterations, cap {cap}); results are partial"
                    ));
                }
                budget_hit = true;
            }
            Err(other) => panic!("unexpected error at {input}: {other}"),
        }
    }
    let status = if budget_hit {
        Status::BudgetExceeded
    } else if counterexamples.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Report {
        suite: suite.to_string(),
        range,
        status,
        cases: rows.len() as u64,
        counterexamples,
        informational,
        elapsed_ms: start.elapsed().as_millis() as u64,
        rows,
    }
}

fn s64(x: u64) -> i64 {
    i64::try_from(x).expect("count exceeds i64")
}

/// Compare `t_formula` against the enumeration for every supported quadruple
/// and all `n <= n_max`.
pub fn verify_t_formulas(n_max: u64, budget: u64) -> Report {
    let start = Instant::now();
    let work: Vec<(Form, u64)> =
        supported_t_forms().flat_map(|f| (0..=n_max).map(move |n| (f, n))).collect();
    let cases: Vec<Case> = work
        .into_par_iter()
        .map(|(form, n)| {
            let input = format!("form={form} n={n}");
            let outcome = count_t(form, n, budget)
                .and_then(|oracle| t_formula(form, n).map(|formula| (s64(oracle), formula)));
            (input, outcome)
        })
        .collect();
    assemble("t", (0, n_max), cases, even_branch_finding(budget).into_iter().collect(), start)
}

/// The registered deviation for t(1,1,3,3): the even branch must carry the
/// constant 16, not 4. Re-derives the evidence instead of hardcoding it.
fn even_branch_finding(budget: u64) -> Option<String> {
    let form = Form::of(1, 1, 3, 3);
    let (_, _, n1) = decompose(1);
    let variant = 4 * sigma(n1 as i64);
    let actual = count_t(form, 0, budget).ok()?;
    (variant != actual).then(|| {
        format!(
            "t(1,1,3,3) even branch: constant 16 confirmed (enumeration gives t = {actual} \
             at n = 0; the variant constant 4 would give {variant})"
        )
    })
}

/// Compare every registered `N` closed form against the enumeration on its
/// validity domain, for `1 <= m <= m_max`.
pub fn verify_n_formulas(m_max: u64, budget: u64) -> Report {
    let start = Instant::now();
    let work: Vec<(usize, u64)> = n_registry()
        .iter()
        .enumerate()
        .flat_map(|(i, entry)| {
            (1..=m_max).filter(move |&m| entry.in_domain(m)).map(move |m| (i, m))
        })
        .collect();
    let cases: Vec<Case> = work
        .into_par_iter()
        .map(|(i, m)| {
            let entry = &n_registry()[i];
            let input = format!("form={} m={m}", entry.form());
            let outcome = count_n(entry.form(), m, budget)
                .and_then(|oracle| entry.eval(m).map(|formula| (s64(oracle), formula)));
            (input, outcome)
        })
        .collect();
    assemble("n", (1, m_max), cases, Vec::new(), start)
}

fn series_cases(cases: &mut Vec<Case>, label: &str, lhs: &Series, rhs: &Series) {
    let t = lhs.truncation().min(rhs.truncation());
    for i in 0..=t {
        cases.push((format!("{label} @ q^{i}"), Ok((lhs.coeff(i), rhs.coeff(i)))));
    }
}

/// Check the theta dissection identities, the two octic-progression
/// endpoints, the eta-product route to `c(n)`, and the generating series
/// against direct counts.
///
/// The dissections and the eta check run to `order`; the endpoint
/// comparisons extract every eighth coefficient, so their base series are
/// computed to `8*order + offset` to reach the same order. Generating series
/// are compared with enumeration up to order 50.
pub fn verify_series_identities(order: usize) -> Report {
    let start = Instant::now();
    let t = order;
    let mut cases: Vec<Case> = Vec::new();

    let lhs = phi(1, t);
    let rhs = phi(4, t).add(&psi(8, t).shift(1).scale(2));
    series_cases(&mut cases, "phi(q) = phi(q^4) + 2q psi(q^8)", &lhs, &rhs);

    let lhs = psi(1, t).mul(&psi(3, t));
    let rhs = phi(6, t).mul(&psi(4, t)).add(&psi(12, t).mul(&phi(2, t)).shift(1));
    series_cases(&mut cases, "psi(q)psi(q^3) = phi(q^6)psi(q^4) + q psi(q^12)phi(q^2)", &lhs, &rhs);

    // N(1,3,9,9; 8n+22) = 40 t'(1,3,9,9; n), as series: the coefficients of
    // phi(q)phi(q^3)phi(q^9)^2 along 8n+22 against 40 psi(q)psi(q^3)psi(q^9)^2
    let base = gen_n(Form::of(1, 3, 9, 9), 8 * t + 22);
    let lhs = base.extract(8, 22).expect("offset below truncation");
    let rhs = gen_t_prime(Form::of(1, 3, 9, 9), t).scale(40);
    series_cases(&mut cases, "N(1,3,9,9; 8n+22) = 40 t'(1,3,9,9; n)", &lhs, &rhs);

    // N(1,1,3,9; 8n+14) = 40 t'(1,1,3,9; n)
    let base = gen_n(Form::of(1, 1, 3, 9), 8 * t + 14);
    let lhs = base.extract(8, 14).expect("offset below truncation");
    let rhs = gen_t_prime(Form::of(1, 1, 3, 9), t).scale(40);
    series_cases(&mut cases, "N(1,1,3,9; 8n+14) = 40 t'(1,1,3,9; n)", &lhs, &rhs);

    // q E_6^4 coefficient by coefficient against the signed lattice sum
    let eta = eta_pow(6, 4, t).shift(1);
    for n in 0..=t {
        cases.push((
            format!("q E_6^4 vs lattice sum c(n) @ q^{n}"),
            Ok((c_coeff(n as u64), eta.coeff(n))),
        ));
    }

    // generating series against the enumeration oracle
    let gen_order = 50usize;
    for form in supported_t_forms().chain(std::iter::once(CONJECTURE_FORM)) {
        let series = gen_n(form, gen_order);
        for m in 0..=gen_order {
            let oracle = count_n(form, m as u64, crate::oracle::DEFAULT_BUDGET)
                .map(s64)
                .expect("small count within budget");
            cases.push((format!("gen_n form={form} @ q^{m}"), Ok((oracle, series.coeff(m)))));
        }
        let series = gen_t_prime(form, gen_order);
        for n in 0..=gen_order {
            let oracle =
                crate::oracle::count_t_prime(form, n as u64, crate::oracle::DEFAULT_BUDGET)
                    .map(s64)
                    .expect("small count within budget");
            cases.push((format!("gen_t_prime form={form} @ q^{n}"), Ok((oracle, series.coeff(n)))));
        }
    }

    assemble("series", (0, order as u64), cases, Vec::new(), start)
}

/// Replay the structural relations:
///
/// - `C * t'(F; n) = N(F; 8n + sum)` for small forms (sum <= 7), and
///   `C * t'(F; n) = N(F; 8n+8) - N(F; 2n+2)` when the sum is 8, with `C`
///   taken from the enumeration ratio (closed-form deviations become notes);
/// - the sixteen-count inclusion–exclusion rebuild of `t` on randomized
///   small forms (n <= 30);
/// - 16 | t and agreement of the two independent `t` routes everywhere
///   tested.
pub fn verify_relations(n_max: u64, budget: u64) -> Report {
    let start = Instant::now();
    let mut notes = Vec::new();

    let small_forms: Vec<Form> =
        [[1, 1, 1, 1], [1, 1, 1, 2], [1, 1, 1, 3], [1, 1, 2, 2], [1, 1, 2, 3], [1, 2, 2, 2]]
            .iter()
            .map(|&[a, b, c, d]| Form::of(a, b, c, d))
            .collect();
    let sum8_forms: Vec<Form> =
        [[1, 1, 1, 5], [1, 1, 2, 4], [1, 1, 3, 3], [1, 2, 2, 3], [2, 2, 2, 2]]
            .iter()
            .map(|&[a, b, c, d]| Form::of(a, b, c, d))
            .collect();

    // enumerated capacity constants, with closed-form comparison notes
    let mut constants = Vec::new();
    for &form in small_forms.iter().chain(&sum8_forms) {
        let derived = match derived_capacity_constant(form, budget) {
            Ok(v) => v,
            Err(e) => panic!("capacity constant for ({form}): {e}"),
        };
        let closed_form = capacity_constant(form).expect("sum <= 8");
        if closed_form != derived {
            notes.push(format!(
                "capacity constant ({form}): closed form gives {closed_form}, enumeration \
                 ratio gives {derived}; relations verified with {derived}"
            ));
        }
        constants.push((form, derived));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x7419_0857);
    let random_forms: Vec<Form> = (0..20)
        .map(|_| {
            Form::of(
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
                rng.gen_range(1..=4),
            )
        })
        .collect();

    enum Job {
        Capacity { form: Form, constant: u64, n: u64 },
        FourfoldSplit { form: Form, n: u64 },
        TwoRoutes { form: Form, n: u64 },
        Divisibility { form: Form, n: u64 },
    }

    let mut work: Vec<Job> = Vec::new();
    for &(form, constant) in &constants {
        for n in 0..=n_max {
            work.push(Job::Capacity { form, constant, n });
            work.push(Job::TwoRoutes { form, n });
            work.push(Job::Divisibility { form, n });
        }
    }
    for &form in &random_forms {
        for n in 0..=n_max.min(30) {
            work.push(Job::FourfoldSplit { form, n });
            work.push(Job::TwoRoutes { form, n });
            work.push(Job::Divisibility { form, n });
        }
    }

    let cases: Vec<Case> = work
        .into_par_iter()
        .map(|job| match job {
            Job::Capacity { form, constant, n } => {
                let input = format!("capacity form={form} n={n}");
                let outcome = (|| {
                    let lhs = if form.sum() == 8 {
                        let big = count_n(form, 8 * n + 8, budget)?;
                        let small = count_n(form, 2 * n + 2, budget)?;
                        s64(big) - s64(small)
                    } else {
                        s64(count_n(form, 8 * n + form.sum(), budget)?)
                    };
                    let t = count_t(form, n, budget)?;
                    // t/16 = t'; divisibility has its own job, so divide bluntly
                    Ok((lhs, s64(constant) * s64(t / 16)))
                })();
                (input, outcome)
            }
            Job::FourfoldSplit { form, n } => {
                let input = format!("fourfold-split form={form} n={n}");
                let outcome = count_t(form, n, budget).and_then(|t| {
                    t_by_inclusion_exclusion(form, n, budget).map(|v| (s64(t), s64(v)))
                });
                (input, outcome)
            }
            Job::TwoRoutes { form, n } => {
                let input = format!("two-routes form={form} n={n}");
                let outcome = count_t(form, n, budget)
                    .and_then(|t| count_t_by_triangles(form, n, budget).map(|v| (s64(t), s64(v))));
                (input, outcome)
            }
            Job::Divisibility { form, n } => {
                let input = format!("16-divides-t form={form} n={n}");
                let outcome = count_t(form, n, budget).map(|t| (s64(t % 16), 0));
                (input, outcome)
            }
        })
        .collect();

    assemble("relations", (0, n_max), cases, notes, start)
}

/// Compare the conjectured closed form for `t(1,1,3,4; n)` against the
/// enumeration for all `n <= n_max`. A mismatch is a counterexample to the
/// conjecture and is reported verbatim.
pub fn check_conjecture(n_max: u64, budget: u64) -> Report {
    let start = Instant::now();
    let cases: Vec<Case> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let input = format!("form={CONJECTURE_FORM} n={n}");
            let outcome = count_t(CONJECTURE_FORM, n, budget)
                .and_then(|oracle| conjectured_t_1134(n).map(|formula| (s64(oracle), formula)));
            (input, outcome)
        })
        .collect();
    assemble("conjecture", (0, n_max), cases, Vec::new(), start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn t_suite_small_range() {
        let report = verify_t_formulas(5, B);
        assert_eq!(report.status, Status::Pass);
        assert_eq!(report.cases, 13 * 6);
        assert_eq!(report.informational.len(), 1, "{:?}", report.informational);
        assert!(report.informational[0].contains("t(1,1,3,3)"));
    }

    #[test]
    fn n_suite_small_range() {
        let report = verify_n_formulas(60, B);
        assert_eq!(report.status, Status::Pass, "{:?}", report.counterexamples);
        assert!(report.informational.is_empty());
    }

    #[test]
    fn n_suite_handles_empty_domains() {
        // below m = 4 the seven mod-12 entries have no admissible input
        let report = verify_n_formulas(3, B);
        assert_eq!(report.status, Status::Pass);
        assert_eq!(report.cases, 27);
    }

    #[test]
    fn series_suite_small_order() {
        let report = verify_series_identities(16);
        assert_eq!(report.status, Status::Pass, "{:?}", report.counterexamples);
    }

    #[test]
    fn relations_suite_small_range() {
        let report = verify_relations(3, B);
        assert_eq!(report.status, Status::Pass, "{:?}", report.counterexamples);
        assert_eq!(report.informational.len(), 1, "{:?}", report.informational);
        assert!(report.informational[0].contains("capacity constant (1,1,1,1)"));
    }

    #[test]
    fn conjecture_small_range() {
        let report = check_conjecture(10, B);
        assert_eq!(report.status, Status::Pass, "{:?}", report.counterexamples);
        assert_eq!(report.cases, 11);
    }

    #[test]
    fn budget_exhaustion_is_reported_not_fatal() {
        let report = verify_t_formulas(40, 50);
        assert_eq!(report.status, Status::BudgetExceeded);
        assert!(report.informational.iter().any(|n| n.contains("budget")));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_relations(2, B);
        let b = verify_relations(2, B);
        assert_eq!(a.status, b.status);
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.counterexamples, b.counterexamples);
        assert_eq!(a.informational, b.informational);
    }

    /// Harness self-test: a perturbed series is flagged at the first
    /// differing index.
    #[test]
    fn perturbed_series_is_caught() {
        let good = psi(1, 10);
        let mut coeffs = good.coeffs().to_vec();
        coeffs[6] += 1;
        let bad = Series::new(coeffs);
        let mut cases = Vec::new();
        series_cases(&mut cases, "perturbed", &good, &bad);
        let report = assemble("series", (0, 10), cases, Vec::new(), Instant::now());
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.counterexamples[0].input, "perturbed @ q^6");
        assert_eq!(report.counterexamples[0].oracle, 1);
        assert_eq!(report.counterexamples[0].formula, 2);
    }
}
