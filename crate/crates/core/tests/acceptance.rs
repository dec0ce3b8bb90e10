//! End-to-end acceptance suite.
//!
//! Each test is one exit criterion and prints a single `PASS ...` line when
//! it holds (run with `--nocapture` to see the lines). All comparisons are
//! exact integer identities — there are no tolerances anywhere.

use quadtri::arith::{c_coeff, decompose, kronecker, reduced_a, twisted_sums};
use quadtri::formulas::{n_registry, supported_t_forms};
use quadtri::oracle::{count_n, count_t_prime, Form};
use quadtri::qseries::eta_pow;
use quadtri::verify::{
    check_conjecture, verify_n_formulas, verify_relations, verify_series_identities,
    verify_t_formulas, Status, DEFAULT_CONJECTURE_MAX, DEFAULT_N_MAX, DEFAULT_RELATIONS_MAX,
    DEFAULT_SERIES_ORDER, DEFAULT_T_MAX,
};
use quadtri::DEFAULT_BUDGET;

const B: u64 = DEFAULT_BUDGET;

fn pass(line: &str) {
    println!("PASS {line}");
}

/// Every closed t-formula equals the enumeration for all 13 supported
/// quadruples and n <= 300, exactly.
#[test]
fn t_formulas_match_enumeration_to_300() {
    let report = verify_t_formulas(DEFAULT_T_MAX, B);
    assert_eq!(report.status, Status::Pass, "counterexamples: {:?}", report.counterexamples);
    assert_eq!(report.cases, 13 * (DEFAULT_T_MAX + 1));
    assert_eq!(report.informational.len(), 1, "{:?}", report.informational);
    pass("t formulas = enumeration for 13 quadruples, n in [0, 300]");
}

/// Every registered N-formula equals the enumeration on its validity domain
/// for m <= 2000, exactly.
#[test]
fn n_formulas_match_enumeration_to_2000() {
    let report = verify_n_formulas(DEFAULT_N_MAX, B);
    assert_eq!(report.status, Status::Pass, "counterexamples: {:?}", report.counterexamples);
    assert_eq!(n_registry().len(), 26);
    assert!(report.informational.is_empty(), "{:?}", report.informational);
    pass("N formulas = enumeration on their domains, m in [1, 2000], 26 entries");
}

/// The octic-progression identity N(1,3,9,9; 8n+22) = 40 t'(1,3,9,9; n),
/// checked purely with enumeration counts for n <= 60.
#[test]
fn octic_progression_identity_via_counts() {
    let form = Form::of(1, 3, 9, 9);
    for n in 0..=60u64 {
        let lhs = count_n(form, 8 * n + 22, B).unwrap();
        let rhs = 40 * count_t_prime(form, n, B).unwrap();
        assert_eq!(lhs, rhs, "n = {n}");
    }
    pass("N(1,3,9,9; 8n+22) = 40 t'(1,3,9,9; n) for n in [0, 60] by direct counts");
}

/// Theta dissections, both octic-progression endpoints as series, the
/// eta-product route to c(n), and the generating series against direct
/// counts, all coefficient-exact at truncation order 512.
#[test]
fn series_identities_hold_to_order_512() {
    let report = verify_series_identities(DEFAULT_SERIES_ORDER);
    assert_eq!(report.status, Status::Pass, "counterexamples: {:?}", report.counterexamples);
    assert!(report.informational.is_empty(), "{:?}", report.informational);
    pass("series identities coefficient-exact to order 512 (generating series to 50 vs counts)");
}

/// The two constructions of c(n) agree for all n <= 2000: the signed lattice
/// sum over 4n = a^2 + 3b^2 equals the coefficient of q^n in q E_6^4.
#[test]
fn lattice_sum_equals_eta_power_coefficients_to_2000() {
    let eta = eta_pow(6, 4, 2000).shift(1);
    for n in 0..=2000usize {
        assert_eq!(c_coeff(n as u64), eta.coeff(n), "n = {n}");
    }
    pass("c(n) lattice sum = q E_6^4 coefficients for n in [0, 2000]");
}

/// Multiplicative structure of the twisted sums under n = 2^a 3^b n1 for all
/// n <= 10^4, against direct divisor enumeration, plus the reduced form of A
/// on arguments coprime to 6.
#[test]
fn twisted_sum_multiplicativity_to_10000() {
    for n in 1..=10_000u64 {
        let (alpha, beta, n1) = decompose(n);
        let s = twisted_sums(n);
        let a1 = twisted_sums(n1).a;
        let sign_ab = if (alpha + beta) % 2 == 0 { 1 } else { -1 };
        let sign_abn = if (alpha + beta + ((n1 - 1) / 2) as u32) % 2 == 0 { 1 } else { -1 };
        let p2 = 2i64.pow(alpha);
        let p3 = 3i64.pow(beta);
        assert_eq!(s.a, p2 * p3 * a1, "A at n = {n}");
        assert_eq!(s.b, sign_ab * p2 * kronecker(-3, n1 as i64) * a1, "B at n = {n}");
        assert_eq!(s.c, sign_abn * p3 * a1, "C at n = {n}");
        assert_eq!(s.d, kronecker(3, n1 as i64) * a1, "D at n = {n}");
        if n % 2 != 0 && n % 3 != 0 {
            assert_eq!(reduced_a(n).unwrap(), s.a, "reduced A at n = {n}");
        }
    }
    pass("twisted-sum multiplicativity and the reduced A identity for n <= 10^4");
}

/// Structural relations: the sixteen-count inclusion-exclusion rebuild of t
/// on 20 randomized small forms (n <= 30), the capacity relations with
/// enumerated constants for n <= 100, 16 | t everywhere tested, and
/// agreement of the two independent t routes.
#[test]
fn structural_relations_hold_to_100() {
    let report = verify_relations(DEFAULT_RELATIONS_MAX, B);
    assert_eq!(report.status, Status::Pass, "counterexamples: {:?}", report.counterexamples);
    assert_eq!(report.informational.len(), 1, "{:?}", report.informational);
    pass("capacity, fourfold-split, divisibility and two-route relations for n in [0, 100]");
}

/// The conjectured closed form for t(1,1,3,4; n) matches the enumeration for
/// every n <= 1000.
#[test]
fn conjectured_formula_holds_to_1000() {
    let report = check_conjecture(DEFAULT_CONJECTURE_MAX, B);
    assert_eq!(report.status, Status::Pass, "counterexamples: {:?}", report.counterexamples);
    assert_eq!(report.cases, DEFAULT_CONJECTURE_MAX + 1);
    pass("conjectured t(1,1,3,4) formula = enumeration for n in [0, 1000]");
}

/// Running every suite at its default range produces exactly two
/// informational findings — the even-branch constant of t(1,1,3,3) and the
/// capacity constant at (1,1,1,1) — and no failures anywhere.
#[test]
fn exactly_two_informational_findings() {
    let reports = [
        verify_t_formulas(DEFAULT_T_MAX, B),
        verify_n_formulas(DEFAULT_N_MAX, B),
        verify_series_identities(DEFAULT_SERIES_ORDER),
        verify_relations(DEFAULT_RELATIONS_MAX, B),
        check_conjecture(DEFAULT_CONJECTURE_MAX, B),
    ];
    let mut notes = Vec::new();
    for report in &reports {
        assert_eq!(report.status, Status::Pass, "suite {} failed", report.suite);
        notes.extend(report.informational.iter().cloned());
    }
    assert_eq!(notes.len(), 2, "informational findings: {notes:?}");
    assert!(notes.iter().any(|n| n.contains("t(1,1,3,3) even branch")), "{notes:?}");
    assert!(notes.iter().any(|n| n.contains("capacity constant (1,1,1,1)")), "{notes:?}");
    pass("full run surfaces exactly the two expected informational findings");
}

/// Sanity on the pipeline the reports feed: the 13 supported quadruples are
/// the advertised ones.
#[test]
fn supported_forms_are_the_advertised_thirteen() {
    let mut forms: Vec<[u64; 4]> = supported_t_forms().map(|f| f.canonical()).collect();
    forms.sort_unstable();
    let mut expected = vec![
        [1, 1, 1, 1],
        [1, 1, 2, 2],
        [1, 1, 3, 3],
        [1, 3, 3, 9],
        [1, 3, 9, 9],
        [1, 1, 3, 9],
        [1, 1, 4, 4],
        [1, 4, 4, 4],
        [1, 2, 2, 4],
        [1, 2, 4, 4],
        [1, 1, 9, 9],
        [1, 9, 9, 9],
        [1, 1, 1, 9],
    ];
    expected.sort_unstable();
    assert_eq!(forms, expected);
    pass("registry exposes the thirteen supported quadruples");
}
