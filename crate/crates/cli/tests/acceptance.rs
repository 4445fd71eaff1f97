//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`). Bounds and tolerances
//! are pinned here; everything is exact arithmetic.

use cable_cli::report::RunReport;
use cable_cli::verify::{self, Profile};

fn run(name: &str, f: impl FnOnce(&mut RunReport, &Profile)) {
    let profile = Profile::full();
    let mut report = RunReport::new(name);
    f(&mut report, &profile);
    let ok = report.all_passed();
    println!("criterion {name}: {}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        println!("{}", report.render_text());
    }
    assert!(ok, "criterion {name} failed:\n{}", report.render_text());
}

/// Criterion 1: sigma_0..sigma_5 equal the six printed polynomials
/// coefficient for coefficient (5! sigma_5 has its nine terms). Exact.
#[test]
fn criterion_01_sigma_golden() {
    run("1 (sigma golden)", |r, _| verify::criterion_sigma_golden(r));
}

/// Criterion 2: for 6 <= n <= 19 the recursion produces sigma_n with all
/// divisions exact, D sigma_n = 0, the derivative chain, the bigrade
/// (2n+1, n) and the congruence mod a. Exact, well under 120 s.
#[test]
fn criterion_02_sigma_recursion() {
    run(
        "2 (sigma recursion, n <= 19)",
        verify::criterion_sigma_recursion,
    );
}

/// Criterion 3: the four quadratic identities and a^6 h = F^3 + G^2.
#[test]
fn criterion_03_fg_identities() {
    run("3 (FG identities)", |r, _| {
        verify::criterion_fg_identities(r)
    });
}

/// Criterion 4: dim of the graded kernel at (2n+1, n) equals
/// floor(n/6) + 1 for 0 <= n <= 17, and the v-free slice predictions hold
/// for n <= 12. Exact, well under 300 s.
#[test]
fn criterion_04_dimension_table() {
    run(
        "4 (dimension table, n <= 17)",
        verify::criterion_dimension_table,
    );
}

/// Criterion 5: the reduction reproduces the fourteen table entries
/// exactly and the evaluation map annihilates every one. Exact.
#[test]
fn criterion_05_psi_table() {
    run("5 (psi table)", verify::criterion_psi_table);
}

/// Criterion 6: vanishing of theta roots for n in {4, 8, 10, 14, 16} and
/// the non-vanishing guards. Exact.
#[test]
fn criterion_06_theta_vanishing() {
    run("6 (theta vanishing)", verify::criterion_theta_vanishing);
}

/// Criterion 7: the substitution x_i -> x v^i/i! kills the quadratic
/// cables for 2 <= n <= 10, j <= 6, and the graded quotient by the Q_2
/// slice has dimension 1 for 1 <= r <= 4, 0 <= s <= 10. Exact.
#[test]
fn criterion_07_q2_shadow() {
    run("7 (Q2 shadow)", verify::criterion_q2_shadow);
}

/// Criterion 8: dim Omega_(r,s) - dim(Q_4 slice) equals
/// dim A_(2s+r,s) - dim A_(2s+r-12,s-6) for 2 <= r <= 4, 0 <= s <= 10.
/// Exact, well under 300 s.
#[test]
fn criterion_08_q4_shadow() {
    run("8 (Q4 shadow)", verify::criterion_q4_shadow);
}

/// Criterion 9: the Dixmier-route construction equals the recursion for
/// n <= 5 and differs by h times an element of the predicted kernel piece
/// for 6 <= n <= 8. Exact.
#[test]
fn criterion_09_dixmier_oracle() {
    run("9 (Dixmier oracle)", |r, _| {
        verify::criterion_dixmier_oracle(r)
    });
}

/// Criterion 10: the dimension-seven suite: order-3 symmetry, pairwise
/// commutation, the H orbit, the Wronskian laws, the six-variable
/// embedding, and P_0..P_3 with both cable laws and the leading-term
/// form. Exact, well under 120 s.
#[test]
fn criterion_10_roberts() {
    run("10 (Roberts suite)", verify::criterion_roberts);
}

/// Criterion 11: the five printed covariant-ring kernel generators are
/// annihilated by the restricted down operators. Exact.
#[test]
fn criterion_11_covariant_spots() {
    run("11 (covariant spot checks)", |r, _| {
        verify::criterion_covariant_spots(r)
    });
}

/// Criterion 12: property suites: ring axioms, Leibniz, cable laws for
/// both quadratic bases (n <= 16, j <= 12), vertex rank checks (j <= 12),
/// Q-ideal basis independence and nesting (r <= 4, s <= 14), and the
/// Dixmier commutation identity on 100 seeded random inputs. Exact.
#[test]
fn criterion_12_property_suites() {
    run("12 (property suites)", verify::criterion_properties);
}
