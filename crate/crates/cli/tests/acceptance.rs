//! Acceptance suite: one test per verification criterion, each printing a
//! single PASS/FAIL line. Run with `cargo test -p frt-cli --test acceptance`
//! (use `-- --nocapture` to see the lines).

use frt_core::verify;

fn report_line(name: &str, report: &verify::Report) -> bool {
    let pass = report.all_pass();
    let failures: Vec<&verify::CheckLine> =
        report.lines.iter().filter(|l| !l.pass).collect();
    println!(
        "criterion {name}: {} ({} checks{})",
        if pass { "PASS" } else { "FAIL" },
        report.lines.len(),
        if failures.is_empty() {
            String::new()
        } else {
            format!(
                ", failing: {}",
                failures
                    .iter()
                    .map(|l| format!("{} [{}]", l.name, l.detail))
                    .collect::<Vec<_>>()
                    .join("; ")
            )
        }
    );
    pass
}

#[test]
fn criterion_01_h2_formula_vs_oracle() {
    let r = verify::suite_h2_crosscheck(96);
    assert!(
        r.lines.len() >= 25,
        "need at least 25 instances, got {}",
        r.lines.len()
    );
    assert!(report_line("1 (H2 formula = oracle, |G| <= 96)", &r), "{}", r.to_text());
}

#[test]
fn criterion_02_classical_mckay_quivers() {
    let r = verify::suite_classical_mckay();
    assert_eq!(r.lines.len(), 14);
    assert!(report_line("2 (classical McKay quivers)", &r), "{}", r.to_text());
}

#[test]
fn criterion_03_untwisted_quotient_formulas() {
    let r = verify::suite_quotient_untwisted();
    assert!(r.lines.len() >= 15);
    assert!(report_line("3 (untwisted quotient formulas)", &r), "{}", r.to_text());
}

#[test]
fn criterion_04_twisted_quotient_formulas() {
    let r = verify::suite_quotient_twisted();
    assert!(r.lines.len() >= 8);
    assert!(report_line("4 (twisted quotient formulas)", &r), "{}", r.to_text());
}

#[test]
fn criterion_05_partition_property() {
    let r = verify::suite_partition();
    assert!(r.lines.len() >= 5);
    assert!(report_line("5 (partition into twisted components)", &r), "{}", r.to_text());
}

#[test]
fn criterion_06_logterm_classifier_vs_oracle() {
    let r = verify::suite_logterm(8, 8);
    assert!(report_line("6 (log terminal classifier = oracle)", &r), "{}", r.to_text());
}

#[test]
fn criterion_07_reflection_subgroup_table() {
    let r = verify::suite_reflection_table();
    assert!(r.lines.len() >= 30);
    assert!(report_line("7 (reflection subgroup table)", &r), "{}", r.to_text());
}

#[test]
fn criterion_08_reflection_group_ramification() {
    let r = verify::suite_st_ramification();
    // 19 primitive labels plus the imprimitive family
    assert!(r.lines.len() >= 19 + 60);
    assert!(report_line("8 (reflection group ramification)", &r), "{}", r.to_text());
}

#[test]
fn criterion_09_curve_classifier_grid() {
    let r = verify::suite_curves(6, 6);
    assert!(report_line("9 (plane curve classifier, n,r <= 6)", &r), "{}", r.to_text());
}

#[test]
fn criterion_10_determinism() {
    // the full suite, run twice at reduced scale, must be byte-identical
    let a = verify::full_report(48, 5, 5, 3, 3).to_text();
    let b = verify::full_report(48, 5, 5, 3, 3).to_text();
    let pass = a == b && !a.is_empty();
    println!(
        "criterion 10 (determinism): {} ({} bytes per report)",
        if pass { "PASS" } else { "FAIL" },
        a.len()
    );
    assert!(pass, "reports differ");
}
