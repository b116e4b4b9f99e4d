//! Pinned values. The exact-solver baseline is self-converged (two Richardson
//! runs agree to well under 1e-6); the classifications pin the closed-form audit.

use confine::expectation::{cross_check, Classification, ClosedForm, CrossCheckGrid};
use confine::{
    ground_state, minimize_energy, ExactConfig, Exec, PotentialModel, QuadratureConfig,
    SolveOptions,
};

#[test]
fn cornell_exact_baseline() {
    let cornell = PotentialModel::cornell(0.5, 2.0).unwrap();
    let coarse = ExactConfig {
        n_interior: 2000,
        ..Default::default()
    };
    let a = ground_state(&cornell, 1.0, 1.0, &coarse).unwrap().energy;
    let b = ground_state(&cornell, 1.0, 1.0, &ExactConfig::default()).unwrap().energy;
    assert!((a - b).abs() < 1e-6);
    assert!((b - 4.647_832_78).abs() < 1e-6, "{b}");
}

#[test]
fn cornell_variational_baseline() {
    let cornell = PotentialModel::cornell(0.5, 2.0).unwrap();
    let s = minimize_energy(&cornell, 1.0, 1.0, 1.0, &SolveOptions::default()).unwrap();
    assert!((s.a_star - 0.323_135_34).abs() < 1e-6, "{}", s.a_star);
    assert!((s.energy - 4.686_507_48).abs() < 1e-7, "{}", s.energy);
    assert!((s.wfo - 3.273_488_79).abs() < 1e-6, "{}", s.wfo);
    assert!((s.mean_radius - 0.476_957_06).abs() < 1e-7, "{}", s.mean_radius);
}

#[test]
fn closed_form_audit_is_complete_and_stable() {
    let report = cross_check(
        &CrossCheckGrid::default(),
        &QuadratureConfig::default(),
        Exec::default(),
    )
    .unwrap();
    assert_eq!(report.expressions.len(), ClosedForm::ALL.len());
    let class = |c: ClosedForm| {
        report
            .expressions
            .iter()
            .find(|e| e.expression == c)
            .unwrap()
            .classification
    };
    use Classification::*;
    assert_eq!(class(ClosedForm::CornellB1Potential), MatchAfterAbSwap);
    assert_eq!(class(ClosedForm::CornellB1Kinetic), Mismatch);
    assert_eq!(class(ClosedForm::CornellB2Potential), MatchAfterAbSwap);
    assert_eq!(class(ClosedForm::CornellB2Kinetic), Match);
    assert_eq!(class(ClosedForm::GlobalB1Kinetic), Match);
    assert_eq!(class(ClosedForm::GlobalB2Kinetic), Mismatch);
    assert_eq!(class(ClosedForm::GlobalB1Potential), Mismatch);
    assert_eq!(class(ClosedForm::GlobalB2Potential), Mismatch);
    assert!(report.series.iter().all(|s| s.parameters_exchanged));

    let again = cross_check(
        &CrossCheckGrid::default(),
        &QuadratureConfig::default(),
        Exec::Sequential,
    )
    .unwrap();
    assert_eq!(report.to_key_value(), again.to_key_value());
    assert_eq!(report.to_csv(), again.to_csv());
}
