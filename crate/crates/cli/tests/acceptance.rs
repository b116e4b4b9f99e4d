//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Criterion 5 compares a printed closed form against quadrature. The printed
//! form carries the wrong exponential factor and cannot meet its tolerance; it
//! is evaluated as written, reported as FAIL, and listed in KNOWN_UNATTAINABLE
//! so the gate still fails on any other regression.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use confine::expectation::{cross_check, ClosedForm, CrossCheckGrid, Quantity};
use confine::{
    convergence_order, ground_state, hamiltonian_expect, kinetic_expect, minimize_energy,
    stationarity_check, ExactConfig, Exec, ExpectationMode, PotentialModel, QuadratureConfig,
    SolveOptions, TrialSpec, VariationalSolution,
};
use confine_cli::published::{printed_configurations, TABLES};
use confine_cli::runs::{dominance_margin, run_tables, Convention};
use confine_cli::RunConfig;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const KNOWN_UNATTAINABLE: &[u32] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn criterion_1() -> Outcome {
    let (ca, cb) = (0.5, 2.0);
    let (ga, gb, gc) = (0.5, 2.0, 0.8);
    let cornell = PotentialModel::cornell(ca, cb).unwrap();
    let global = PotentialModel::global(ga, gb, gc).unwrap();
    let mode = ExpectationMode::Normalized;
    let mut worst: f64 = 0.0;
    for b in [1.0, 2.0] {
        for z in [0.5f64, 1.0, 2.0, 5.0] {
            let t = TrialSpec::new(b, 0.0, z).unwrap().normalize(&cfg()).unwrap();
            worst = worst.max(rel(t.n_squared, 15.0 / (2.0 * PI * z.powi(5))));
            worst = worst.max(rel(t.mean_radius(&cfg()).unwrap(), z / 2.0));
            for mu in [1.0, 2.0] {
                let k = kinetic_expect(&t, mu, mode, &cfg()).unwrap();
                worst = worst.max(rel(k, 5.0 / (mu * z * z)));
            }
            let vc = hamiltonian_expect(&t, &cornell, 1.0, mode, &cfg()).unwrap().potential;
            worst = worst.max(rel(vc, -5.0 * ca / (2.0 * z) + cb * z / 2.0));
            let vg = hamiltonian_expect(&t, &global, 1.0, mode, &cfg()).unwrap().potential;
            worst = worst.max(rel(vg, 160.0 * ga * z.sqrt() / 231.0 - 5.0 * gb / (2.0 * z) + gc));
        }
    }
    outcome(worst <= 1e-8, format!("max rel dev {worst:.2e} (tol 1e-8)"))
}

fn criterion_2() -> Outcome {
    let free = PotentialModel::free();
    let mut worst: f64 = 0.0;
    for z in [1.0, 2.0] {
        let e = ground_state(&free, z, 1.0, &ExactConfig::default()).unwrap().energy;
        worst = worst.max((e - PI * PI / (2.0 * z * z)).abs());
    }
    let p = convergence_order(&free, 1.0, 1.0, &[250, 500, 1000]).unwrap();
    outcome(
        worst < 1e-5 && (p - 2.0).abs() <= 0.1,
        format!("max |E0 - pi^2/2z^2| {worst:.2e} (tol 1e-5), order {p:.4} (2 +- 0.1)"),
    )
}

fn hydrogen() -> (f64, VariationalSolution) {
    let coulomb = PotentialModel::cornell(0.5, 0.0).unwrap();
    let e = ground_state(&coulomb, 40.0, 1.0, &ExactConfig::default()).unwrap().energy;
    let v = minimize_energy(&coulomb, 1.0, 40.0, 1.0, &SolveOptions::default()).unwrap();
    (e, v)
}

fn criterion_3() -> Outcome {
    let (e, v) = hydrogen();
    outcome(
        (e + 0.125).abs() < 1e-3 && (-0.125..=-0.120).contains(&v.energy),
        format!("E_exact {e:.6} (-0.125 +- 1e-3), E_var {:.6} in [-0.125, -0.120]", v.energy),
    )
}

/// Normalized-mode minimum and exact energy for every printed table row.
fn dominance_runs() -> Vec<(String, VariationalSolution, f64)> {
    let configs: Vec<_> = printed_configurations().collect();
    Exec::Parallel.map(&configs, |(t, r)| {
        let v = minimize_energy(&t.model, t.b, r.z, 1.0, &SolveOptions::default()).unwrap();
        let e = ground_state(&t.model, r.z, 1.0, &ExactConfig::default()).unwrap().energy;
        (format!("{} z={}", t.key, r.z), v, e)
    })
}

fn criterion_4(runs: &[(String, VariationalSolution, f64)]) -> Outcome {
    let violations: Vec<&str> = runs
        .iter()
        .filter(|(_, v, e)| v.energy < e - dominance_margin(*e))
        .map(|(n, _, _)| n.as_str())
        .collect();
    let min_gap = runs
        .iter()
        .map(|(_, v, e)| v.energy - e)
        .fold(f64::INFINITY, f64::min);
    outcome(
        runs.len() == 19 && violations.is_empty(),
        format!(
            "{} configurations, smallest E_var - E_exact {min_gap:.3e}, violations {violations:?}",
            runs.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let cornell = PotentialModel::cornell(0.5, 2.0).unwrap();
    let global = PotentialModel::global(0.5, 2.0, 0.8).unwrap();
    let grid = CrossCheckGrid::default();
    let mut worst: f64 = 0.0;
    let mut worst_alt: f64 = 0.0;
    for &a in &grid.a_values {
        for &z in &grid.z_values {
            let t = TrialSpec::new(1.0, a, z).unwrap().normalize(&cfg()).unwrap();
            let quad = kinetic_expect(&t, 1.0, ExpectationMode::Paper, &cfg()).unwrap();
            let printed = ClosedForm::CornellB1Kinetic.evaluate(&cornell, a, z).unwrap();
            let alt = ClosedForm::GlobalB1Kinetic.evaluate(&global, a, z).unwrap();
            worst = worst.max(rel(printed, quad));
            worst_alt = worst_alt.max(rel(alt, quad));
        }
    }
    debug_assert_eq!(
        ClosedForm::lookup(&cornell, 1.0, Quantity::Kinetic),
        Some(ClosedForm::CornellB1Kinetic)
    );
    outcome(
        worst <= 1e-8,
        format!(
            "Cornell-block b=1 kinetic form: max rel dev {worst:.3e} (tol 1e-8); \
             the same integral as printed with the global model: {worst_alt:.1e}"
        ),
    )
}

fn criterion_6() -> Outcome {
    let grid = CrossCheckGrid::default();
    let report = cross_check(&grid, &cfg(), Exec::Parallel).unwrap();
    let potential_forms = [
        ClosedForm::CornellB1Potential,
        ClosedForm::CornellB2Potential,
        ClosedForm::GlobalB1Potential,
        ClosedForm::GlobalB2Potential,
    ];
    let mut summary = Vec::new();
    let mut complete = report.expressions.len() == ClosedForm::ALL.len();
    for form in ClosedForm::ALL {
        let hits: Vec<_> = report.expressions.iter().filter(|e| e.expression == form).collect();
        complete &= hits.len() == 1;
        if potential_forms.contains(&form) {
            if let Some(e) = hits.first() {
                summary.push(format!("{}={}", form.id(), e.classification.as_str()));
            }
        }
    }
    complete &= report.points.len() == grid.a_values.len() * grid.z_values.len() * ClosedForm::ALL.len();
    complete &= report.series.len() == grid.z_values.len();
    let kv = report.to_key_value();
    complete &= kv.contains("series.cornell_b1_potential.") && kv.contains(".classification = ");
    outcome(
        complete,
        format!("{} expressions classified, {} series records; {}", report.expressions.len(),
            report.series.len(), summary.join(", ")),
    )
}

fn criterion_7(hydrogen: &VariationalSolution, runs: &[(String, VariationalSolution, f64)]) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let all = std::iter::once(("hydrogen".to_string(), hydrogen))
        .chain(runs.iter().map(|(n, v, _)| (n.clone(), v)));
    for (name, v) in all {
        if v.is_boundary() {
            continue;
        }
        checked += 1;
        let s = stationarity_check(v, &cfg()).unwrap();
        worst = worst.max(s.derivative.abs() / s.threshold);
        if !s.passes {
            failures.push(name);
        }
    }
    outcome(
        checked > 0 && failures.is_empty(),
        format!("{checked} interior minima, worst |dE/da| / threshold {worst:.2e}, failures {failures:?}"),
    )
}

fn criterion_8() -> Outcome {
    let cfg = RunConfig::default();
    let report = run_tables(&cfg).unwrap();
    let csv = report.table().to_csv();
    let sequential = RunConfig {
        solver: SolveOptions {
            exec: Exec::Sequential,
            ..cfg.solver
        },
        ..cfg.clone()
    };
    let again = run_tables(&sequential).unwrap().table().to_csv();

    let printed_rows = report.rows.iter().filter(|r| r.printed.is_some()).count();
    let mut ok = printed_rows == 19 && csv == again;
    ok &= report.rows.iter().all(|r| {
        r.results.len() == Convention::ALL.len()
            && r.results.iter().all(|c| c.solution.is_ok())
            && (r.printed.is_none() || r.results.iter().all(|c| c.deviations.is_some()))
            && (r.printed.is_none() || r.best.is_some())
    });
    for needle in [
        "cornell-b1,1,",
        "0.804769,5.09835,0.443098,-0.050878",
        "0.885092,3.75142,0.4424,-0.0547323",
        "1.65865,10.344,0.386356,0.07915",
        "1.54294,4.94705,0.40693,0.157745",
    ] {
        ok &= csv.contains(needle);
    }
    let missing_row = report
        .rows
        .iter()
        .any(|r| r.table == TABLES[0].key && r.z == 2.0 && r.printed.is_none());
    ok &= missing_row;
    let bound = dominance_runs()
        .iter()
        .all(|(_, v, e)| v.energy >= e - dominance_margin(*e));
    ok &= bound;
    outcome(
        ok,
        format!(
            "{printed_rows} printed rows x {} conventions, byte-identical rerun {}, physical bound {}",
            Convention::ALL.len(),
            csv == again,
            bound
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let strategy = (0.5f64..3.0, 0.0f64..10.0, 0.2f64..6.0);
    let fine = QuadratureConfig {
        order: 21,
        rel_tol: 1e-12,
        ..cfg()
    };
    let mut norm_worst: f64 = 0.0;
    let mut ok = true;
    for _ in 0..100 {
        let (b, a, z) = strategy.new_tree(&mut runner).unwrap().current();
        let s = TrialSpec::new(b, a, z).unwrap();
        let t = s.normalize(&cfg()).unwrap();
        norm_worst = norm_worst.max((t.n_squared * s.moment(0.0, &fine).unwrap() - 1.0).abs());
        ok &= t.density(z).unwrap() == 0.0;
        let r = t.mean_radius(&cfg()).unwrap();
        ok &= r > 0.0 && r < z;
    }
    ok &= norm_worst <= 1e-8;

    let mut monotone = true;
    for (b, z) in [(1.0, 1.0), (2.0, 3.0), (1.5, 5.0)] {
        let radii: Vec<f64> = (0..20)
            .map(|i| {
                let t = TrialSpec::new(b, 0.25 * i as f64, z).unwrap().normalize(&cfg()).unwrap();
                t.mean_radius(&cfg()).unwrap()
            })
            .collect();
        monotone &= radii.windows(2).all(|w| w[1] < w[0]);
    }
    ok &= monotone;

    let free = PotentialModel::free();
    let e1 = ground_state(&free, 1.0, 1.0, &ExactConfig::default()).unwrap().energy;
    let mut scaling: f64 = 0.0;
    for z in [0.5, 2.0, 3.0, 5.0] {
        let e = ground_state(&free, z, 1.0, &ExactConfig::default()).unwrap().energy;
        scaling = scaling.max(rel(e * z * z, e1));
    }
    ok &= scaling <= 1e-6;

    let global = PotentialModel::global(0.5, 2.0, 0.8).unwrap();
    let opts = SolveOptions::default();
    let mut shift_a: f64 = 0.0;
    let mut shift_e: f64 = 0.0;
    for b in [1.0, 2.0] {
        for z in [1.0, 3.0, 5.0] {
            let base = minimize_energy(&global, b, z, 1.0, &opts).unwrap();
            for c in [-1.5, 0.7] {
                let moved = minimize_energy(&global.shifted(c).unwrap(), b, z, 1.0, &opts).unwrap();
                shift_a = shift_a.max((moved.a_star - base.a_star).abs());
                shift_e = shift_e.max((moved.energy - base.energy - c).abs());
            }
        }
    }
    ok &= shift_a <= opts.tolerance_a && shift_e <= 1e-9;
    outcome(
        ok,
        format!(
            "normalization {norm_worst:.1e}, <r> monotone {monotone}, E0 z^2 spread {scaling:.1e}, \
             offset: |da*| {shift_a:.1e}, |dE - c| {shift_e:.1e}"
        ),
    )
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn main() -> ExitCode {
    let mut lines: Vec<(u32, &str, Outcome, Duration, Duration)> = Vec::new();
    let s = |secs: u64| Duration::from_secs(secs);

    let (o, t) = timed(criterion_1);
    lines.push((1, "analytic a=0 suite", o, t, s(1)));
    let (o, t) = timed(criterion_2);
    lines.push((2, "infinite spherical well", o, t, s(5)));
    let ((o, (_, hyd)), t) = timed(|| (criterion_3(), hydrogen()));
    lines.push((3, "hydrogen-like limit", o, t, s(10)));
    let (runs, t4) = timed(dominance_runs);
    let (o, t) = timed(|| criterion_4(&runs));
    lines.push((4, "variational dominance", o, t + t4, s(120)));
    let (o, t) = timed(criterion_5);
    lines.push((5, "closed-form kinetic equivalence", o, t, s(5)));
    let (o, t) = timed(criterion_6);
    lines.push((6, "closed-form classification report", o, t, s(30)));
    let (o, t) = timed(|| criterion_7(&hyd, &runs));
    lines.push((7, "stationarity at interior minima", o, t, s(120)));
    let (o, t) = timed(criterion_8);
    lines.push((8, "table reproduction report", o, t, s(180)));
    let (o, t) = timed(criterion_9);
    lines.push((9, "property suite", o, t, s(60)));

    let mut unexpected = 0;
    for (id, name, o, took, limit) in &lines {
        let pass = o.pass && took <= limit;
        let known = KNOWN_UNATTAINABLE.contains(id);
        let tag = match (pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known, documented)",
            (false, false) => "FAIL",
        };
        if !pass && !known {
            unexpected += 1;
        }
        println!(
            "{tag} criterion {id}: {name}: {} [{:.2} s, limit {} s]",
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    let passed = lines
        .iter()
        .filter(|(_, _, o, t, l)| o.pass && t <= l)
        .count();
    println!(
        "acceptance: {passed}/{} criteria pass, {} documented failure(s), {unexpected} unexpected",
        lines.len(),
        lines.len() - passed - unexpected
    );
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
