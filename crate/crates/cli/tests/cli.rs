use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn confine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.cfg");
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn number_after(text: &str, key: &str) -> f64 {
    let rest = &text[text.find(key).unwrap() + key.len()..];
    rest.split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn solve_prints_both_energies() {
    let o = confine(&["solve"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let exact = number_after(&text, "E_exact = ");
    let var = number_after(&text, "E_var = ");
    assert!(var >= exact, "{text}");
}

#[test]
fn free_particle_solve() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "potential.A = 0\npotential.B = 0\nrun.z = 1\n");
    let o = confine(&["solve", "--config", &cfg]);
    assert!(o.status.success());
    let text = stdout(&o);
    let exact = number_after(&text, "E_exact = ");
    let var = number_after(&text, "E_var = ");
    assert!((exact - 4.9348022).abs() < 1e-5);
    assert!((4.93480..=5.0).contains(&var), "{text}");
}

#[test]
fn malformed_config_exits_with_line_and_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let cfg = write_config(dir.path(), "# comment\nrun.z = -1\n");
    let o = confine(&["solve", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains(":2:"), "{err}");
    assert!(!out.exists());

    let cfg = write_config(dir.path(), "solver.speed = 3\n");
    let o = confine(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("unknown key"));
}

#[test]
fn sweep_rows_and_determinism() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "run.z = 1, 3, 4, 5\nrun.mode = both\n");
    let a = confine(&["sweep", "--config", &cfg]);
    let b = confine(&["sweep", "--config", &cfg]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("mode,z,a_star,wfo,mean_r,E_var,E_exact,gap,status\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 8);
    for r in rows.iter().filter(|r| r[0] == "normalized") {
        let z: f64 = r[1].parse().unwrap();
        let mean_r: f64 = r[4].parse().unwrap();
        let (e_var, e_exact): (f64, f64) = (r[5].parse().unwrap(), r[6].parse().unwrap());
        assert!(mean_r > 0.0 && mean_r < z);
        assert!(e_var >= e_exact - 1e-3 * e_exact.abs().max(1.0));
    }

    let cfg = write_config(
        dir.path(),
        "potential.kind = global\ntrial.b = 2\nrun.z = 1, 2, 3, 4, 5\n",
    );
    let o = confine(&["sweep", "--config", &cfg]);
    assert_eq!(csv_rows(&stdout(&o)).len(), 5);

    let cfg = write_config(dir.path(), "run.z = \n");
    assert_eq!(confine(&["sweep", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn sweep_json_mirrors_csv() {
    let csv = stdout(&confine(&["sweep"]));
    let json = stdout(&confine(&["sweep", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let row = &csv_rows(&csv)[0];
    let e_var: f64 = row[5].parse().unwrap();
    assert!((v[0]["E_var"].as_f64().unwrap() - e_var).abs() < 1e-8 * e_var.abs());
    assert_eq!(v[0]["status"], "ok");
}

#[test]
fn tables_files_and_summary() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t");
    let o = confine(&["tables", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(out.join("tables.csv")).unwrap();
    assert!(csv.contains("0.804769,5.09835,0.443098,-0.050878"));
    assert!(csv.contains("1.65865,10.344,0.386356,0.07915"));
    // 20 rows (one without printed values) x 4 conventions
    assert_eq!(csv.lines().count(), 1 + 80);
    let summary = std::fs::read_to_string(out.join("tables_summary.txt")).unwrap();
    assert_eq!(summary, stdout(&o));
    for key in ["cornell-b1", "cornell-b2", "global-b1", "global-b2"] {
        assert!(summary.contains(key));
    }
    let identity = csv_rows(&csv)
        .iter()
        .map(|r| r[18].parse::<f64>().unwrap())
        .fold(0.0f64, f64::max);
    assert!(identity <= 1e-12);
}

#[test]
fn density_curve_properties() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "run.z = 1, 3\ndensity.samples = 1000\n");
    let o = confine(&["density", "--config", &cfg]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 2000);
    let sweep = csv_rows(&stdout(&confine(&["sweep", "--config", &cfg])));
    for (i, curve) in rows.chunks(1000).enumerate() {
        let last = curve.last().unwrap();
        assert_eq!(last[3], last[1]);
        assert_eq!(last[4], "0");
        let first: f64 = curve[0][4].parse().unwrap();
        let wfo: f64 = sweep[i][3].parse().unwrap();
        assert!((first - wfo).abs() < 1e-8 * wfo);
        let pts: Vec<(f64, f64)> = curve
            .iter()
            .map(|r| (r[3].parse().unwrap(), r[4].parse().unwrap()))
            .collect();
        let norm: f64 = pts
            .windows(2)
            .map(|w| {
                let f = |(r, d): (f64, f64)| 4.0 * std::f64::consts::PI * r * r * d;
                0.5 * (w[1].0 - w[0].0) * (f(w[0]) + f(w[1]))
            })
            .sum();
        assert!((norm - 1.0).abs() < 1e-3, "{norm}");
    }
    assert_eq!(confine(&["density", "--samples", "1"]).status.code(), Some(1));
}

#[test]
fn wfo_curve_places_published_values() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "potential.kind = global\nrun.z = 1, 2\nrun.mode = paper\n");
    let o = confine(&["wfo-curve", "--config", &cfg]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][4], "10.344");
    assert_eq!(rows[1][4], "0.765083");
    let wfo: f64 = rows[1][3].parse().unwrap();
    assert!((wfo - 0.765083).abs() < 1e-5);

    let cfg = write_config(dir.path(), "run.z = 1, 3, 4, 5\nrun.mode = paper\npotential.A = 2\npotential.B = 0.5\n");
    let rows = csv_rows(&stdout(&confine(&["wfo-curve", "--config", &cfg])));
    let wfo: f64 = rows[0][3].parse().unwrap();
    assert!((wfo - 5.09835).abs() < 1e-4, "{wfo}");

    assert_eq!(confine(&["wfo-curve"]).status.code(), Some(1));
}

#[test]
fn exact_with_eigenfunction() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("e");
    let cfg = write_config(dir.path(), "potential.A = 0\npotential.B = 0\nrun.z = 1, 2\nexact.n_interior = 500\n");
    let o = confine(&["exact", "--config", &cfg, "--eigenfunction", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let table = std::fs::read_to_string(out.join("exact.csv")).unwrap();
    let rows = csv_rows(&table);
    let e1: f64 = rows[0][1].parse().unwrap();
    assert!((e1 - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-4);
    assert_eq!(rows[0][5], "0");
    let u = std::fs::read_to_string(out.join("eigenfunction_z2.csv")).unwrap();
    assert!(u.starts_with("r,u\n0,0\n"));
    assert!(u.trim_end().ends_with("2,0"));
}

#[test]
fn validate_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("v");
    let o = confine(&["validate", "--out", out.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("PASS infinite_well.z=1"));
    assert!(text.contains("INFO closed_form.cornell_b1_potential match_after_AB_swap"));
    assert_eq!(text.matches("PASS dominance.").count(), 19);
    assert!(!text.contains("FAIL"));
    for f in ["validate.txt", "cross_check.csv", "cross_check.txt"] {
        assert!(out.join(f).exists(), "{f}");
    }
}
