//! The subcommand operations. Each returns plain data plus a [`Table`] view;
//! writing files is left to the caller.

use std::f64::consts::PI;
use std::fmt::Write as _;

use confine::expectation::{cross_check, CrossCheckGrid, CrossCheckReport};
use confine::numfmt::sig;
use confine::varsolve::BoundarySide;
use confine::{
    convergence_order, ground_state, minimize_energy, stationarity_check, ExactSolution,
    ExpectationMode, PotentialModel, TrialSpec, VariationalSolution,
};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};
use crate::published::{self, PrintedRow, TABLES};

fn boundary_label(b: Option<BoundarySide>) -> &'static str {
    match b {
        None => "",
        Some(BoundarySide::Lower) => "lower",
        Some(BoundarySide::Upper) => "upper",
    }
}

/// Energy margin allowed below the finite-difference reference.
pub fn dominance_margin(exact: f64) -> f64 {
    1e-3 * exact.abs().max(1.0)
}

// ---------------------------------------------------------------- solve

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solutions: Vec<VariationalSolution>,
    pub exact: ExactSolution,
}

pub fn run_solve(cfg: &RunConfig) -> CliResult<SolveOutcome> {
    let [z] = cfg.z[..] else {
        return Err(CliError::Config(format!(
            "run.z: solve takes a single z, got {} values",
            cfg.z.len()
        )));
    };
    let exact = ground_state(&cfg.model, z, cfg.mu, &cfg.exact)?;
    let solutions = cfg
        .modes
        .modes()
        .into_iter()
        .map(|mode| minimize_energy(&cfg.model, cfg.b, z, cfg.mu, &cfg.solve_options(mode)))
        .collect::<Result<_, _>>()?;
    Ok(SolveOutcome { solutions, exact })
}

impl SolveOutcome {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&[
            "mode",
            "z",
            "a_star",
            "wfo",
            "mean_r",
            "E_var",
            "E_exact",
            "gap",
            "kinetic",
            "potential",
            "boundary",
            "dE_da",
            "converged",
        ]);
        for s in &self.solutions {
            t.push(vec![
                Cell::text(s.mode.as_str()),
                Cell::Num(s.z),
                Cell::Num(s.a_star),
                Cell::Num(s.wfo),
                Cell::Num(s.mean_radius),
                Cell::Num(s.energy),
                Cell::Num(self.exact.energy),
                Cell::Num(s.energy - self.exact.energy),
                Cell::Num(s.kinetic),
                Cell::Num(s.potential),
                Cell::text(boundary_label(s.boundary)),
                Cell::Num(s.stationarity_residual),
                Cell::Bool(s.converged),
            ]);
        }
        t
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let e = &self.exact;
        let _ = writeln!(
            out,
            "E_exact = {} (n = {}, estimated error {})",
            sig(e.energy, 9),
            e.n_interior,
            e.error_estimate.map_or("n/a".into(), |x| sig(x, 2))
        );
        for s in &self.solutions {
            let _ = writeln!(
                out,
                "{:<10} a* = {}  E_var = {}  E_var - E_exact = {}{}",
                s.mode.as_str(),
                sig(s.a_star, 9),
                sig(s.energy, 9),
                sig(s.energy - e.energy, 3),
                match s.boundary {
                    Some(side) => format!("  (minimum at the {} scan edge)", boundary_label(Some(side))),
                    None => String::new(),
                }
            );
        }
        out
    }
}

// ---------------------------------------------------------------- sweep

pub fn run_sweep(cfg: &RunConfig) -> CliResult<Table> {
    let exec = cfg.solver.exec;
    let exact: Vec<Result<f64, String>> = exec.map(&cfg.z, |&z| {
        ground_state(&cfg.model, z, cfg.mu, &cfg.exact)
            .map(|s| s.energy)
            .map_err(|e| e.to_string())
    });
    let jobs: Vec<(ExpectationMode, usize)> = cfg
        .modes
        .modes()
        .into_iter()
        .flat_map(|m| (0..cfg.z.len()).map(move |i| (m, i)))
        .collect();
    let solved = exec.map(&jobs, |&(mode, i)| {
        minimize_energy(&cfg.model, cfg.b, cfg.z[i], cfg.mu, &cfg.solve_options(mode))
    });

    let mut t = Table::new(&["mode", "z", "a_star", "wfo", "mean_r", "E_var", "E_exact", "gap", "status"]);
    for (&(mode, i), sol) in jobs.iter().zip(solved) {
        let e_exact = exact[i].as_ref().ok().copied();
        let mut status = Vec::new();
        if let Err(e) = &exact[i] {
            status.push(format!("exact: {e}"));
        }
        let row = match sol {
            Ok(s) => {
                if let Some(side) = s.boundary {
                    status.push(format!("boundary {}", boundary_label(Some(side))));
                }
                if !s.converged {
                    status.push("not converged".into());
                }
                vec![
                    Cell::Num(s.a_star),
                    Cell::Num(s.wfo),
                    Cell::Num(s.mean_radius),
                    Cell::Num(s.energy),
                    Cell::opt(e_exact),
                    Cell::opt(e_exact.map(|x| s.energy - x)),
                ]
            }
            Err(e) => {
                status.push(format!("variational: {e}"));
                let mut cells = vec![Cell::Empty; 6];
                cells[4] = Cell::opt(e_exact);
                cells
            }
        };
        let mut cells = vec![Cell::text(mode.as_str()), Cell::Num(cfg.z[i])];
        cells.extend(row);
        cells.push(Cell::text(if status.is_empty() {
            "ok".to_string()
        } else {
            status.join("; ")
        }));
        t.push(cells);
    }
    Ok(t)
}

// ---------------------------------------------------------------- tables

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convention {
    pub mode: ExpectationMode,
    /// Coulomb and linear (or √r) strengths exchanged.
    pub swapped: bool,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention {
            mode: ExpectationMode::Normalized,
            swapped: false,
        },
        Convention {
            mode: ExpectationMode::Normalized,
            swapped: true,
        },
        Convention {
            mode: ExpectationMode::Paper,
            swapped: false,
        },
        Convention {
            mode: ExpectationMode::Paper,
            swapped: true,
        },
    ];

    pub fn label(&self) -> String {
        format!(
            "{}/{}",
            self.mode.as_str(),
            if self.swapped { "swapped" } else { "as_printed" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionResult {
    pub convention: Convention,
    pub solution: Result<VariationalSolution, String>,
    /// Relative deviations of `(a, |ψ(0)|², ⟨r⟩, E)` from the printed row.
    pub deviations: Option<[f64; 4]>,
    /// `|wfo - N² z²| / wfo`.
    pub wfo_identity: Option<f64>,
}

impl ConventionResult {
    pub fn a_within(&self, rel: f64) -> Option<bool> {
        self.deviations.map(|d| d[0] <= rel)
    }

    fn score(&self) -> Option<(f64, f64)> {
        self.deviations
            .map(|d| (d.iter().sum::<f64>() / 4.0, d[0]))
            .filter(|(s, _)| s.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub table: &'static str,
    pub z: f64,
    pub printed: Option<PrintedRow>,
    pub results: Vec<ConventionResult>,
    /// Index into `results` with the lowest mean deviation (ties: lowest on a).
    pub best: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablesReport {
    pub rows: Vec<ComparisonRow>,
}

pub const A_MATCH_TOLERANCE: f64 = 5e-3;

fn rel_dev(computed: f64, printed: f64) -> f64 {
    ((computed - printed) / printed).abs()
}

/// Recomputes every published row under the four conventions.
pub fn run_tables(cfg: &RunConfig) -> CliResult<TablesReport> {
    let jobs: Vec<(usize, usize, Convention)> = TABLES
        .iter()
        .enumerate()
        .flat_map(|(ti, t)| {
            (0..t.rows.len()).flat_map(move |ri| Convention::ALL.map(|c| (ti, ri, c)))
        })
        .collect();
    let exec = cfg.solver.exec;
    let solved = exec.map(&jobs, |&(ti, ri, conv)| {
        let table = &TABLES[ti];
        let model = if conv.swapped {
            table.model.swapped_ab()
        } else {
            table.model
        };
        let opts = cfg.solve_options(conv.mode);
        minimize_energy(&model, table.b, table.rows[ri].z, 1.0, &opts).map_err(|e| e.to_string())
    });

    let mut rows: Vec<ComparisonRow> = Vec::new();
    for (&(ti, ri, conv), solution) in jobs.iter().zip(solved) {
        let table = &TABLES[ti];
        let published = &table.rows[ri];
        let printed = published.values();
        let (deviations, wfo_identity) = match &solution {
            Ok(s) => (
                printed.map(|p| {
                    [
                        rel_dev(s.a_star, p[0]),
                        rel_dev(s.wfo, p[1]),
                        rel_dev(s.mean_radius, p[2]),
                        rel_dev(s.energy, p[3]),
                    ]
                }),
                Some(((s.wfo - s.n_squared * s.z * s.z) / s.wfo).abs()),
            ),
            Err(_) => (None, None),
        };
        let result = ConventionResult {
            convention: conv,
            solution,
            deviations,
            wfo_identity,
        };
        match rows.last_mut() {
            Some(r) if r.table == table.key && r.z == published.z => r.results.push(result),
            _ => rows.push(ComparisonRow {
                table: table.key,
                z: published.z,
                printed: published.printed,
                results: vec![result],
                best: None,
            }),
        }
    }
    for row in &mut rows {
        row.best = row
            .results
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.score().map(|s| (i, s)))
            .min_by(|(_, x), (_, y)| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)))
            .map(|(i, _)| i);
    }
    Ok(TablesReport { rows })
}

impl TablesReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&[
            "table",
            "z",
            "convention",
            "a_star",
            "wfo",
            "mean_r",
            "energy",
            "boundary",
            "paper_a",
            "paper_wfo",
            "paper_mean_r",
            "paper_energy",
            "dev_a",
            "dev_wfo",
            "dev_mean_r",
            "dev_energy",
            "a_within_0.5pct",
            "best_match",
            "wfo_identity_dev",
            "status",
        ]);
        for row in &self.rows {
            for (i, r) in row.results.iter().enumerate() {
                let mut cells = vec![
                    Cell::text(row.table),
                    Cell::Num(row.z),
                    Cell::text(r.convention.label()),
                ];
                match &r.solution {
                    Ok(s) => cells.extend([
                        Cell::Num(s.a_star),
                        Cell::Num(s.wfo),
                        Cell::Num(s.mean_radius),
                        Cell::Num(s.energy),
                        Cell::text(boundary_label(s.boundary)),
                    ]),
                    Err(_) => cells.extend(vec![Cell::Empty; 5]),
                }
                match row.printed {
                    Some(p) => cells.extend(p.map(Cell::text)),
                    None => cells.extend(vec![Cell::Empty; 4]),
                }
                match r.deviations {
                    Some(d) => cells.extend(d.map(Cell::Num)),
                    None => cells.extend(vec![Cell::Empty; 4]),
                }
                cells.push(r.a_within(A_MATCH_TOLERANCE).map_or(Cell::Empty, Cell::Bool));
                cells.push(if row.printed.is_some() {
                    Cell::Bool(row.best == Some(i))
                } else {
                    Cell::Empty
                });
                cells.push(Cell::opt(r.wfo_identity));
                cells.push(Cell::text(match &r.solution {
                    Ok(_) => "ok".to_string(),
                    Err(e) => e.clone(),
                }));
                t.push(cells);
            }
        }
        t
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Published rows recomputed under four conventions (mode x A/B order)."
        );
        let _ = writeln!(
            out,
            "A convention reproduces a table when a* and E agree within 0.5% on every printed row."
        );
        let _ = writeln!(
            out,
            "mean_r is a length in GeV^-1; the printed tables label it \"GeV\".\n"
        );
        for table in TABLES.iter() {
            let rows: Vec<&ComparisonRow> = self
                .rows
                .iter()
                .filter(|r| r.table == table.key && r.printed.is_some())
                .collect();
            let _ = writeln!(out, "{} ({}), {} printed rows", table.key, table.description, rows.len());
            let mut reproducing = Vec::new();
            for (ci, conv) in Convention::ALL.iter().enumerate() {
                let best = rows.iter().filter(|r| r.best == Some(ci)).count();
                let a_ok = rows
                    .iter()
                    .filter(|r| r.results[ci].a_within(A_MATCH_TOLERANCE) == Some(true))
                    .count();
                let mut e_devs: Vec<f64> = rows
                    .iter()
                    .filter_map(|r| r.results[ci].deviations.map(|d| d[3]))
                    .collect();
                e_devs.sort_by(f64::total_cmp);
                let median = e_devs.get(e_devs.len() / 2).copied().unwrap_or(f64::NAN);
                let boundary = rows
                    .iter()
                    .filter(|r| matches!(&r.results[ci].solution, Ok(s) if s.is_boundary()))
                    .count();
                let all = rows.iter().all(|r| {
                    r.results[ci]
                        .deviations
                        .is_some_and(|d| d[0] <= A_MATCH_TOLERANCE && d[3] <= A_MATCH_TOLERANCE)
                });
                if all {
                    reproducing.push(conv.label());
                }
                let _ = writeln!(
                    out,
                    "  {:<22} best match {}/{}  a* within 0.5% {}/{}  median |dE|/|E| {}  scan-edge minima {}",
                    conv.label(),
                    best,
                    rows.len(),
                    a_ok,
                    rows.len(),
                    sig(median, 3),
                    boundary
                );
            }
            if reproducing.is_empty() {
                let _ = writeln!(out, "  -> no convention reproduces this table\n");
            } else {
                let _ = writeln!(out, "  -> reproduced by {}\n", reproducing.join(", "));
            }
        }
        out
    }
}

// ---------------------------------------------------------------- density

#[derive(Debug, Clone, PartialEq)]
pub struct DensityCurve {
    pub mode: ExpectationMode,
    pub z: f64,
    pub a: f64,
    pub wfo: f64,
    pub points: Vec<(f64, f64)>,
}

impl DensityCurve {
    /// Trapezoid `∫ 4π r² |ψ|² dr` over the samples.
    pub fn trapezoid_norm(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| {
                let f = |(r, d): (f64, f64)| 4.0 * PI * r * r * d;
                0.5 * (w[1].0 - w[0].0) * (f(w[0]) + f(w[1]))
            })
            .sum()
    }
}

pub fn run_density(cfg: &RunConfig) -> CliResult<Vec<DensityCurve>> {
    let n = cfg.density_samples;
    let mut curves = Vec::new();
    for mode in cfg.modes.modes() {
        for &z in &cfg.z {
            let a = match cfg.density_a {
                Some(a) => a,
                None => minimize_energy(&cfg.model, cfg.b, z, cfg.mu, &cfg.solve_options(mode))?.a_star,
            };
            let t = TrialSpec::new(cfg.b, a, z)?.normalize(&cfg.quad)?;
            let points = (0..n)
                .map(|i| {
                    let r = if i == n - 1 { z } else { z * i as f64 / (n - 1) as f64 };
                    t.density(r).map(|d| (r, d))
                })
                .collect::<Result<_, _>>()?;
            curves.push(DensityCurve {
                mode,
                z,
                a,
                wfo: t.wfo(),
                points,
            });
        }
    }
    Ok(curves)
}

pub fn density_table(curves: &[DensityCurve]) -> Table {
    let mut t = Table::new(&["mode", "z", "a", "r", "density"]);
    for c in curves {
        for &(r, d) in &c.points {
            t.push(vec![
                Cell::text(c.mode.as_str()),
                Cell::Num(c.z),
                Cell::Num(c.a),
                Cell::Num(r),
                Cell::Num(d),
            ]);
        }
    }
    t
}

// ---------------------------------------------------------------- wfo curve

pub fn run_wfo_curve(cfg: &RunConfig) -> CliResult<Table> {
    if cfg.z.len() < 2 {
        return Err(CliError::Config(format!(
            "run.z: a WFO curve needs at least 2 radii, got {}",
            cfg.z.len()
        )));
    }
    let jobs: Vec<(ExpectationMode, f64)> = cfg
        .modes
        .modes()
        .into_iter()
        .flat_map(|m| cfg.z.iter().map(move |&z| (m, z)))
        .collect();
    let solved = cfg.solver.exec.map(&jobs, |&(mode, z)| {
        minimize_energy(&cfg.model, cfg.b, z, cfg.mu, &cfg.solve_options(mode))
    });
    let mut t = Table::new(&["mode", "z", "a_star", "wfo", "paper_wfo"]);
    for (&(mode, z), s) in jobs.iter().zip(solved) {
        let s = s?;
        let printed = (cfg.mu == 1.0)
            .then(|| published::lookup(&cfg.model, cfg.b, z))
            .flatten()
            .and_then(|r| r.printed);
        t.push(vec![
            Cell::text(mode.as_str()),
            Cell::Num(z),
            Cell::Num(s.a_star),
            Cell::Num(s.wfo),
            printed.map_or(Cell::Empty, |p| Cell::text(p[1])),
        ]);
    }
    Ok(t)
}

// ---------------------------------------------------------------- exact

pub fn run_exact(cfg: &RunConfig) -> CliResult<Vec<ExactSolution>> {
    let solved = cfg
        .solver
        .exec
        .map(&cfg.z, |&z| ground_state(&cfg.model, z, cfg.mu, &cfg.exact));
    Ok(solved.into_iter().collect::<Result<_, _>>()?)
}

pub fn exact_table(solutions: &[ExactSolution]) -> Table {
    let mut t = Table::new(&["z", "E_exact", "error_estimate", "E_finest_grid", "n_interior", "sign_changes", "norm"]);
    for s in solutions {
        t.push(vec![
            Cell::Num(*s.r.last().expect("grid")),
            Cell::Num(s.energy),
            Cell::opt(s.error_estimate),
            Cell::Num(s.raw_energy),
            Cell::Int(s.n_interior as i64),
            Cell::Int(s.sign_changes() as i64),
            Cell::Num(s.norm()),
        ]);
    }
    t
}

pub fn eigenfunction_table(s: &ExactSolution) -> Table {
    let mut t = Table::new(&["r", "u"]);
    for (&r, &u) in s.r.iter().zip(&s.u) {
        t.push(vec![Cell::Num(r), Cell::Num(u)]);
    }
    t
}

// ---------------------------------------------------------------- validate

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded but not a hard invariant.
    Info,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub items: Vec<Item>,
    pub cross_check: CrossCheckReport,
}

impl ValidationReport {
    pub fn failures(&self) -> usize {
        self.items.iter().filter(|i| i.status == Status::Fail).count()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let _ = writeln!(out, "{} {} {}", i.status.as_str(), i.name, i.detail);
        }
        let passed = self.items.iter().filter(|i| i.status == Status::Pass).count();
        let _ = writeln!(out, "{} passed, {} failed, {} informational", passed, self.failures(),
            self.items.iter().filter(|i| i.status == Status::Info).count());
        out
    }
}

/// Runs every hard invariant plus the closed-form audit.
pub fn run_validate(cfg: &RunConfig) -> CliResult<ValidationReport> {
    let mut items = Vec::new();
    let mut push = |name: String, status: Status, detail: String| {
        items.push(Item { name, status, detail })
    };
    let free = PotentialModel::free();

    for z in [1.0, 2.0] {
        let e = ground_state(&free, z, 1.0, &cfg.exact)?.energy;
        let expected = PI * PI / (2.0 * z * z);
        let dev = (e - expected).abs();
        push(
            format!("infinite_well.z={z}"),
            Status::from_bool(dev < 1e-5),
            format!("E0 = {}, |E0 - pi^2/(2 z^2)| = {}", sig(e, 10), sig(dev, 2)),
        );
    }
    let p = convergence_order(&free, 1.0, 1.0, &[250, 500, 1000])?;
    push(
        "convergence_order.free".into(),
        Status::from_bool((p - 2.0).abs() <= 0.1),
        format!("order {}", sig(p, 4)),
    );
    let cornell = PotentialModel::cornell(0.5, 2.0)?;
    let global = PotentialModel::global(0.5, 2.0, 0.8)?;
    for (name, model, min) in [("cornell", cornell, 1.8), ("global", global, 1.5)] {
        let p = convergence_order(&model, 3.0, 1.0, &[250, 500, 1000])?;
        push(
            format!("convergence_order.{name}.z=3"),
            Status::from_bool(p >= min),
            format!("order {} (need >= {min})", sig(p, 4)),
        );
    }
    let exact_c = ground_state(&cornell, 1.0, 1.0, &cfg.exact)?;
    push(
        "eigenvector.cornell.z=1".into(),
        Status::from_bool(exact_c.sign_changes() == 0 && (exact_c.norm() - 1.0).abs() < 1e-10),
        format!("sign changes {}, norm {}", exact_c.sign_changes(), sig(exact_c.norm(), 14)),
    );

    let coulomb = PotentialModel::cornell(0.5, 0.0)?;
    let e_h = ground_state(&coulomb, 40.0, 1.0, &cfg.exact)?.energy;
    push(
        "hydrogen_limit.exact".into(),
        Status::from_bool((e_h + 0.125).abs() < 1e-3),
        format!("E0 = {}", sig(e_h, 9)),
    );
    let normalized = cfg.solve_options(ExpectationMode::Normalized);
    let v_h = minimize_energy(&coulomb, 1.0, 40.0, 1.0, &normalized)?;
    push(
        "hydrogen_limit.variational".into(),
        Status::from_bool((-0.125..=-0.120).contains(&v_h.energy)),
        format!("E* = {} at a* = {}", sig(v_h.energy, 9), sig(v_h.a_star, 9)),
    );
    let mut minima = vec![("hydrogen_limit".to_string(), v_h)];

    let configs: Vec<_> = published::printed_configurations().collect();
    let results = cfg.solver.exec.map(&configs, |(t, r)| {
        let v = minimize_energy(&t.model, t.b, r.z, 1.0, &normalized)?;
        let e = ground_state(&t.model, r.z, 1.0, &cfg.exact)?;
        Ok::<_, confine::Error>((v, e.energy))
    });
    for ((t, r), res) in configs.iter().zip(results) {
        let (v, e) = res?;
        let ok = v.energy >= e - dominance_margin(e);
        push(
            format!("dominance.{}.z={}", t.key, r.z),
            Status::from_bool(ok),
            format!("E_var = {}, E_exact = {}", sig(v.energy, 9), sig(e, 9)),
        );
        minima.push((format!("{}.z={}", t.key, r.z), v));
    }
    for (name, v) in &minima {
        if v.is_boundary() {
            push(
                format!("stationarity.{name}"),
                Status::Info,
                format!("minimum on the {} scan edge", boundary_label(v.boundary)),
            );
            continue;
        }
        let check = stationarity_check(v, &cfg.quad)?;
        push(
            format!("stationarity.{name}"),
            Status::from_bool(check.passes),
            format!("dE/da = {} (threshold {})", sig(check.derivative, 3), sig(check.threshold, 3)),
        );
    }

    // Derivative expression at the scan-refined PaperMode minima of the swapped Cornell model.
    for z in [1.0, 3.0] {
        let v = minimize_energy(
            &cornell.swapped_ab(),
            1.0,
            z,
            1.0,
            &cfg.solve_options(ExpectationMode::Paper),
        )?;
        let check = stationarity_check(&v, &cfg.quad)?;
        if let Some(p) = check.published {
            push(
                format!("published_derivative.cornell_b1.z={z}"),
                Status::Info,
                format!(
                    "{} (numerical {}, expression {}, swapped {})",
                    p.classification.as_str(),
                    sig(check.derivative, 4),
                    sig(p.published, 4),
                    sig(p.published_swapped, 4)
                ),
            );
        }
    }

    let report = cross_check(&CrossCheckGrid::default(), &cfg.quad, cfg.solver.exec)?;
    for e in &report.expressions {
        push(
            format!("closed_form.{}", e.expression.id()),
            Status::Info,
            format!(
                "{} (max rel dev {}, swapped {})",
                e.classification.as_str(),
                sig(e.max_deviation, 3),
                e.max_deviation_swapped.map_or("n/a".into(), |d| sig(d, 3))
            ),
        );
    }
    Ok(ValidationReport {
        items,
        cross_check: report,
    })
}
