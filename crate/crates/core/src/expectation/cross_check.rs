//! Classifies each published closed form against quadrature of the defining
//! integrals (unnormalized, μ = 1).

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::closed_form::{ClosedForm, Quantity};
use super::{hamiltonian_expect, kinetic_expect, potential_expect, ExpectationMode};
use crate::error::Result;
use crate::exec::Exec;
use crate::numfmt::sig9;
use crate::potential::PotentialModel;
use crate::quad::QuadratureConfig;
use crate::trial::TrialSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "match_after_AB_swap")]
    MatchAfterAbSwap,
    #[serde(rename = "mismatch")]
    Mismatch,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Match => "match",
            Classification::MatchAfterAbSwap => "match_after_AB_swap",
            Classification::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckGrid {
    pub a_values: Vec<f64>,
    pub z_values: Vec<f64>,
    pub cornell: PotentialModel,
    pub global: PotentialModel,
    /// Relative deviation below which an expression counts as a match.
    pub tolerance: f64,
}

impl Default for CrossCheckGrid {
    fn default() -> Self {
        CrossCheckGrid {
            a_values: vec![0.1, 0.5, 1.0, 2.0, 5.0],
            z_values: vec![0.5, 1.0, 2.0, 5.0],
            cornell: PotentialModel::Cornell { a: 0.5, b: 2.0 },
            global: PotentialModel::Global {
                a: 0.5,
                b: 2.0,
                c: 0.8,
            },
            tolerance: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckPoint {
    pub expression: ClosedForm,
    pub model: PotentialModel,
    pub a: f64,
    pub z: f64,
    pub reference: f64,
    pub closed_form: f64,
    pub closed_form_swapped: Option<f64>,
    pub deviation: f64,
    pub deviation_swapped: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpressionCheck {
    pub expression: ClosedForm,
    pub classification: Classification,
    pub max_deviation: f64,
    pub max_deviation_swapped: Option<f64>,
    /// `(a, z)` of the largest as-published deviation.
    pub worst_point: (f64, f64),
    pub notes: Vec<String>,
}

/// Small-`a` behaviour of the Cornell `b = 1` potential expression, from its
/// exact power series in `x = a·z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDiagnostic {
    pub z: f64,
    /// Limit of the part multiplying the published `A`, per unit `A`.
    pub a_part_limit: f64,
    /// Lowest nonvanishing power of `x` in the `A` part's numerator series.
    pub a_part_leading_order: usize,
    pub b_part_limit: f64,
    pub b_part_leading_order: usize,
    /// `a = 0` quadrature of the defining integral: coefficient of A (Coulomb).
    pub defining_a_limit: f64,
    /// `a = 0` quadrature of the defining integral: coefficient of B (linear).
    pub defining_b_limit: f64,
    pub parameters_exchanged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub grid: CrossCheckGrid,
    pub expressions: Vec<ExpressionCheck>,
    pub points: Vec<CrossCheckPoint>,
    pub series: Vec<SeriesDiagnostic>,
}

fn relative_deviation(value: f64, reference: f64) -> f64 {
    if !value.is_finite() {
        return f64::INFINITY;
    }
    let diff = (value - reference).abs();
    if reference == 0.0 {
        diff
    } else {
        diff / reference.abs()
    }
}

fn paper_energy(model: &PotentialModel, b: f64, a: f64, z: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let t = TrialSpec::new(b, a, z)?.normalize(cfg)?;
    Ok(hamiltonian_expect(&t, model, 1.0, ExpectationMode::Paper, cfg)?.total)
}

fn reference_value(
    form: ClosedForm,
    model: &PotentialModel,
    a: f64,
    z: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let b = form.b();
    match form.quantity() {
        Some(q) => {
            let t = TrialSpec::new(b, a, z)?.normalize(cfg)?;
            let mode = ExpectationMode::Paper;
            Ok(match q {
                Quantity::Kinetic => kinetic_expect(&t, 1.0, mode, cfg)?,
                Quantity::Potential => potential_expect(&t, model, mode, cfg)?,
                Quantity::Hamiltonian => hamiltonian_expect(&t, model, 1.0, mode, cfg)?.total,
            })
        }
        None => {
            let h = (1e-6 * a).max(1e-6);
            let up = paper_energy(model, b, a + h, z, cfg)?;
            let down = paper_energy(model, b, a - h, z, cfg)?;
            Ok((up - down) / (2.0 * h))
        }
    }
}

fn notes_for(form: ClosedForm) -> Vec<String> {
    let mut notes = Vec::new();
    match form {
        ClosedForm::GlobalB2Potential | ClosedForm::GlobalB2Hamiltonian => {
            notes.push("undefined symbol K in the 2*K*z term evaluated as C".to_string());
            notes.push(
                "trailing exp/incomplete-gamma terms evaluated outside the pi/(64 a^(11/4)) bracket, as published"
                    .to_string(),
            );
        }
        ClosedForm::GlobalB1Potential | ClosedForm::GlobalB1Hamiltonian => {
            notes.push("error-function argument sqrt(2 pi a z) evaluated as published".to_string());
        }
        ClosedForm::GlobalB2Kinetic => {
            notes.push("error-function argument sqrt(2 a z) evaluated as published".to_string());
        }
        ClosedForm::CornellB1EnergyDerivative => {
            notes.push("reference is a central difference of the unnormalized energy".to_string());
        }
        _ => {}
    }
    notes
}

/// Power-series coefficients of `e^{-2x}·p(x) + q(x)` through `x^order`.
fn exp_series(p: &[f64], q: &[f64], order: usize) -> Vec<f64> {
    let mut exp = vec![0.0; order + 1];
    let mut term = 1.0;
    for (k, slot) in exp.iter_mut().enumerate() {
        if k > 0 {
            term *= -2.0 / k as f64;
        }
        *slot = term;
    }
    let mut out = vec![0.0; order + 1];
    for (i, &pi) in p.iter().enumerate() {
        for (j, &ej) in exp.iter().enumerate() {
            if i + j <= order {
                out[i + j] += pi * ej;
            }
        }
    }
    for (i, &qi) in q.iter().enumerate() {
        if i <= order {
            out[i] += qi;
        }
    }
    out
}

fn leading(coeffs: &[f64]) -> (usize, f64) {
    coeffs
        .iter()
        .enumerate()
        .find(|(_, c)| c.abs() > 1e-12)
        .map(|(k, &c)| (k, c))
        .unwrap_or((coeffs.len(), 0.0))
}

// With x = a z the published Cornell b=1 potential splits into
//   B part: π B z⁴/(2x⁴) · [e^{-2x}(3 + 2x) - 3 + 4x - 2x²]
//   A part: π A z⁶/(2x⁶) · [e^{-2x}(-15 - 18x - 9x² - 2x³) + 15 - 12x + 3x²]
const B_PART_EXP: [f64; 2] = [3.0, 2.0];
const B_PART_POLY: [f64; 3] = [-3.0, 4.0, -2.0];
const A_PART_EXP: [f64; 4] = [-15.0, -18.0, -9.0, -2.0];
const A_PART_POLY: [f64; 3] = [15.0, -12.0, 3.0];

fn series_diagnostic(z: f64, tolerance: f64, cfg: &QuadratureConfig) -> Result<SeriesDiagnostic> {
    let b_coeffs = exp_series(&B_PART_EXP, &B_PART_POLY, 10);
    let a_coeffs = exp_series(&A_PART_EXP, &A_PART_POLY, 10);
    let (b_order, b_lead) = leading(&b_coeffs);
    let (a_order, a_lead) = leading(&a_coeffs);
    // A finite limit needs the numerator to start exactly at the power the prefactor divides by.
    let b_part_limit = if b_order == 4 {
        PI * z.powi(4) / 2.0 * b_lead
    } else {
        f64::INFINITY
    };
    let a_part_limit = if a_order == 6 {
        PI * z.powi(6) / 2.0 * a_lead
    } else {
        f64::INFINITY
    };

    let flat = TrialSpec::new(1.0, 0.0, z)?;
    let defining_a_limit = -flat.moment(-1.0, cfg)?;
    let defining_b_limit = flat.moment(1.0, cfg)?;
    let close = |x: f64, y: f64| relative_deviation(x, y) <= tolerance;
    let parameters_exchanged =
        close(a_part_limit, defining_b_limit) && close(b_part_limit, defining_a_limit);
    Ok(SeriesDiagnostic {
        z,
        a_part_limit,
        a_part_leading_order: a_order,
        b_part_limit,
        b_part_leading_order: b_order,
        defining_a_limit,
        defining_b_limit,
        parameters_exchanged,
    })
}

pub fn cross_check(
    grid: &CrossCheckGrid,
    cfg: &QuadratureConfig,
    exec: Exec,
) -> Result<CrossCheckReport> {
    if grid.a_values.is_empty() || grid.z_values.is_empty() {
        return Err(crate::Error::InvalidParameter(
            "cross-check grid must be non-empty".into(),
        ));
    }
    if let Some(a) = grid.a_values.iter().find(|a| !(**a > 0.0)) {
        return Err(crate::Error::InvalidParameter(format!(
            "cross-check grid requires a > 0, got {a}"
        )));
    }
    grid.cornell.validate()?;
    grid.global.validate()?;

    let mut jobs = Vec::new();
    for form in ClosedForm::ALL {
        for &a in &grid.a_values {
            for &z in &grid.z_values {
                jobs.push((form, a, z));
            }
        }
    }

    let evaluated = exec.map(&jobs, |&(form, a, z)| -> Result<CrossCheckPoint> {
        let model = if form.is_cornell() {
            grid.cornell
        } else {
            grid.global
        };
        let reference = reference_value(form, &model, a, z, cfg)?;
        let closed_form = form.evaluate(&model, a, z)?;
        let closed_form_swapped = if form.has_potential_parameters() {
            Some(form.evaluate(&model.swapped_ab(), a, z)?)
        } else {
            None
        };
        Ok(CrossCheckPoint {
            expression: form,
            model,
            a,
            z,
            reference,
            closed_form,
            closed_form_swapped,
            deviation: relative_deviation(closed_form, reference),
            deviation_swapped: closed_form_swapped.map(|v| relative_deviation(v, reference)),
        })
    });
    let points = evaluated.into_iter().collect::<Result<Vec<_>>>()?;

    let expressions = ClosedForm::ALL
        .iter()
        .map(|&form| {
            let mine: Vec<&CrossCheckPoint> =
                points.iter().filter(|p| p.expression == form).collect();
            let worst = mine
                .iter()
                .max_by(|x, y| x.deviation.total_cmp(&y.deviation))
                .expect("grid is non-empty");
            let max_deviation = worst.deviation;
            let max_deviation_swapped = if form.has_potential_parameters() {
                mine.iter()
                    .filter_map(|p| p.deviation_swapped)
                    .max_by(f64::total_cmp)
            } else {
                None
            };
            let classification = if max_deviation <= grid.tolerance {
                Classification::Match
            } else if max_deviation_swapped.is_some_and(|d| d <= grid.tolerance) {
                Classification::MatchAfterAbSwap
            } else {
                Classification::Mismatch
            };
            ExpressionCheck {
                expression: form,
                classification,
                max_deviation,
                max_deviation_swapped,
                worst_point: (worst.a, worst.z),
                notes: notes_for(form),
            }
        })
        .collect();

    let series = grid
        .z_values
        .iter()
        .map(|&z| series_diagnostic(z, grid.tolerance, cfg))
        .collect::<Result<Vec<_>>>()?;

    Ok(CrossCheckReport {
        grid: grid.clone(),
        expressions,
        points,
        series,
    })
}

impl CrossCheckReport {
    pub fn classification_of(&self, form: ClosedForm) -> Option<Classification> {
        self.expressions
            .iter()
            .find(|e| e.expression == form)
            .map(|e| e.classification)
    }

    /// Flat `key = value` records.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let list = |v: &[f64]| v.iter().map(|x| sig9(*x)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "grid.a = {}", list(&self.grid.a_values));
        let _ = writeln!(out, "grid.z = {}", list(&self.grid.z_values));
        let _ = writeln!(out, "grid.tolerance = {}", sig9(self.grid.tolerance));
        let _ = writeln!(out, "grid.cornell = {}", describe(&self.grid.cornell));
        let _ = writeln!(out, "grid.global = {}", describe(&self.grid.global));
        for e in &self.expressions {
            let key = e.expression.id();
            let _ = writeln!(out, "{key}.classification = {}", e.classification.as_str());
            let _ = writeln!(out, "{key}.max_rel_deviation = {}", sig9(e.max_deviation));
            if let Some(d) = e.max_deviation_swapped {
                let _ = writeln!(out, "{key}.max_rel_deviation_swapped = {}", sig9(d));
            }
            let _ = writeln!(
                out,
                "{key}.worst_point = a={}, z={}",
                sig9(e.worst_point.0),
                sig9(e.worst_point.1)
            );
            for n in &e.notes {
                let _ = writeln!(out, "{key}.note = {n}");
            }
        }
        for s in &self.series {
            let key = format!("series.cornell_b1_potential.z={}", sig9(s.z));
            let _ = writeln!(out, "{key}.a_part_limit = {}", sig9(s.a_part_limit));
            let _ = writeln!(out, "{key}.a_part_leading_order = {}", s.a_part_leading_order);
            let _ = writeln!(out, "{key}.b_part_limit = {}", sig9(s.b_part_limit));
            let _ = writeln!(out, "{key}.b_part_leading_order = {}", s.b_part_leading_order);
            let _ = writeln!(out, "{key}.defining_a_limit = {}", sig9(s.defining_a_limit));
            let _ = writeln!(out, "{key}.defining_b_limit = {}", sig9(s.defining_b_limit));
            let _ = writeln!(out, "{key}.parameters_exchanged = {}", s.parameters_exchanged);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "expression,model,A,B,C,a,z,reference,closed_form,closed_form_swapped,deviation,deviation_swapped,classification\n",
        );
        for p in &self.points {
            let (pa, pb, pc) = params(&p.model);
            let class = self
                .classification_of(p.expression)
                .map(Classification::as_str)
                .unwrap_or("");
            let opt = |v: Option<f64>| v.map(sig9).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                p.expression.id(),
                p.model.name(),
                sig9(pa),
                sig9(pb),
                pc.map(sig9).unwrap_or_default(),
                sig9(p.a),
                sig9(p.z),
                sig9(p.reference),
                sig9(p.closed_form),
                opt(p.closed_form_swapped),
                sig9(p.deviation),
                opt(p.deviation_swapped),
                class
            );
        }
        out
    }
}

fn params(m: &PotentialModel) -> (f64, f64, Option<f64>) {
    match *m {
        PotentialModel::Cornell { a, b } => (a, b, None),
        PotentialModel::Global { a, b, c } => (a, b, Some(c)),
    }
}

fn describe(m: &PotentialModel) -> String {
    match *m {
        PotentialModel::Cornell { a, b } => format!("A={}, B={}", sig9(a), sig9(b)),
        PotentialModel::Global { a, b, c } => {
            format!("A={}, B={}, C={}", sig9(a), sig9(b), sig9(c))
        }
    }
}
