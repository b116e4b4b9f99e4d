//! Expectation values of the kinetic, potential and total energy for a cut-off
//! trial state.
//!
//! The kinetic term uses the standard radial operator in its integrated-by-parts
//! form, `(4π / 2μ) ∫₀^z [d(rψ)/dr]² dr`, which is exact because `rψ` vanishes at
//! both `r = 0` and the wall. All integrals stop at the wall.
//!
//! [`ExpectationMode::Paper`] leaves out the `N²` factor; [`ExpectationMode::Normalized`]
//! is the Rayleigh quotient and is the only mode with a variational meaning.

mod closed_form;
mod cross_check;

pub use closed_form::{
    closed_form_expect, cornell_exponential_energy_derivative, ClosedForm, Quantity,
};
pub use cross_check::{
    cross_check, Classification, CrossCheckGrid, CrossCheckPoint, CrossCheckReport,
    ExpressionCheck, SeriesDiagnostic,
};

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::quad::{integrate, QuadratureConfig};
use crate::trial::NormalizedTrial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectationMode {
    /// `4π ∫ (...) dr` without `N²`.
    Paper,
    /// `N² · 4π ∫ (...) dr`, the Rayleigh quotient.
    Normalized,
}

impl ExpectationMode {
    pub const ALL: [ExpectationMode; 2] = [ExpectationMode::Paper, ExpectationMode::Normalized];

    pub fn as_str(self) -> &'static str {
        match self {
            ExpectationMode::Paper => "paper",
            ExpectationMode::Normalized => "normalized",
        }
    }

    #[inline]
    fn apply(self, unnormalized: f64, t: &NormalizedTrial) -> f64 {
        match self {
            ExpectationMode::Paper => unnormalized,
            ExpectationMode::Normalized => unnormalized * t.n_squared,
        }
    }
}

impl fmt::Display for ExpectationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationBreakdown {
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub mode: ExpectationMode,
    pub mu: f64,
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::domain("mu", mu, "mu > 0"));
    }
    Ok(())
}

/// Unnormalized `(1/2μ)·4π ∫₀^z [u'(r)]² dr` with `u = r (r - z) e^{-a r^b}`.
fn kinetic_unnormalized(t: &NormalizedTrial, mu: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let s = t.spec;
    let ab = s.a * s.b;
    let du = |r: f64| {
        let rb = s.r_pow_b(r);
        (2.0 * r - s.z - ab * rb * (r - s.z)) * (-s.a * rb).exp()
    };
    let integral = integrate(
        |r| {
            let d = du(r);
            d * d
        },
        0.0,
        s.z,
        cfg,
    )?;
    Ok(4.0 * PI / (2.0 * mu) * integral.value)
}

/// Unnormalized `4π ∫₀^z ψ² V r² dr`, assembled term by term from `r^p` moments.
fn potential_unnormalized(
    t: &NormalizedTrial,
    model: &PotentialModel,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    model.validate()?;
    let mut total = 0.0;
    for term in model.terms() {
        if term.coefficient != 0.0 {
            total += term.coefficient * t.spec.moment(term.power, cfg)?;
        }
    }
    Ok(total)
}

pub fn kinetic_expect(
    t: &NormalizedTrial,
    mu: f64,
    mode: ExpectationMode,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_mu(mu)?;
    Ok(mode.apply(kinetic_unnormalized(t, mu, cfg)?, t))
}

pub fn potential_expect(
    t: &NormalizedTrial,
    model: &PotentialModel,
    mode: ExpectationMode,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(mode.apply(potential_unnormalized(t, model, cfg)?, t))
}

pub fn hamiltonian_expect(
    t: &NormalizedTrial,
    model: &PotentialModel,
    mu: f64,
    mode: ExpectationMode,
    cfg: &QuadratureConfig,
) -> Result<ExpectationBreakdown> {
    let kinetic = kinetic_expect(t, mu, mode, cfg)?;
    let potential = potential_expect(t, model, mode, cfg)?;
    Ok(ExpectationBreakdown {
        kinetic,
        potential,
        total: kinetic + potential,
        mode,
        mu,
    })
}
