//! Reference closed-form expressions for the unnormalized expectation values,
//! transcribed term for term as they were published (μ = 1).
//!
//! These are diagnostics. Several of them are known to disagree with the
//! defining integrals; [`super::cross_check`] measures by how much. Nothing in
//! the solver path calls into this module.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;
use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{Error, Result};
use crate::potential::PotentialModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Kinetic,
    Potential,
    Hamiltonian,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Kinetic => "kinetic",
            Quantity::Potential => "potential",
            Quantity::Hamiltonian => "hamiltonian",
        }
    }
}

/// Identifies one published expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    CornellB1Potential,
    CornellB1Kinetic,
    CornellB1Hamiltonian,
    CornellB1EnergyDerivative,
    CornellB2Potential,
    CornellB2Kinetic,
    CornellB2Hamiltonian,
    GlobalB1Potential,
    GlobalB1Kinetic,
    GlobalB1Hamiltonian,
    GlobalB2Potential,
    GlobalB2Kinetic,
    GlobalB2Hamiltonian,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 13] = [
        ClosedForm::CornellB1Potential,
        ClosedForm::CornellB1Kinetic,
        ClosedForm::CornellB1Hamiltonian,
        ClosedForm::CornellB1EnergyDerivative,
        ClosedForm::CornellB2Potential,
        ClosedForm::CornellB2Kinetic,
        ClosedForm::CornellB2Hamiltonian,
        ClosedForm::GlobalB1Potential,
        ClosedForm::GlobalB1Kinetic,
        ClosedForm::GlobalB1Hamiltonian,
        ClosedForm::GlobalB2Potential,
        ClosedForm::GlobalB2Kinetic,
        ClosedForm::GlobalB2Hamiltonian,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClosedForm::CornellB1Potential => "cornell_b1_potential",
            ClosedForm::CornellB1Kinetic => "cornell_b1_kinetic",
            ClosedForm::CornellB1Hamiltonian => "cornell_b1_hamiltonian",
            ClosedForm::CornellB1EnergyDerivative => "cornell_b1_energy_derivative",
            ClosedForm::CornellB2Potential => "cornell_b2_potential",
            ClosedForm::CornellB2Kinetic => "cornell_b2_kinetic",
            ClosedForm::CornellB2Hamiltonian => "cornell_b2_hamiltonian",
            ClosedForm::GlobalB1Potential => "global_b1_potential",
            ClosedForm::GlobalB1Kinetic => "global_b1_kinetic",
            ClosedForm::GlobalB1Hamiltonian => "global_b1_hamiltonian",
            ClosedForm::GlobalB2Potential => "global_b2_potential",
            ClosedForm::GlobalB2Kinetic => "global_b2_kinetic",
            ClosedForm::GlobalB2Hamiltonian => "global_b2_hamiltonian",
        }
    }

    pub fn is_cornell(self) -> bool {
        matches!(
            self,
            ClosedForm::CornellB1Potential
                | ClosedForm::CornellB1Kinetic
                | ClosedForm::CornellB1Hamiltonian
                | ClosedForm::CornellB1EnergyDerivative
                | ClosedForm::CornellB2Potential
                | ClosedForm::CornellB2Kinetic
                | ClosedForm::CornellB2Hamiltonian
        )
    }

    pub fn b(self) -> f64 {
        match self {
            ClosedForm::CornellB1Potential
            | ClosedForm::CornellB1Kinetic
            | ClosedForm::CornellB1Hamiltonian
            | ClosedForm::CornellB1EnergyDerivative
            | ClosedForm::GlobalB1Potential
            | ClosedForm::GlobalB1Kinetic
            | ClosedForm::GlobalB1Hamiltonian => 1.0,
            _ => 2.0,
        }
    }

    /// `None` for the energy derivative, which is not an expectation value.
    pub fn quantity(self) -> Option<Quantity> {
        use ClosedForm::*;
        match self {
            CornellB1Potential | CornellB2Potential | GlobalB1Potential | GlobalB2Potential => {
                Some(Quantity::Potential)
            }
            CornellB1Kinetic | CornellB2Kinetic | GlobalB1Kinetic | GlobalB2Kinetic => {
                Some(Quantity::Kinetic)
            }
            CornellB1Hamiltonian | CornellB2Hamiltonian | GlobalB1Hamiltonian
            | GlobalB2Hamiltonian => Some(Quantity::Hamiltonian),
            CornellB1EnergyDerivative => None,
        }
    }

    /// Whether the expression depends on the potential parameters at all.
    pub fn has_potential_parameters(self) -> bool {
        self.quantity() != Some(Quantity::Kinetic)
    }

    pub fn lookup(model: &PotentialModel, b: f64, which: Quantity) -> Option<ClosedForm> {
        use ClosedForm::*;
        let cornell = matches!(model, PotentialModel::Cornell { .. });
        let id = match (cornell, b == 1.0, b == 2.0, which) {
            (true, true, _, Quantity::Potential) => CornellB1Potential,
            (true, true, _, Quantity::Kinetic) => CornellB1Kinetic,
            (true, true, _, Quantity::Hamiltonian) => CornellB1Hamiltonian,
            (true, _, true, Quantity::Potential) => CornellB2Potential,
            (true, _, true, Quantity::Kinetic) => CornellB2Kinetic,
            (true, _, true, Quantity::Hamiltonian) => CornellB2Hamiltonian,
            (false, true, _, Quantity::Potential) => GlobalB1Potential,
            (false, true, _, Quantity::Kinetic) => GlobalB1Kinetic,
            (false, true, _, Quantity::Hamiltonian) => GlobalB1Hamiltonian,
            (false, _, true, Quantity::Potential) => GlobalB2Potential,
            (false, _, true, Quantity::Kinetic) => GlobalB2Kinetic,
            (false, _, true, Quantity::Hamiltonian) => GlobalB2Hamiltonian,
            _ => return None,
        };
        Some(id)
    }

    /// Evaluates this expression for `model` at `(a, z)`.
    pub fn evaluate(self, model: &PotentialModel, a: f64, z: f64) -> Result<f64> {
        check_domain(a, z)?;
        let (pa, pb, pc) = match (*model, self.is_cornell()) {
            (PotentialModel::Cornell { a, b }, true) => (a, b, 0.0),
            (PotentialModel::Global { a, b, c }, false) => (a, b, c),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "{} cannot be evaluated for the {} model",
                    self.id(),
                    model.name()
                )))
            }
        };
        use ClosedForm::*;
        Ok(match self {
            CornellB1Potential => cornell_b1_potential(pa, pb, a, z),
            CornellB1Kinetic => cornell_b1_kinetic(a, z),
            CornellB1Hamiltonian => cornell_b1_kinetic(a, z) + cornell_b1_potential(pa, pb, a, z),
            CornellB1EnergyDerivative => cornell_b1_derivative(pa, pb, a, z),
            CornellB2Potential => cornell_b2_potential(pa, pb, a, z),
            CornellB2Kinetic => cornell_b2_kinetic(a, z),
            CornellB2Hamiltonian => cornell_b2_kinetic(a, z) + cornell_b2_potential(pa, pb, a, z),
            GlobalB1Potential => global_b1_potential(pa, pb, pc, a, z),
            GlobalB1Kinetic => global_b1_kinetic(a, z),
            GlobalB1Hamiltonian => global_b1_kinetic(a, z) + global_b1_potential(pa, pb, pc, a, z),
            GlobalB2Potential => global_b2_potential(pa, pb, pc, a, z),
            GlobalB2Kinetic => global_b2_kinetic(a, z),
            GlobalB2Hamiltonian => global_b2_kinetic(a, z) + global_b2_potential(pa, pb, pc, a, z),
        })
    }
}

fn check_domain(a: f64, z: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::ExpressionDomain(format!("requires a > 0, got {a}")));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::ExpressionDomain(format!("requires z > 0, got {z}")));
    }
    Ok(())
}

/// Unnormalized `⟨T⟩`, `⟨V⟩` or `⟨H⟩` from the published expression for
/// `model` with exponent `b ∈ {1, 2}`.
pub fn closed_form_expect(
    model: &PotentialModel,
    b: f64,
    a: f64,
    z: f64,
    which: Quantity,
) -> Result<f64> {
    let form = ClosedForm::lookup(model, b, which).ok_or_else(|| {
        Error::ExpressionDomain(format!("no closed form for b = {b} (only 1 and 2)"))
    })?;
    form.evaluate(model, a, z)
}

/// The published `d⟨H⟩/da` for the Cornell model with `b = 1`.
pub fn cornell_exponential_energy_derivative(
    model: &PotentialModel,
    a: f64,
    z: f64,
) -> Result<f64> {
    ClosedForm::CornellB1EnergyDerivative.evaluate(model, a, z)
}

// --- transcriptions -------------------------------------------------------
// Parameter names follow the potential definitions: `pa`, `pb`, `pc` are the
// A, B, C coefficients; `a` is the variational parameter.

fn sqrt_2pi() -> f64 {
    (2.0 * PI).sqrt()
}

fn upper_gamma(s: f64, x: f64) -> f64 {
    gamma_ur(s, x) * gamma(s)
}

fn cornell_b1_potential(pa: f64, pb: f64, a: f64, z: f64) -> f64 {
    let x = a * z;
    let e = (2.0 * x).exp();
    let b_part = a * a * pb * (3.0 + 2.0 * x + e * (-3.0 - 2.0 * x * (-2.0 + x)));
    let a_part =
        pa * (-15.0 + 3.0 * e * (5.0 + x * (-4.0 + x)) - x * (18.0 + x * (9.0 + 2.0 * x)));
    (-2.0 * x).exp() * PI * (b_part + a_part) / (2.0 * a.powi(6))
}

fn cornell_b1_kinetic(a: f64, z: f64) -> f64 {
    let x = a * z;
    (-2.0 * x).exp() * PI * (x.sinh() + x * (-x.cosh() + x * x.sinh())) / a.powi(3)
}

fn cornell_b1_derivative(pa: f64, pb: f64, a: f64, z: f64) -> f64 {
    let first = (90.0 * pa - 60.0 * a * pa * z
        + a.powi(5) * z * z
        + 12.0 * a * a * (pa * z * z - pb))
        * PI
        / (2.0 * a.powi(7));
    let second = (2.0 * a.powi(4) * z * (1.0 + 2.0 * z * pb)
        + 3.0 * a.powi(3) * (1.0 + 4.0 * z * pb))
        * PI
        / (2.0 * a.powi(3));
    -first - second
}

fn cornell_b2_potential(pa: f64, pb: f64, a: f64, z: f64) -> f64 {
    let z2 = z * z;
    let inner = -4.0 * (pa - a * pb) * (-2.0 * a * z2).exp()
        + 4.0 * (pa + a * pa * z2 - a * pb * (1.0 + 2.0 * a * z2))
        + a.sqrt()
            * (-3.0 * pa + 4.0 * a * pb)
            * sqrt_2pi()
            * z
            * erf(2f64.sqrt() * a.sqrt() * z);
    PI * inner / (8.0 * a.powi(3))
}

fn cornell_b2_kinetic(a: f64, z: f64) -> f64 {
    let z2 = z * z;
    PI * (4.0 * a.sqrt() * (-8.0 + (-2.0 * a * z2).exp()) * z
        + sqrt_2pi() * (7.0 + 12.0 * a * z2) * erf(2f64.sqrt() * a.sqrt() * z))
        / (32.0 * a.powf(1.5))
}

fn global_b1_potential(pa: f64, pb: f64, pc: f64, a: f64, z: f64) -> f64 {
    let s2p = sqrt_2pi();
    let e = (2.0 * a * z).exp();
    let em = (-2.0 * a * z).exp();
    let z32 = z.powf(1.5);
    let bracket = 945.0 * a.sqrt() * pa * s2p - 840.0 * a.powf(1.5) * pa * s2p * z
        - 512.0 * a.powi(4) * pb * z * z
        + 240.0 * a.powf(2.5) * pa * s2p * z * z
        - 945.0 * pa * (2.0 * a * PI).sqrt()
        + 512.0 * a.powi(3) * em * z * (pb + 2.0 * pb * e + (-1.0 + e) * pc * z - pa * z32)
        - 48.0
            * a
            * a
            * em
            * (16.0 * pb * (-1.0 + e)
                + 32.0 * (1.0 + e) * pc * z
                + 5.0 * pa * z32 * (7.0 + em * (2.0 * a * z * PI).sqrt()))
        + 12.0
            * a
            * em
            * (128.0 * (-1.0 + e) * pc
                + 35.0 * pa * z.sqrt() * (-9.0 + 2.0 * e * (2.0 * PI * a * z).sqrt()))
        + 15.0
            * pa
            * (2.0 * PI * a).sqrt()
            * (63.0 - 56.0 * a * z + 16.0 * a * a * z * z)
            * erf((2.0 * PI * a * z).sqrt());
    PI / (512.0 * a.powi(6)) * bracket
}

fn global_b1_kinetic(a: f64, z: f64) -> f64 {
    let x = a * z;
    (-x).exp() * PI * (x.sinh() + x * (-x.cosh() + x * x.sinh())) / a.powi(3)
}

/// Evaluated with the published bracket placement: only the first group sits
/// under the `π / (64 a^{11/4})` prefactor. The undefined symbol in the
/// `2·K·z` term is taken to be the constant offset C.
fn global_b2_potential(pa: f64, pb: f64, pc: f64, a: f64, z: f64) -> f64 {
    let z2 = z * z;
    let k = pc;
    let g14 = gamma(0.25);
    let g34 = gamma(0.75);
    let bracket = -64.0 * a.powf(1.75) * pb * z2
        - 32.0 * a.powf(1.75) * (pb + 2.0 * pc * z)
        - 10.0 * 2f64.powf(0.75) * a.sqrt() * pa * z * g14
        + 4.0
            * a.powf(0.25)
            * sqrt_2pi()
            * (8.0 * a * pb * z + pc * (3.0 + 4.0 * a * z2))
            * erf((2.0 * a * z).sqrt())
        + 21.0 * pa * 2f64.powf(0.25) * g34
        + 24.0 * pa * 2f64.powf(0.25) * a * z2 * g34;
    let rest = a.powf(0.75) * 8.0 * (-2.0 * a * z2).exp() * (4.0 * pb + 2.0 * k * z + 3.0 * pa * z.powf(1.5))
        + 10.0 * a.sqrt() * 2f64.powf(0.75) * pa * z * upper_gamma(0.25, 2.0 * a * z2)
        - 3.0 * 2f64.powf(0.25) * pa * (7.0 + 8.0 * a * z2) * upper_gamma(0.75, 2.0 * a * z2);
    PI / (64.0 * a.powf(2.75)) * bracket + rest
}

fn global_b2_kinetic(a: f64, z: f64) -> f64 {
    let z2 = z * z;
    PI * (4.0 * a.sqrt() * (-8.0 + (-2.0 * a * z2).exp()) * z
        + sqrt_2pi() * (7.0 + 12.0 * a * z2) * erf((2.0 * a * z).sqrt()))
        / (32.0 * a.powf(1.5))
}
