//! Interaction potentials.
//!
//! Natural units throughout: lengths in GeV⁻¹, energies in GeV.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// The two quark–antiquark style potential families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PotentialModel {
    /// `V(r) = -a/r + b·r` (Coulomb plus linear). `a` dimensionless, `b` in GeV².
    Cornell { a: f64, b: f64 },
    /// `V(r) = a·√r - b/r + c`. `a` in GeV^{3/2}, `b` dimensionless, `c` in GeV.
    Global { a: f64, b: f64, c: f64 },
}

/// One term `coefficient · r^power` of a potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub coefficient: f64,
    pub power: f64,
}

impl PotentialModel {
    pub fn cornell(a: f64, b: f64) -> Result<Self> {
        ensure_finite(&[("A", a), ("B", b)])?;
        Ok(PotentialModel::Cornell { a, b })
    }

    pub fn global(a: f64, b: f64, c: f64) -> Result<Self> {
        ensure_finite(&[("A", a), ("B", b), ("C", c)])?;
        Ok(PotentialModel::Global { a, b, c })
    }

    /// The identically-zero potential, expressed as a Cornell model.
    pub fn free() -> Self {
        PotentialModel::Cornell { a: 0.0, b: 0.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialModel::Cornell { .. } => "cornell",
            PotentialModel::Global { .. } => "global",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PotentialModel::Cornell { a, b } => ensure_finite(&[("A", a), ("B", b)]),
            PotentialModel::Global { a, b, c } => ensure_finite(&[("A", a), ("B", b), ("C", c)]),
        }
    }

    /// Same model with the `A` and `B` parameters exchanged.
    pub fn swapped_ab(&self) -> Self {
        match *self {
            PotentialModel::Cornell { a, b } => PotentialModel::Cornell { a: b, b: a },
            PotentialModel::Global { a, b, c } => PotentialModel::Global { a: b, b: a, c },
        }
    }

    /// Same model shifted by a constant energy.
    ///
    /// Only the global model carries an explicit offset, so a Cornell model
    /// cannot be shifted.
    pub fn shifted(&self, offset: f64) -> Result<Self> {
        match *self {
            PotentialModel::Global { a, b, c } => PotentialModel::global(a, b, c + offset),
            PotentialModel::Cornell { .. } => Err(Error::InvalidParameter(
                "the Cornell model has no constant offset to shift".into(),
            )),
        }
    }

    /// The `r`-independent part of the potential.
    pub fn offset(&self) -> f64 {
        match *self {
            PotentialModel::Global { c, .. } => c,
            PotentialModel::Cornell { .. } => 0.0,
        }
    }

    /// Same model with the constant offset removed.
    pub fn without_offset(&self) -> Self {
        match *self {
            PotentialModel::Global { a, b, .. } => PotentialModel::Global { a, b, c: 0.0 },
            cornell => cornell,
        }
    }

    /// Scales every parameter by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            PotentialModel::Cornell { a, b } => PotentialModel::Cornell {
                a: a * factor,
                b: b * factor,
            },
            PotentialModel::Global { a, b, c } => PotentialModel::Global {
                a: a * factor,
                b: b * factor,
                c: c * factor,
            },
        }
    }

    /// Decomposition into `Σ cᵢ rᵖⁱ`.
    pub fn terms(&self) -> Vec<PowerTerm> {
        let t = |coefficient, power| PowerTerm { coefficient, power };
        match *self {
            PotentialModel::Cornell { a, b } => vec![t(-a, -1.0), t(b, 1.0)],
            PotentialModel::Global { a, b, c } => vec![t(a, 0.5), t(-b, -1.0), t(c, 0.0)],
        }
    }

    /// Evaluates `V(r)`; `r` must be strictly positive.
    pub fn eval(&self, r: f64) -> Result<f64> {
        self.validate()?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("r", r, "r > 0"));
        }
        Ok(self.value(r))
    }

    /// Unchecked evaluation for hot loops; caller guarantees `r > 0`.
    #[inline]
    pub(crate) fn value(&self, r: f64) -> f64 {
        match *self {
            PotentialModel::Cornell { a, b } => -a / r + b * r,
            PotentialModel::Global { a, b, c } => a * r.sqrt() - b / r + c,
        }
    }

    /// Uniform samples `(r, V(r))` on `[r_min, r_max]`.
    ///
    /// A single point is allowed when `r_min == r_max`.
    pub fn curve(&self, r_min: f64, r_max: f64, n_points: usize) -> Result<Vec<(f64, f64)>> {
        self.validate()?;
        if !(r_min > 0.0) {
            return Err(Error::domain("r_min", r_min, "r_min > 0"));
        }
        match n_points {
            0 => Err(Error::InvalidParameter("n_points must be at least 1".into())),
            1 if r_min == r_max => Ok(vec![(r_min, self.value(r_min))]),
            1 => Err(Error::InvalidParameter(
                "a single sample requires r_min == r_max".into(),
            )),
            _ => {
                if !(r_max > r_min) || !r_max.is_finite() {
                    return Err(Error::domain("r_max", r_max, "r_max > r_min"));
                }
                let step = (r_max - r_min) / (n_points - 1) as f64;
                Ok((0..n_points)
                    .map(|i| {
                        let r = if i == n_points - 1 {
                            r_max
                        } else {
                            r_min + step * i as f64
                        };
                        (r, self.value(r))
                    })
                    .collect())
            }
        }
    }
}
