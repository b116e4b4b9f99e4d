//! Cut-off trial wavefunctions `ψ(r) = N (r - z) e^{-a r^b}`.
//!
//! The factor `(r - z)` pins the wavefunction to zero at the wall `r = z`;
//! beyond the wall it is identically zero. The amplitude is negative inside
//! the box, which is irrelevant because only `|ψ|²` enters any observable.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    /// Exponent of `r` in the envelope; 1 (hydrogen-like) and 2 (oscillator-like)
    /// have closed-form cross-checks, any `b > 0` works numerically.
    pub b: f64,
    /// Variational parameter (GeV^b). `a = 0` is the pure polynomial trial.
    pub a: f64,
    /// Cut-off radius (GeV⁻¹).
    pub z: f64,
}

impl TrialSpec {
    pub fn new(b: f64, a: f64, z: f64) -> Result<Self> {
        let spec = TrialSpec { b, a, z };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0) || !self.b.is_finite() {
            return Err(Error::domain("b", self.b, "b > 0"));
        }
        if !(self.a >= 0.0) || !self.a.is_finite() {
            return Err(Error::domain("a", self.a, "a >= 0"));
        }
        if !(self.z > 0.0) || !self.z.is_finite() {
            return Err(Error::domain("z", self.z, "z > 0"));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn r_pow_b(&self, r: f64) -> f64 {
        if self.b == 1.0 {
            r
        } else if self.b == 2.0 {
            r * r
        } else {
            r.powf(self.b)
        }
    }

    /// `e^{-a r^b}`.
    #[inline]
    pub(crate) fn envelope(&self, r: f64) -> f64 {
        (-self.a * self.r_pow_b(r)).exp()
    }

    /// `(r - z)² e^{-2 a r^b}`, the squared unnormalized amplitude.
    #[inline]
    pub(crate) fn weight(&self, r: f64) -> f64 {
        let d = r - self.z;
        d * d * (-2.0 * self.a * self.r_pow_b(r)).exp()
    }

    /// Unnormalized amplitude `(r - z) e^{-a r^b}`; zero on and beyond the wall.
    pub fn amplitude(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::domain("r", r, "r >= 0"));
        }
        if r >= self.z {
            return Ok(0.0);
        }
        Ok((r - self.z) * self.envelope(r))
    }

    /// `4π ∫₀^z r^{2+p} (r - z)² e^{-2a r^b} dr`: the unnormalized expectation of `r^p`.
    ///
    /// `p > -3` is required for convergence at the origin.
    pub fn moment(&self, power: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if !(power > -3.0) {
            return Err(Error::domain("power", power, "power > -3"));
        }
        let exponent = 2.0 + power;
        let value = if exponent == 2.0 {
            integrate(|r| r * r * self.weight(r), 0.0, self.z, cfg)?.value
        } else if exponent == 1.0 {
            integrate(|r| r * self.weight(r), 0.0, self.z, cfg)?.value
        } else if exponent == 3.0 {
            integrate(|r| r * r * r * self.weight(r), 0.0, self.z, cfg)?.value
        } else {
            integrate(|r| r.powf(exponent) * self.weight(r), 0.0, self.z, cfg)?.value
        };
        Ok(4.0 * PI * value)
    }

    /// Solves the normalization condition for `N²`.
    pub fn normalize(&self, cfg: &QuadratureConfig) -> Result<NormalizedTrial> {
        self.validate()?;
        let norm = self.moment(0.0, cfg)?;
        let n_squared = 1.0 / norm;
        if !(n_squared.is_finite() && n_squared > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "normalization integral {norm:e} is not positive and finite for {self:?}"
            )));
        }
        Ok(NormalizedTrial {
            spec: *self,
            n_squared,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizedTrial {
    pub spec: TrialSpec,
    /// `N²` in GeV³.
    pub n_squared: f64,
}

impl NormalizedTrial {
    /// `|ψ(0)|² = N² z²`.
    pub fn wfo(&self) -> f64 {
        self.n_squared * self.spec.z * self.spec.z
    }

    /// `⟨r⟩` in GeV⁻¹.
    pub fn mean_radius(&self, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self.n_squared * self.spec.moment(1.0, cfg)?)
    }

    /// `|ψ(r)|²`; exactly zero for `r >= z`.
    pub fn density(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::domain("r", r, "r >= 0"));
        }
        if r >= self.spec.z {
            return Ok(0.0);
        }
        Ok(self.n_squared * self.spec.weight(r))
    }
}
