//! Finite-difference ground state of the s-wave radial equation in a hard-wall sphere.
//!
//! `u = r R` turns the problem into `-(1/2μ) u'' + V u = E u` on `(0, z)` with
//! `u(0) = u(z) = 0`. Second-order central differences on interior nodes give a
//! symmetric tridiagonal matrix whose lowest eigenvalue is found by Sturm
//! bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactConfig {
    pub n_interior: usize,
    /// Solve at `h` and `h/2` and extrapolate.
    pub richardson: bool,
    pub eigen_tol: f64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            n_interior: 4000,
            richardson: true,
            eigen_tol: 1e-12,
        }
    }
}

impl ExactConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_interior < 10 {
            return Err(Error::InvalidParameter(format!(
                "n_interior must be at least 10, got {}",
                self.n_interior
            )));
        }
        if !(self.eigen_tol > 0.0) {
            return Err(Error::InvalidParameter("eigen_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactSolution {
    /// Ground energy, extrapolated when Richardson is on.
    pub energy: f64,
    /// Lowest eigenvalue of the finest matrix, before extrapolation.
    pub raw_energy: f64,
    /// Sturm bracket around `raw_energy`: no eigenvalue below `.0`, one below `.1`.
    pub eigen_bracket: (f64, f64),
    /// `|E(h/2) - E(h)| / 3`, only with Richardson.
    pub error_estimate: Option<f64>,
    pub n_interior: usize,
    /// Grid including both walls.
    pub r: Vec<f64>,
    /// Reduced radial function on `r`, `∫ u² dr = 1` by the trapezoid rule.
    pub u: Vec<f64>,
}

impl ExactSolution {
    pub fn step(&self) -> f64 {
        self.r[1] - self.r[0]
    }

    /// Trapezoid `∫₀^z u² dr`.
    pub fn norm(&self) -> f64 {
        let h = self.step();
        let n = self.u.len();
        h * (self.u[1..n - 1].iter().map(|u| u * u).sum::<f64>()
            + 0.5 * (self.u[0].powi(2) + self.u[n - 1].powi(2)))
    }

    /// Sign changes among interior values, ignoring entries at round-off level.
    pub fn sign_changes(&self) -> usize {
        let peak = self.u.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = 1e-12 * peak;
        let mut last = 0.0f64;
        let mut changes = 0;
        for &v in &self.u {
            if v.abs() <= floor {
                continue;
            }
            if last != 0.0 && v.signum() != last.signum() {
                changes += 1;
            }
            last = v;
        }
        changes
    }
}

/// Symmetric tridiagonal matrix with a constant off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: f64,
}

impl Tridiagonal {
    /// Central-difference Hamiltonian on `n` interior nodes of `(0, z)`.
    pub fn hamiltonian(model: &PotentialModel, z: f64, mu: f64, n: usize) -> Self {
        let h = z / (n + 1) as f64;
        let k = 1.0 / (mu * h * h);
        let diag = (1..=n).map(|i| k + model.value(i as f64 * h)).collect();
        Tridiagonal {
            diag,
            off: -0.5 * k,
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let e2 = self.off * self.off;
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut q = 1.0;
        let mut count = 0;
        for (i, &d) in self.diag.iter().enumerate() {
            q = if i == 0 { d - x } else { d - x - e2 / q };
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().fold(f64::INFINITY, |m, &d| m.min(d));
        let hi = self.diag.iter().fold(f64::NEG_INFINITY, |m, &d| m.max(d));
        (lo - r, hi + r)
    }

    /// Bisection for the lowest eigenvalue; returns the final bracket.
    pub fn lowest_eigenvalue(&self, tol: f64) -> (f64, f64) {
        let (mut lo, mut hi) = self.gershgorin();
        loop {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                return (lo, hi);
            }
            if self.sturm_count(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// Solves `(T - σ) x = rhs` by the Thomas algorithm.
    fn solve_shifted(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let e = self.off;
        let mut c = vec![0.0; n];
        let mut y = vec![0.0; n];
        let mut pivot = self.diag[0] - sigma;
        c[0] = e / pivot;
        y[0] = rhs[0] / pivot;
        for i in 1..n {
            pivot = self.diag[i] - sigma - e * c[i - 1];
            c[i] = e / pivot;
            y[i] = (rhs[i] - e * y[i - 1]) / pivot;
        }
        for i in (0..n - 1).rev() {
            y[i] -= c[i] * y[i + 1];
        }
        y
    }

    /// Inverse iteration at shift `sigma`, normalized so that `h Σ x² = 1`.
    pub fn inverse_iteration(&self, sigma: f64, h: f64) -> Result<Vec<f64>> {
        const MAX_ITER: usize = 50;
        let normalize = |v: &mut Vec<f64>| {
            let s: f64 = v.iter().map(|x| x * x).sum::<f64>() * h;
            let sign = if v.iter().sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let k = sign / s.sqrt();
            v.iter_mut().for_each(|x| *x *= k);
        };
        let mut x = vec![1.0; self.len()];
        normalize(&mut x);
        let mut change = f64::INFINITY;
        for _ in 0..MAX_ITER {
            let mut next = self.solve_shifted(sigma, &x);
            if next.iter().any(|v| !v.is_finite()) {
                break;
            }
            normalize(&mut next);
            change = next
                .iter()
                .zip(&x)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            x = next;
            if change <= 1e-10 {
                return Ok(x);
            }
        }
        Err(Error::EigenNonConvergence {
            iterations: MAX_ITER,
            change,
        })
    }
}

fn check_inputs(model: &PotentialModel, z: f64, mu: f64) -> Result<()> {
    model.validate()?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("z", z, "z > 0"));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::domain("mu", mu, "mu > 0"));
    }
    Ok(())
}

/// Lowest eigenvalue of the `n`-node discretization, without extrapolation.
pub fn grid_energy(model: &PotentialModel, z: f64, mu: f64, n: usize, tol: f64) -> Result<f64> {
    check_inputs(model, z, mu)?;
    let t = Tridiagonal::hamiltonian(model, z, mu, n);
    let (lo, hi) = t.lowest_eigenvalue(tol);
    Ok(0.5 * (lo + hi))
}

pub fn ground_state(
    model: &PotentialModel,
    z: f64,
    mu: f64,
    cfg: &ExactConfig,
) -> Result<ExactSolution> {
    check_inputs(model, z, mu)?;
    cfg.validate()?;

    let coarse = cfg.richardson.then(|| {
        let t = Tridiagonal::hamiltonian(model, z, mu, cfg.n_interior);
        let (lo, hi) = t.lowest_eigenvalue(cfg.eigen_tol);
        0.5 * (lo + hi)
    });
    let n = if cfg.richardson {
        2 * cfg.n_interior + 1
    } else {
        cfg.n_interior
    };
    let h = z / (n + 1) as f64;
    let t = Tridiagonal::hamiltonian(model, z, mu, n);
    let bracket = t.lowest_eigenvalue(cfg.eigen_tol);
    let raw = 0.5 * (bracket.0 + bracket.1);
    let interior = t.inverse_iteration(bracket.0, h)?;

    let (energy, error_estimate) = match coarse {
        Some(c) => ((4.0 * raw - c) / 3.0, Some((raw - c).abs() / 3.0)),
        None => (raw, None),
    };

    let mut u = Vec::with_capacity(n + 2);
    u.push(0.0);
    u.extend(interior);
    u.push(0.0);
    let r = (0..n + 2)
        .map(|i| if i == n + 1 { z } else { i as f64 * h })
        .collect();

    Ok(ExactSolution {
        energy,
        raw_energy: raw,
        eigen_bracket: bracket,
        error_estimate,
        n_interior: n,
        r,
        u,
    })
}

/// Observed order `p` of `E(h) - E(0) ~ h^p` from the three finest resolutions.
pub fn convergence_order(
    model: &PotentialModel,
    z: f64,
    mu: f64,
    resolutions: &[usize],
) -> Result<f64> {
    check_inputs(model, z, mu)?;
    let mut ns = resolutions.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 || ns[0] < 10 {
        return Err(Error::InvalidParameter(
            "convergence_order needs at least 3 distinct resolutions of at least 10 nodes".into(),
        ));
    }
    let ns = &ns[ns.len() - 3..];
    let tol = ExactConfig::default().eigen_tol;
    let e: Vec<f64> = ns
        .iter()
        .map(|&n| grid_energy(model, z, mu, n, tol))
        .collect::<Result<_>>()?;
    let h: Vec<f64> = ns.iter().map(|&n| z / (n + 1) as f64).collect();
    let observed = (e[0] - e[1]) / (e[1] - e[2]);
    if !observed.is_finite() || observed <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "differences are not monotone (ratio {observed})"
        )));
    }
    let ratio = |p: f64| (h[0].powf(p) - h[1].powf(p)) / (h[1].powf(p) - h[2].powf(p));
    let (mut lo, mut hi) = (1e-3, 20.0);
    if observed <= ratio(lo) || observed >= ratio(hi) {
        return Err(Error::InvalidParameter(format!(
            "difference ratio {observed} outside the resolvable order range"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) < observed {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
