//! Invariant-manifold closure with fluctuation–dissipation noise calibration.
//!
//! Two linear models are reduced to a scalar Ornstein–Uhlenbeck process for the
//! retained coordinate:
//!
//! * the underdamped Brownian oscillator `dx = v dt`,
//!   `dv = −ω²x dt − γv dt + √(2γ/β) dW`, reduced to
//!   `dx̄ = −λ₂ x̄ dt + √(2 D_r) dW` with `D_r = λ₂ / (ω²β)`;
//! * two coupled overdamped oscillators with drift
//!   `Q = [[a − k, k], [k, d − k]]`, reduced via the slaving relation
//!   `x₂ = α x₁` to `dx̂ = λ₊ x̂ dt + √(2 D̂) dW` with `D̂ = −λ₊ Σ̄₁₁`.
//!
//! In both cases the reduced drift is an eigenvalue of the full drift matrix and
//! the reduced noise is chosen so that the reduced stationary variance equals the
//! full model's stationary variance of the retained coordinate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{Gaussian1, Gaussian2};
use crate::linalg2::Mat2;
use crate::linear_sde::{stationary_law, LinearModel};

/// Underdamped oscillator parameters. Only the overdamped-spectrum regime
/// `γ > 2ω` is accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams {
    pub gamma: f64,
    pub omega: f64,
    pub beta: f64,
    pub x0: f64,
    pub v0: f64,
}

impl OscillatorParams {
    /// `beta = +∞` is allowed and gives the noise-free dynamics.
    pub fn new(gamma: f64, omega: f64, beta: f64, x0: f64, v0: f64) -> Result<Self> {
        let p = Self {
            gamma,
            omega,
            beta,
            x0,
            v0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.omega.is_finite() && self.x0.is_finite() && self.v0.is_finite())
            || self.beta.is_nan()
        {
            return Err(Error::InvalidParams("non-finite oscillator parameter".into()));
        }
        if self.omega <= 0.0 || self.gamma <= 0.0 || self.beta <= 0.0 {
            return Err(Error::InvalidParams(
                "gamma, omega and beta must be positive".into(),
            ));
        }
        if self.gamma <= 2.0 * self.omega {
            return Err(Error::NotOverdamped {
                gamma: self.gamma,
                omega: self.omega,
            });
        }
        Ok(())
    }

    /// `√(γ² − 4ω²) = λ₁ − λ₂`.
    pub fn spectral_gap(&self) -> f64 {
        ((self.gamma - 2.0 * self.omega) * (self.gamma + 2.0 * self.omega)).sqrt()
    }

    /// Fast rate `λ₁ = (γ + √(γ² − 4ω²)) / 2`.
    pub fn lambda1(&self) -> f64 {
        0.5 * (self.gamma + self.spectral_gap())
    }

    /// Slow rate `λ₂ = 2ω² / (γ + √(γ² − 4ω²))`.
    pub fn lambda2(&self) -> f64 {
        2.0 * self.omega * self.omega / (self.gamma + self.spectral_gap())
    }

    /// `1/β`, zero for the noise-free limit.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    /// Phase-space model `C = [[0, 1], [−ω², −γ]]`, `D = diag(0, γ/β)`.
    pub fn full_model(&self) -> LinearModel {
        LinearModel::Planar {
            drift: Mat2::new(0.0, 1.0, -self.omega * self.omega, -self.gamma),
            diffusion: Mat2::diag(0.0, self.gamma * self.temperature()),
        }
    }

    pub fn initial_state(&self) -> Gaussian2 {
        Gaussian2::point_mass([self.x0, self.v0])
    }
}

/// Coupled overdamped oscillators. `sigma1`, `sigma2` are the diagonal
/// entries of the Fokker–Planck diffusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledParams {
    pub a: f64,
    pub d: f64,
    pub k: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl CoupledParams {
    pub fn new(a: f64, d: f64, k: f64, sigma1: f64, sigma2: f64, x1: f64, x2: f64) -> Result<Self> {
        let p = Self {
            a,
            d,
            k,
            sigma1,
            sigma2,
            x1,
            x2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Identical oscillators `a = d` with unit noise.
    pub fn symmetric(a: f64, k: f64, x1: f64, x2: f64) -> Result<Self> {
        Self::new(a, a, k, 1.0, 1.0, x1, x2)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a, self.d, self.k, self.sigma1, self.sigma2, self.x1, self.x2];
        if !all.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams("non-finite coupled parameter".into()));
        }
        if !(self.a < 0.0 && self.d < 0.0) {
            return Err(Error::InvalidParams("a and d must be negative".into()));
        }
        if self.a < self.d {
            return Err(Error::InvalidParams("a >= d is required".into()));
        }
        if self.k <= 0.0 {
            return Err(Error::InvalidParams("coupling k must be positive".into()));
        }
        if self.sigma1 <= 0.0 || self.sigma2 <= 0.0 {
            return Err(Error::InvalidParams("noise strengths must be positive".into()));
        }
        Ok(())
    }

    /// True for the identical-oscillator, unit-noise case with closed-form laws.
    pub fn is_normalized_symmetric(&self) -> bool {
        self.a == self.d && self.sigma1 == 1.0 && self.sigma2 == 1.0
    }

    /// `Q = [[a − k, k], [k, d − k]]`.
    pub fn drift_matrix(&self) -> Mat2 {
        Mat2::new(self.a - self.k, self.k, self.k, self.d - self.k)
    }

    pub fn full_model(&self) -> LinearModel {
        LinearModel::Planar {
            drift: self.drift_matrix(),
            diffusion: Mat2::diag(self.sigma1, self.sigma2),
        }
    }

    /// `λ± = ((a + d − 2k) ± √((a − d)² + 4k²)) / 2`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let root = self.root();
        (
            0.5 * (self.a + self.d - 2.0 * self.k + root),
            0.5 * (self.a + self.d - 2.0 * self.k - root),
        )
    }

    fn root(&self) -> f64 {
        let diff = self.a - self.d;
        (diff * diff + 4.0 * self.k * self.k).sqrt()
    }

    pub fn initial_state(&self) -> Gaussian2 {
        Gaussian2::point_mass([self.x1, self.x2])
    }
}

/// Scalar OU model `dx = drift·x dt + √(2·diffusion) dW`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedModel {
    pub drift: f64,
    pub diffusion: f64,
    pub stationary_variance: f64,
}

impl ReducedModel {
    pub fn linear_model(&self) -> LinearModel {
        LinearModel::Scalar {
            drift: self.drift,
            diffusion: self.diffusion,
        }
    }

    /// Law at time `t` from a point mass at `x0`, in closed form.
    pub fn law(&self, x0: f64, t: f64) -> Gaussian1 {
        let decay = (self.drift * t).exp();
        Gaussian1 {
            mean: decay * x0,
            var: -self.stationary_variance * (2.0 * self.drift * t).exp_m1(),
        }
    }
}

/// Both roots `α± = (−(a − d) ± √((a − d)² + 4k²)) / (2k)` of the invariance
/// equation `kα² + (a − d)α − k = 0`.
///
/// `α₊` is evaluated as `2k / ((a − d) + √(…))`, free of cancellation for small `k`.
pub fn invariance_roots(a: f64, d: f64, k: f64) -> Result<(f64, f64)> {
    if k.is_nan() || k <= 0.0 || !a.is_finite() || !d.is_finite() || !k.is_finite() {
        return Err(Error::InvalidParams("invariance roots need finite a, d and k > 0".into()));
    }
    let diff = a - d;
    let root = (diff * diff + 4.0 * k * k).sqrt();
    if diff >= 0.0 {
        let plus = 2.0 * k / (diff + root);
        let minus = -(diff + root) / (2.0 * k);
        Ok((plus, minus))
    } else {
        let plus = (root - diff) / (2.0 * k);
        let minus = -2.0 * k / (root - diff);
        Ok((plus, minus))
    }
}

/// The closure root with `kα̂ → 0` as `k → 0`, i.e. `α₊` when `a ≥ d`.
pub fn select_closure(a: f64, d: f64, k: f64) -> Result<f64> {
    if a < d {
        return Err(Error::InvalidParams("closure selection assumes a >= d".into()));
    }
    invariance_roots(a, d, k).map(|(plus, _)| plus)
}

/// Reduced drift `a − k + kα̂`.
pub fn closure_drift(a: f64, d: f64, k: f64) -> Result<f64> {
    let alpha = select_closure(a, d, k)?;
    Ok(a - k + k * alpha)
}

/// `Σ̄₁₁ = −½ (1/(a − 2k) + 1/a)` for identical oscillators with unit noise.
pub fn symmetric_stationary_variance(a: f64, k: f64) -> f64 {
    -0.5 * (1.0 / (a - 2.0 * k) + 1.0 / a)
}

/// Reduce the coupled system onto `x₁`.
pub fn reduce_coupled(p: &CoupledParams) -> Result<ReducedModel> {
    p.validate()?;
    let drift = closure_drift(p.a, p.d, p.k)?;
    let stationary_variance = if p.is_normalized_symmetric() {
        symmetric_stationary_variance(p.a, p.k)
    } else {
        let law = stationary_law(&p.full_model())?;
        law.as_bi().expect("planar model").cov.a11
    };
    Ok(ReducedModel {
        drift,
        diffusion: -drift * stationary_variance,
        stationary_variance,
    })
}

/// Reduce the oscillator onto its position: drift `−λ₂`, `D_r = λ₂/(ω²β)`.
pub fn reduce_oscillator(p: &OscillatorParams) -> Result<ReducedModel> {
    p.validate()?;
    let alpha = p.lambda2();
    let w2 = p.omega * p.omega;
    Ok(ReducedModel {
        drift: -alpha,
        diffusion: alpha * p.temperature() / w2,
        stationary_variance: p.temperature() / w2,
    })
}
