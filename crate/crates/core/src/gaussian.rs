//! Gaussian measures in one and two dimensions and their exact
//! Wasserstein-2 distances.
//!
//! Covariances are stored as variances / covariance matrices, never as
//! standard deviations; square roots are only taken inside the distances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg2::{eig2, sqrtm_spd2, Eigenvalues, Mat2, Vec2};

const PSD_TOL: f64 = 1e-12;

/// Univariate Gaussian `N(mean, var)`. `var = 0` is a point mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gaussian1 {
    pub mean: f64,
    pub var: f64,
}

impl Gaussian1 {
    pub fn new(mean: f64, var: f64) -> Result<Self> {
        if !mean.is_finite() || !var.is_finite() {
            return Err(Error::InvalidParams("non-finite Gaussian parameters".into()));
        }
        if var < 0.0 {
            return Err(Error::NotSpd(format!("negative variance {var}")));
        }
        Ok(Self { mean, var })
    }

    pub fn point_mass(x: f64) -> Self {
        Self { mean: x, var: 0.0 }
    }

    pub fn std_dev(self) -> f64 {
        self.var.max(0.0).sqrt()
    }
}

/// Bivariate Gaussian `N(mean, cov)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian2 {
    pub mean: Vec2,
    pub cov: Mat2,
}

impl Gaussian2 {
    /// Validates symmetry and positive semi-definiteness up to `1e−12·‖cov‖`.
    pub fn new(mean: Vec2, cov: Mat2) -> Result<Self> {
        if !mean.iter().all(|m| m.is_finite()) || !cov.is_finite() {
            return Err(Error::InvalidParams("non-finite Gaussian parameters".into()));
        }
        let tol = PSD_TOL * cov.max_abs();
        if (cov.a12 - cov.a21).abs() > tol {
            return Err(Error::NotSpd("covariance is not symmetric".into()));
        }
        let lo = match eig2(cov.symmetrize()) {
            Eigenvalues::Real(_, lo) => lo,
            Eigenvalues::Complex { re, .. } => re,
        };
        if lo < -tol {
            return Err(Error::NotSpd(format!("covariance eigenvalue {lo:e}")));
        }
        Ok(Self { mean, cov })
    }

    pub fn point_mass(x: Vec2) -> Self {
        Self {
            mean: x,
            cov: Mat2::ZERO,
        }
    }
}

/// A Gaussian of dimension one or two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gaussian {
    Uni(Gaussian1),
    Bi(Gaussian2),
}

impl Gaussian {
    pub fn dim(&self) -> usize {
        match self {
            Gaussian::Uni(_) => 1,
            Gaussian::Bi(_) => 2,
        }
    }

    pub fn as_uni(&self) -> Option<Gaussian1> {
        match self {
            Gaussian::Uni(g) => Some(*g),
            Gaussian::Bi(_) => None,
        }
    }

    pub fn as_bi(&self) -> Option<Gaussian2> {
        match self {
            Gaussian::Bi(g) => Some(*g),
            Gaussian::Uni(_) => None,
        }
    }
}

impl From<Gaussian1> for Gaussian {
    fn from(g: Gaussian1) -> Self {
        Gaussian::Uni(g)
    }
}

impl From<Gaussian2> for Gaussian {
    fn from(g: Gaussian2) -> Self {
        Gaussian::Bi(g)
    }
}

/// Squared 1-D distance `(u1 − u2)² + (σ1 − σ2)²` with `σ` the standard deviations.
pub fn w2_1d_sq(g1: &Gaussian1, g2: &Gaussian1) -> f64 {
    let dm = g1.mean - g2.mean;
    let (s1, s2) = (g1.std_dev(), g2.std_dev());
    // σ1 − σ2 = (v1 − v2)/(σ1 + σ2) keeps precision when the variances nearly agree
    let ds = if s1 + s2 > 0.0 {
        (g1.var.max(0.0) - g2.var.max(0.0)) / (s1 + s2)
    } else {
        0.0
    };
    dm * dm + ds * ds
}

pub fn w2_1d(g1: &Gaussian1, g2: &Gaussian1) -> f64 {
    w2_1d_sq(g1, g2).sqrt()
}

/// `|u − v|² + tr U + tr V − 2 tr √(V^{1/2} U V^{1/2})`, clamped at zero.
pub fn w2_2d_sq(g1: &Gaussian2, g2: &Gaussian2) -> Result<f64> {
    let du = [g1.mean[0] - g2.mean[0], g1.mean[1] - g2.mean[1]];
    let root_v = sqrtm_spd2(g2.cov)?;
    let inner = (root_v * g1.cov.symmetrize() * root_v).symmetrize();
    let cross = sqrtm_spd2(inner)?.trace();
    let value =
        du[0] * du[0] + du[1] * du[1] + g1.cov.trace() + g2.cov.trace() - 2.0 * cross;
    Ok(value.max(0.0))
}

pub fn w2_2d(g1: &Gaussian2, g2: &Gaussian2) -> Result<f64> {
    w2_2d_sq(g1, g2).map(f64::sqrt)
}

/// Distance between Gaussians of the same dimension.
pub fn w2(g1: &Gaussian, g2: &Gaussian) -> Result<f64> {
    match (g1, g2) {
        (Gaussian::Uni(a), Gaussian::Uni(b)) => Ok(w2_1d(a, b)),
        (Gaussian::Bi(a), Gaussian::Bi(b)) => w2_2d(a, b),
        _ => Err(Error::DimensionMismatch {
            expected: g1.dim(),
            got: g2.dim(),
        }),
    }
}

/// Law of coordinate `index` (1-based) of a bivariate Gaussian.
pub fn marginal(g: &Gaussian2, index: usize) -> Result<Gaussian1> {
    match index {
        1 => Ok(Gaussian1 {
            mean: g.mean[0],
            var: g.cov.a11,
        }),
        2 => Ok(Gaussian1 {
            mean: g.mean[1],
            var: g.cov.a22,
        }),
        _ => Err(Error::InvalidParams(format!(
            "marginal index must be 1 or 2, got {index}"
        ))),
    }
}
