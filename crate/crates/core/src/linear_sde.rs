//! Linear drift-diffusion `∂ρ/∂t = −div(C x ρ) + div(D ∇ρ)` and the exact
//! Gaussian law it transports.
//!
//! For Gaussian initial data the law stays Gaussian with
//! `μ(t) = e^{tC} μ(0)` and `Σ(t) = e^{tC} Σ(0) e^{tCᵀ} + 2 ∫₀ᵗ e^{sC} D e^{sCᵀ} ds`.
//! The integral is closed-form when `C` is symmetric and commutes with `D`,
//! otherwise it is evaluated by adaptive Gauss–Legendre quadrature.

use crate::error::{Error, Result};
use crate::gaussian::{Gaussian, Gaussian1, Gaussian2};
use crate::linalg2::{eig2, expm2, solve_lyapunov2, Eigenvalues, Mat2};

/// Per-entry absolute tolerance of the covariance quadrature.
pub const QUAD_TOL: f64 = 1e-12;
/// Panel budget of the covariance quadrature.
pub const QUAD_MAX_PANELS: usize = 1 << 14;

/// Drift `C` (1/time) and diffusion `D` (state²/time) of a linear model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearModel {
    Scalar { drift: f64, diffusion: f64 },
    Planar { drift: Mat2, diffusion: Mat2 },
}

impl LinearModel {
    pub fn scalar(drift: f64, diffusion: f64) -> Result<Self> {
        if !drift.is_finite() || !diffusion.is_finite() {
            return Err(Error::InvalidParams("non-finite model coefficients".into()));
        }
        if diffusion < 0.0 {
            return Err(Error::NotSpd(format!("negative diffusion {diffusion}")));
        }
        Ok(LinearModel::Scalar { drift, diffusion })
    }

    pub fn planar(drift: Mat2, diffusion: Mat2) -> Result<Self> {
        if !drift.is_finite() || !diffusion.is_finite() {
            return Err(Error::InvalidParams("non-finite model coefficients".into()));
        }
        // validates symmetry and PSD of D
        Gaussian2::new([0.0, 0.0], diffusion)?;
        Ok(LinearModel::Planar { drift, diffusion })
    }

    pub fn dim(&self) -> usize {
        match self {
            LinearModel::Scalar { .. } => 1,
            LinearModel::Planar { .. } => 2,
        }
    }

    /// Spectrum of the drift; a scalar drift is reported as a repeated real pair.
    pub fn drift_spectrum(&self) -> Eigenvalues {
        match *self {
            LinearModel::Scalar { drift, .. } => Eigenvalues::Real(drift, drift),
            LinearModel::Planar { drift, .. } => eig2(drift),
        }
    }
}

/// Law at time `t` of the process started from `init`.
pub fn propagate_law(model: &LinearModel, init: &Gaussian, t: f64) -> Result<Gaussian> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParams(format!("time must be finite and >= 0, got {t}")));
    }
    if init.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: init.dim(),
        });
    }
    if t == 0.0 {
        return Ok(*init);
    }
    match (*model, *init) {
        (LinearModel::Scalar { drift, diffusion }, Gaussian::Uni(g)) => {
            let decay = (drift * t).exp();
            let var = decay * decay * g.var + 2.0 * diffusion * scalar_growth(drift, t);
            Ok(Gaussian1 {
                mean: decay * g.mean,
                var: var.max(0.0),
            }
            .into())
        }
        (LinearModel::Planar { drift, diffusion }, Gaussian::Bi(g)) => {
            let flow = expm2(drift * t);
            let integral = match covariance_integral_closed(drift, diffusion, t) {
                Some(m) => m,
                None => covariance_integral_quadrature(drift, diffusion, t)?,
            };
            let cov = flow * g.cov * flow.transpose() + integral * 2.0;
            Ok(Gaussian2 {
                mean: flow.mul_vec(g.mean),
                cov: clip_psd(cov.symmetrize()),
            }
            .into())
        }
        _ => unreachable!("dimensions checked above"),
    }
}

/// `N(0, Σ∞)` with `CΣ∞ + Σ∞Cᵀ + 2D = 0`.
pub fn stationary_law(model: &LinearModel) -> Result<Gaussian> {
    match *model {
        LinearModel::Scalar { drift, diffusion } => {
            if drift >= 0.0 {
                return Err(Error::NotHurwitz {
                    max_real_part: drift,
                });
            }
            Ok(Gaussian1 {
                mean: 0.0,
                var: -diffusion / drift,
            }
            .into())
        }
        LinearModel::Planar { drift, diffusion } => {
            let cov = solve_lyapunov2(drift, diffusion)?;
            Ok(Gaussian2 {
                mean: [0.0, 0.0],
                cov: clip_psd(cov),
            }
            .into())
        }
    }
}

/// `∫₀ᵗ e^{2λs} ds`, exact at `λ = 0`.
fn scalar_growth(lambda: f64, t: f64) -> f64 {
    if lambda == 0.0 {
        t
    } else {
        (2.0 * lambda * t).exp_m1() / (2.0 * lambda)
    }
}

/// `∫₀ᵗ e^{sC} D e^{sCᵀ} ds` in closed form, available when `C` is symmetric
/// and commutes with `D` (then the integrand is `e^{2sC} D`).
///
/// Returns `None` outside that case or when the eigen gap of `C` is too small
/// for the divided difference to be accurate.
pub fn covariance_integral_closed(c: Mat2, d: Mat2, t: f64) -> Option<Mat2> {
    if c.a12 != c.a21 {
        return None;
    }
    let scale = c.max_abs().max(d.max_abs()).max(f64::MIN_POSITIVE);
    let commutator = c * d - d * c;
    if commutator.max_abs() > 1e-14 * scale * scale {
        return None;
    }
    let (hi, lo) = match eig2(c) {
        Eigenvalues::Real(hi, lo) => (hi, lo),
        Eigenvalues::Complex { .. } => return None,
    };
    let phi = if c.a12 == 0.0 && c.a11 == c.a22 {
        Mat2::IDENTITY * scalar_growth(c.a11, t)
    } else {
        let gap = hi - lo;
        if gap <= 1e-6 * hi.abs().max(lo.abs()).max(1.0) {
            return None;
        }
        // spectral projectors of symmetric C
        let p_hi = (c - Mat2::IDENTITY * lo) * (1.0 / gap);
        let p_lo = (Mat2::IDENTITY * hi - c) * (1.0 / gap);
        p_hi * scalar_growth(hi, t) + p_lo * scalar_growth(lo, t)
    };
    Some((phi * d).symmetrize())
}

// 10-point Gauss–Legendre on [-1, 1]
const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_2,
    0.433_395_394_129_247_2,
    0.679_409_568_299_024_4,
    0.865_063_366_688_984_5,
    0.973_906_528_517_171_7,
];
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_87,
    0.269_266_719_309_996_35,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_6,
    0.066_671_344_308_688_14,
];

fn integrand(c: Mat2, d: Mat2, s: f64) -> Mat2 {
    let e = expm2(c * s);
    e * d * e.transpose()
}

/// Panel sum plus the sum of absolute integrand values (for a roundoff floor).
fn gauss_legendre(c: Mat2, d: Mat2, a: f64, b: f64) -> ([f64; 3], [f64; 3]) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = [0.0; 3];
    let mut mag = [0.0; 3];
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        for s in [mid - half * x, mid + half * x] {
            let f = integrand(c, d, s);
            let vals = [f.a11, 0.5 * (f.a12 + f.a21), f.a22];
            for i in 0..3 {
                sum[i] += w * vals[i];
                mag[i] += w * vals[i].abs();
            }
        }
    }
    (sum.map(|v| v * half), mag.map(|v| v * half))
}

/// Panel breakpoints on `[0, t]` that resolve the fastest scale `1/ρ` near the
/// origin and grow geometrically; with complex spectrum no panel is longer
/// than one oscillation period.
fn initial_panels(c: Mat2, t: f64) -> Vec<f64> {
    let spec = eig2(c);
    let rho = spec.spectral_radius();
    let period = match spec {
        Eigenvalues::Complex { im, .. } if im != 0.0 => 2.0 * std::f64::consts::PI / im.abs(),
        _ => f64::INFINITY,
    };
    let mut breaks = vec![0.0];
    if rho * t <= 1.0 && period >= t {
        breaks.push(t);
        return breaks;
    }
    let mut len = (1.0 / rho).min(t);
    let mut at = 0.0;
    while at < t && breaks.len() <= QUAD_MAX_PANELS {
        at = (at + len.min(period)).min(t);
        breaks.push(at);
        len *= 2.0;
    }
    breaks
}

/// Adaptive Gauss–Legendre evaluation of `∫₀ᵗ e^{sC} D e^{sCᵀ} ds`.
///
/// A panel is accepted when its two-half refinement changes every entry by
/// less than its share `QUAD_TOL·len/t` of the tolerance (or by a roundoff
/// floor proportional to the integrand magnitude).
pub fn covariance_integral_quadrature(c: Mat2, d: Mat2, t: f64) -> Result<Mat2> {
    if t == 0.0 {
        return Ok(Mat2::ZERO);
    }
    let mut total = [0.0; 3];
    let breaks = initial_panels(c, t);
    let mut evaluated = breaks.len();
    let mut stack: Vec<(f64, f64, [f64; 3])> = breaks
        .windows(2)
        .rev()
        .map(|w| (w[0], w[1], gauss_legendre(c, d, w[0], w[1]).0))
        .collect();
    while let Some((a, b, coarse)) = stack.pop() {
        let m = 0.5 * (a + b);
        let (left, lmag) = gauss_legendre(c, d, a, m);
        let (right, rmag) = gauss_legendre(c, d, m, b);
        evaluated += 2;
        let share = QUAD_TOL * (b - a) / t;
        let converged = (0..3).all(|i| {
            let fine = left[i] + right[i];
            let floor = 64.0 * f64::EPSILON * (lmag[i] + rmag[i]);
            (fine - coarse[i]).abs() <= share.max(floor)
        });
        if converged {
            for i in 0..3 {
                total[i] += left[i] + right[i];
            }
        } else {
            if evaluated > QUAD_MAX_PANELS {
                return Err(Error::QuadratureFailure {
                    panels: QUAD_MAX_PANELS,
                    tol: QUAD_TOL,
                });
            }
            stack.push((m, b, right));
            stack.push((a, m, left));
        }
    }
    Ok(Mat2::new(total[0], total[1], total[1], total[2]))
}

/// Symmetric PSD projection: negative eigen-components are dropped.
pub(crate) fn clip_psd(m: Mat2) -> Mat2 {
    let m = m.symmetrize();
    match eig2(m) {
        Eigenvalues::Real(hi, lo) if lo < 0.0 => {
            if hi <= 0.0 {
                Mat2::ZERO
            } else {
                ((m - Mat2::IDENTITY * lo) * (hi / (hi - lo))).symmetrize()
            }
        }
        Eigenvalues::Complex { re, .. } if re < 0.0 => Mat2::ZERO,
        _ => m,
    }
}
