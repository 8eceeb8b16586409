//! Euler–Maruyama simulation of linear SDEs as an independent oracle for the
//! closed-form laws.
//!
//! Each path owns a ChaCha8 stream selected by `(seed, path index)`, so the
//! output does not depend on how paths are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::linalg2::{sqrtm_spd2, Mat2, Vec2};
use crate::linear_sde::LinearModel;

/// Largest accepted `dt · |stiffest eigenvalue|`.
pub const STABILITY_LIMIT: f64 = 0.5;
/// Resamples used by [`bootstrap_w2_se`].
pub const BOOTSTRAP_RESAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self, model: &LinearModel) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.n_steps == 0 || self.n_paths == 0 {
            return Err(Error::Config("steps and paths must be positive".into()));
        }
        let ratio = self.dt * model.drift_spectrum().spectral_radius();
        if ratio >= STABILITY_LIMIT {
            return Err(Error::UnstableStep { ratio });
        }
        Ok(())
    }

    pub fn horizon(&self) -> f64 {
        self.dt * self.n_steps as f64
    }
}

/// Terminal states of all paths at one recorded time.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub t: f64,
    pub values: Samples,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Samples {
    Uni(Vec<f64>),
    Bi(Vec<Vec2>),
}

impl SampleSet {
    pub fn len(&self) -> usize {
        match &self.values {
            Samples::Uni(v) => v.len(),
            Samples::Bi(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples of coordinate `index` (1-based).
    pub fn coordinate(&self, index: usize) -> Result<Vec<f64>> {
        match (&self.values, index) {
            (Samples::Uni(v), 1) => Ok(v.clone()),
            (Samples::Bi(v), 1 | 2) => Ok(v.iter().map(|x| x[index - 1]).collect()),
            _ => Err(Error::InvalidParams(format!(
                "no coordinate {index} in these samples"
            ))),
        }
    }
}

/// Noise loading `B` with `BBᵀ = 2D`: diagonal square root for diagonal `D`.
fn noise_matrix(d: Mat2) -> Result<Mat2> {
    if d.a12 == 0.0 && d.a21 == 0.0 {
        Ok(Mat2::diag((2.0 * d.a11).sqrt(), (2.0 * d.a22).sqrt()))
    } else {
        sqrtm_spd2(d * 2.0)
    }
}

fn record_steps(times: &[f64], cfg: &SimConfig) -> Result<Vec<usize>> {
    crate::grid::validate(times)?;
    times
        .iter()
        .map(|&t| {
            let step = (t / cfg.dt).round();
            if (step * cfg.dt - t).abs() > 1e-9 * t.max(cfg.dt) {
                return Err(Error::InvalidGrid(format!(
                    "record time {t} is not a multiple of dt = {}",
                    cfg.dt
                )));
            }
            let step = step as usize;
            if step > cfg.n_steps {
                return Err(Error::InvalidGrid(format!(
                    "record time {t} beyond horizon {}",
                    cfg.horizon()
                )));
            }
            Ok(step)
        })
        .collect()
}

/// Path generator for one model.
enum Stepper {
    Scalar { drift: f64, noise: f64 },
    Planar { drift: Mat2, noise: Mat2 },
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

impl Stepper {
    fn path(&self, init: &InitSampler, dt: f64, steps: &[usize], rng: &mut ChaCha8Rng) -> Result<Vec<Vec2>> {
        let sq = dt.sqrt();
        let mut out = Vec::with_capacity(steps.len());
        let mut x = init.draw(rng);
        let mut n = 0;
        for &target in steps {
            while n < target {
                x = match *self {
                    Stepper::Scalar { drift, noise } => {
                        let dw = if noise == 0.0 { 0.0 } else { normal(rng) };
                        [x[0] + drift * x[0] * dt + noise * sq * dw, 0.0]
                    }
                    Stepper::Planar { drift, noise } => {
                        let dw1 = if noise.a11 == 0.0 && noise.a21 == 0.0 { 0.0 } else { normal(rng) };
                        let dw2 = if noise.a12 == 0.0 && noise.a22 == 0.0 { 0.0 } else { normal(rng) };
                        let f = drift.mul_vec(x);
                        let b = noise.mul_vec([dw1, dw2]);
                        [x[0] + f[0] * dt + b[0] * sq, x[1] + f[1] * dt + b[1] * sq]
                    }
                };
                n += 1;
                if !(x[0].is_finite() && x[1].is_finite()) {
                    return Err(Error::NonFinite { step: n });
                }
            }
            out.push(x);
        }
        Ok(out)
    }
}

/// Initial-state sampler: `mean + L ξ` with `L` the PSD root of the covariance.
struct InitSampler {
    mean: Vec2,
    root: Mat2,
}

impl InitSampler {
    fn new(init: &Gaussian) -> Result<Self> {
        match init {
            Gaussian::Uni(g) => Ok(Self {
                mean: [g.mean, 0.0],
                root: Mat2::diag(g.std_dev(), 0.0),
            }),
            Gaussian::Bi(g) => Ok(Self {
                mean: g.mean,
                root: if g.cov == Mat2::ZERO { Mat2::ZERO } else { sqrtm_spd2(g.cov)? },
            }),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Vec2 {
        if self.root == Mat2::ZERO {
            return self.mean;
        }
        let z = [normal(rng), normal(rng)];
        let s = self.root.mul_vec(z);
        [self.mean[0] + s[0], self.mean[1] + s[1]]
    }
}

/// The RNG of path `index` under `seed`.
pub fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Euler–Maruyama `X ← X + C X dt + B √dt ξ` with `BBᵀ = 2D`, recording the
/// ensemble at each of `record_times` (multiples of `dt`, sorted, within the horizon).
pub fn simulate(
    model: &LinearModel,
    init: &Gaussian,
    cfg: &SimConfig,
    record_times: &[f64],
) -> Result<Vec<SampleSet>> {
    cfg.validate(model)?;
    if init.dim() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: init.dim(),
        });
    }
    let steps = record_steps(record_times, cfg)?;
    let stepper = match *model {
        LinearModel::Scalar { drift, diffusion } => Stepper::Scalar {
            drift,
            noise: (2.0 * diffusion).sqrt(),
        },
        LinearModel::Planar { drift, diffusion } => Stepper::Planar {
            drift,
            noise: noise_matrix(diffusion)?,
        },
    };
    let sampler = InitSampler::new(init)?;

    let paths: Vec<Vec<Vec2>> = (0..cfg.n_paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(cfg.seed, i as u64);
            stepper.path(&sampler, cfg.dt, &steps, &mut rng)
        })
        .collect::<Result<_>>()?;

    Ok(record_times
        .iter()
        .enumerate()
        .map(|(j, &t)| SampleSet {
            t,
            values: match model.dim() {
                1 => Samples::Uni(paths.iter().map(|p| p[j][0]).collect()),
                _ => Samples::Bi(paths.iter().map(|p| p[j]).collect()),
            },
        })
        .collect())
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

fn w2_sorted(a: &[f64], b: &[f64]) -> f64 {
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    (sum / a.len() as f64).sqrt()
}

/// Exact `W2` between two equal-size empirical measures: match sorted samples.
pub fn empirical_w2_1d(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::TooFewSamples(0));
    }
    Ok(w2_sorted(&sorted(a), &sorted(b)))
}

/// Bootstrap standard error of [`empirical_w2_1d`], resampling both samples
/// independently `resamples` times.
pub fn bootstrap_w2_se(a: &[f64], b: &[f64], resamples: usize, seed: u64) -> Result<f64> {
    empirical_w2_1d(a, b)?;
    if resamples < 2 {
        return Err(Error::TooFewSamples(resamples));
    }
    let n = a.len();
    let draws: Vec<f64> = (0..resamples)
        .into_par_iter()
        .map(|r| {
            let mut rng = path_rng(seed, r as u64);
            let ra: Vec<f64> = (0..n).map(|_| a[rng.random_range(0..n)]).collect();
            let rb: Vec<f64> = (0..n).map(|_| b[rng.random_range(0..n)]).collect();
            w2_sorted(&sorted(&ra), &sorted(&rb))
        })
        .collect();
    Ok(moment_estimates(&draws)?.var.sqrt())
}

/// Sample mean and unbiased variance with their standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub var: f64,
    pub se_mean: f64,
    /// Normal-theory `√(2/(n − 1)) σ̂²`.
    pub se_var: f64,
}

pub fn moment_estimates(values: &[f64]) -> Result<Moments> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    if values.iter().all(|v| *v == values[0]) {
        return Ok(Moments {
            mean: values[0],
            var: 0.0,
            se_mean: 0.0,
            se_var: 0.0,
        });
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
    Ok(Moments {
        mean,
        var,
        se_mean: (var / nf).sqrt(),
        se_var: (2.0 / (nf - 1.0)).sqrt() * var,
    })
}
