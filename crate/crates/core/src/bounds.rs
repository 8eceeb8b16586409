//! Explicit error bounds and convergence-rate constants for both reductions,
//! checked against the exact Wasserstein-2 distances.
//!
//! Every bound is stored and compared in squared form: a report carries the
//! exact `W2²` and the bound on `W2²` at one time.

use std::f64::consts::E;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{marginal, w2_1d_sq, Gaussian1};
use crate::grid;
use crate::models::{
    coupled_full_law, coupled_reduced_law, equilibrium_laws, oscillator_marginal_law,
    oscillator_reduced_law, ModelParams,
};
use crate::reduction::{symmetric_stationary_variance, CoupledParams, OscillatorParams};

/// Largest coupling accepted by [`coupled_small_k_bound`].
pub const DEFAULT_K_MAX: f64 = 10.0;

const REL_SLACK: f64 = 1e-12;
const ABS_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `W2²(μt, μ̄t)` against the uniform high-friction bound.
    OscHighFriction,
    /// `W2²(μt, μ̄t)` against the exponentially decaying bound.
    OscLongTime,
    /// `W2²(μt, μ∞) ≤ C²e^{−2λ₂t}`.
    OscEquilibriumOriginal,
    /// `W2²(μ̄t, μ̄∞) ≤ C²e^{−2λ₂t}`.
    OscEquilibriumReduced,
    /// `W2²(ρ₁, ρ̂₁)` against the uniform small-coupling bound.
    CoupledSmallK,
    /// `W2²(ρ₁, ρ̂₁)` against the decaying bound.
    CoupledLongTime,
    /// `W2²(ρ₁(t), ρ∞) ≤ C²e^{2at}`.
    CoupledEquilibriumOriginal,
    /// `W2²(ρ̂₁(t), ρ∞) ≤ C²e^{2at}`.
    CoupledEquilibriumReduced,
}

impl BoundKind {
    pub const OSCILLATOR: [BoundKind; 4] = [
        BoundKind::OscHighFriction,
        BoundKind::OscLongTime,
        BoundKind::OscEquilibriumOriginal,
        BoundKind::OscEquilibriumReduced,
    ];
    pub const COUPLED: [BoundKind; 4] = [
        BoundKind::CoupledSmallK,
        BoundKind::CoupledLongTime,
        BoundKind::CoupledEquilibriumOriginal,
        BoundKind::CoupledEquilibriumReduced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::OscHighFriction => "osc_highfriction",
            BoundKind::OscLongTime => "osc_longtime",
            BoundKind::OscEquilibriumOriginal => "osc_equilibrium_original",
            BoundKind::OscEquilibriumReduced => "osc_equilibrium_reduced",
            BoundKind::CoupledSmallK => "coupled_small_k",
            BoundKind::CoupledLongTime => "coupled_longtime",
            BoundKind::CoupledEquilibriumOriginal => "coupled_equilibrium_original",
            BoundKind::CoupledEquilibriumReduced => "coupled_equilibrium_reduced",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One comparison of an exact `W2²` with a bound at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub t: f64,
    pub exact_sq: f64,
    pub bound: f64,
    pub satisfied: bool,
    pub margin: f64,
}

impl BoundReport {
    pub fn new(kind: BoundKind, t: f64, exact_sq: f64, bound: f64) -> Self {
        Self {
            kind,
            t,
            exact_sq,
            bound,
            satisfied: dominates(bound, exact_sq),
            margin: bound - exact_sq,
        }
    }
}

/// `exact ≤ bound·(1 + 1e−12) + 1e−15`.
pub fn dominates(bound: f64, exact: f64) -> bool {
    exact <= bound * (1.0 + REL_SLACK) + ABS_SLACK
}

/// Explicit constants of the common exponential convergence to equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumRate {
    pub c_original: f64,
    pub c_reduced: f64,
    /// Decay rate of `W2` (not `W2²`).
    pub rate: f64,
}

/// `W2²(μt, μ̄t) = (m − m̄)² + (√σ − √σ̄)²`.
pub fn osc_w2_exact(p: &OscillatorParams, t: f64) -> Result<f64> {
    Ok(w2_1d_sq(
        &oscillator_marginal_law(p, t)?,
        &oscillator_reduced_law(p, t)?,
    ))
}

/// `4/(γ² − 4ω²) · [(ω|x₀| + |v₀|)² + 4/β]`, valid for all `t`.
pub fn osc_highfriction_bound(p: &OscillatorParams) -> Result<f64> {
    p.validate()?;
    let gap_sq = (p.gamma - 2.0 * p.omega) * (p.gamma + 2.0 * p.omega);
    let drive = p.omega * p.x0.abs() + p.v0.abs();
    Ok(4.0 / gap_sq * (drive * drive + 4.0 * p.temperature()))
}

/// `[(ω|x₀| + |v₀|)/√(γ² − 4ω²) + 10/(β(γ² − 4ω²))] · e^{−λ₂t}`.
///
/// Holds when `(ω|x₀| + |v₀|)/√(γ² − 4ω²) ≤ 1`; larger initial data can
/// exceed it at intermediate times.
pub fn osc_longtime_bound(p: &OscillatorParams, t: f64) -> Result<f64> {
    Ok(osc_longtime_prefactor(p)? * (-p.lambda2() * t).exp())
}

fn osc_longtime_prefactor(p: &OscillatorParams) -> Result<f64> {
    p.validate()?;
    let gap = p.spectral_gap();
    let drive = p.omega * p.x0.abs() + p.v0.abs();
    Ok(drive / gap + 10.0 * p.temperature() / (gap * gap))
}

/// `C_red² = x₀² + 1/(βω²)` and
/// `C_orig² = (|x₀| + (λ₂|x₀| + |v₀|)/(λ₁ − λ₂))² + γβ⁻¹/(γ² − 4ω²)·(4/γ + 1/λ₁ + 1/λ₂)`,
/// both at rate `λ₂`.
pub fn osc_equilibrium_rate(p: &OscillatorParams) -> Result<EquilibriumRate> {
    p.validate()?;
    let (l1, l2, gap) = (p.lambda1(), p.lambda2(), p.spectral_gap());
    let mean = p.x0.abs() + (l2 * p.x0.abs() + p.v0.abs()) / gap;
    let var = p.gamma * p.temperature() / (gap * gap) * (4.0 / p.gamma + 1.0 / l1 + 1.0 / l2);
    let c_red_sq = p.x0 * p.x0 + p.temperature() / (p.omega * p.omega);
    Ok(EquilibriumRate {
        c_original: (mean * mean + var).sqrt(),
        c_reduced: c_red_sq.sqrt(),
        rate: l2,
    })
}

fn require_symmetric(p: &CoupledParams) -> Result<()> {
    p.validate()?;
    if !p.is_normalized_symmetric() {
        return Err(Error::Unsupported(
            "coupled bounds need a = d and sigma1 = sigma2 = 1".into(),
        ));
    }
    Ok(())
}

fn coupled_first_marginal(p: &CoupledParams, t: f64) -> Result<Gaussian1> {
    marginal(&coupled_full_law(p, t)?, 1)
}

/// `W2²(ρ₁(t), ρ̂₁(t))` for identical oscillators with unit noise.
pub fn coupled_w2_exact(p: &CoupledParams, t: f64) -> Result<f64> {
    Ok(w2_1d_sq(
        &coupled_first_marginal(p, t)?,
        &coupled_reduced_law(p, t)?,
    ))
}

/// `k²|x₂ − x₁|²/(a²e²) + k/(a²e)`, valid for all `t`; requires `k ≤ 10`.
pub fn coupled_small_k_bound(p: &CoupledParams) -> Result<f64> {
    require_symmetric(p)?;
    if p.k > DEFAULT_K_MAX {
        return Err(Error::InvalidParams(format!(
            "small-coupling bound needs k <= {DEFAULT_K_MAX}, got {}",
            p.k
        )));
    }
    let (a2, dx) = (p.a * p.a, p.x2 - p.x1);
    Ok(p.k * p.k * dx * dx / (a2 * E * E) + p.k / (a2 * E))
}

/// `¼|x₂ − x₁|²(1 − e^{−2kt})²e^{2at} + ½/(2k − a)·e^{2at}(1 − e^{−4kt})`.
pub fn coupled_longtime_bound(p: &CoupledParams, t: f64) -> Result<f64> {
    require_symmetric(p)?;
    let (a, k) = (p.a, p.k);
    let dx = p.x2 - p.x1;
    let decay = (2.0 * a * t).exp();
    let mean = -(-2.0 * k * t).exp_m1();
    let var = -(-4.0 * k * t).exp_m1();
    Ok(0.25 * dx * dx * mean * mean * decay + 0.5 / (2.0 * k - a) * decay * var)
}

/// `C_red² = x₁² + Σ̄₁₁`, `C_orig² = (|x₁| + |x₂|)² + ½(1/|a| + 1/(2k − a))`, rate `|a|`.
pub fn coupled_equilibrium_rate(p: &CoupledParams) -> Result<EquilibriumRate> {
    require_symmetric(p)?;
    let (a, k) = (p.a, p.k);
    let mean = p.x1.abs() + p.x2.abs();
    Ok(EquilibriumRate {
        c_original: (mean * mean + 0.5 * (1.0 / a.abs() + 1.0 / (2.0 * k - a))).sqrt(),
        c_reduced: (p.x1 * p.x1 + symmetric_stationary_variance(a, k)).sqrt(),
        rate: a.abs(),
    })
}

/// `W2²` between original and reduced laws of the retained coordinate.
pub fn w2_exact(params: &ModelParams, t: f64) -> Result<f64> {
    match params {
        ModelParams::Oscillator(p) => osc_w2_exact(p, t),
        ModelParams::Coupled(p) => coupled_w2_exact(p, t),
    }
}

/// The uniform-in-time bound: high-friction for the oscillator, small-coupling
/// for the coupled model.
pub fn uniform_bound(params: &ModelParams) -> Result<f64> {
    match params {
        ModelParams::Oscillator(p) => osc_highfriction_bound(p),
        ModelParams::Coupled(p) => coupled_small_k_bound(p),
    }
}

/// `max_t W2²` over a grid.
pub fn sup_w2_sq(params: &ModelParams, grid: &[f64]) -> Result<f64> {
    grid::validate(grid)?;
    grid.iter()
        .map(|&t| w2_exact(params, t))
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
}

/// The default verification grid for `params`.
pub fn default_grid(params: &ModelParams) -> Vec<f64> {
    let (slow, fast) = params.rates();
    grid::default_grid(slow, fast)
}

/// All bounds of the model at every time of `grid`, ordered by `(t, kind)`.
pub fn verify_bounds(params: &ModelParams, grid: &[f64]) -> Result<Vec<BoundReport>> {
    grid::validate(grid)?;
    let evaluator = Evaluator::new(params)?;
    let rows: Vec<Vec<BoundReport>> = grid
        .par_iter()
        .map(|&t| evaluator.at(t))
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

enum Evaluator {
    Oscillator {
        p: OscillatorParams,
        uniform: f64,
        rate: EquilibriumRate,
        eq_orig: Gaussian1,
        eq_red: Gaussian1,
    },
    Coupled {
        p: CoupledParams,
        uniform: f64,
        rate: EquilibriumRate,
        eq: Gaussian1,
    },
}

impl Evaluator {
    fn new(params: &ModelParams) -> Result<Self> {
        match params {
            ModelParams::Oscillator(p) => {
                let (eq_orig, eq_red) = equilibrium_laws(params)?;
                Ok(Evaluator::Oscillator {
                    p: *p,
                    uniform: osc_highfriction_bound(p)?,
                    rate: osc_equilibrium_rate(p)?,
                    eq_orig,
                    eq_red,
                })
            }
            ModelParams::Coupled(p) => Ok(Evaluator::Coupled {
                p: *p,
                uniform: coupled_small_k_bound(p)?,
                rate: coupled_equilibrium_rate(p)?,
                eq: Gaussian1 {
                    mean: 0.0,
                    var: symmetric_stationary_variance(p.a, p.k),
                },
            }),
        }
    }

    fn at(&self, t: f64) -> Result<Vec<BoundReport>> {
        match self {
            Evaluator::Oscillator {
                p,
                uniform,
                rate,
                eq_orig,
                eq_red,
            } => {
                let full = oscillator_marginal_law(p, t)?;
                let red = oscillator_reduced_law(p, t)?;
                let exact = w2_1d_sq(&full, &red);
                let decay = (-2.0 * rate.rate * t).exp();
                Ok(vec![
                    BoundReport::new(BoundKind::OscHighFriction, t, exact, *uniform),
                    BoundReport::new(BoundKind::OscLongTime, t, exact, osc_longtime_bound(p, t)?),
                    BoundReport::new(
                        BoundKind::OscEquilibriumOriginal,
                        t,
                        w2_1d_sq(&full, eq_orig),
                        rate.c_original * rate.c_original * decay,
                    ),
                    BoundReport::new(
                        BoundKind::OscEquilibriumReduced,
                        t,
                        w2_1d_sq(&red, eq_red),
                        rate.c_reduced * rate.c_reduced * decay,
                    ),
                ])
            }
            Evaluator::Coupled {
                p,
                uniform,
                rate,
                eq,
            } => {
                let full = coupled_first_marginal(p, t)?;
                let red = coupled_reduced_law(p, t)?;
                let exact = w2_1d_sq(&full, &red);
                let decay = (-2.0 * rate.rate * t).exp();
                Ok(vec![
                    BoundReport::new(BoundKind::CoupledSmallK, t, exact, *uniform),
                    BoundReport::new(
                        BoundKind::CoupledLongTime,
                        t,
                        exact,
                        coupled_longtime_bound(p, t)?,
                    ),
                    BoundReport::new(
                        BoundKind::CoupledEquilibriumOriginal,
                        t,
                        w2_1d_sq(&full, eq),
                        rate.c_original * rate.c_original * decay,
                    ),
                    BoundReport::new(
                        BoundKind::CoupledEquilibriumReduced,
                        t,
                        w2_1d_sq(&red, eq),
                        rate.c_reduced * rate.c_reduced * decay,
                    ),
                ])
            }
        }
    }
}

/// Least-squares slope of `ln y` against `t`.
pub fn log_slope(ts: &[f64], ys: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let logs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let tm = ts.iter().sum::<f64>() / n;
    let lm = logs.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (t, l) in ts.iter().zip(&logs) {
        num += (t - tm) * (l - lm);
        den += (t - tm) * (t - tm);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::w2_1d;
    use crate::grid::linspace;
    use proptest::prelude::*;

    fn osc() -> OscillatorParams {
        OscillatorParams::new(5.0, 2.0, 1.0, 1.0, 0.0).unwrap()
    }

    fn cpl(k: f64) -> CoupledParams {
        CoupledParams::symmetric(-1.0, k, 1.0, 0.0).unwrap()
    }

    #[test]
    fn oscillator_examples() {
        let p = osc();
        assert_eq!(osc_w2_exact(&p, 0.0).unwrap(), 0.0);
        assert!(osc_w2_exact(&p, 60.0).unwrap() < 1e-30);
        assert!((osc_highfriction_bound(&p).unwrap() - 32.0 / 9.0).abs() < 1e-14);
        assert!((osc_longtime_bound(&p, 0.0).unwrap() - 16.0 / 9.0).abs() < 1e-14);
        for t in [0.5, 1.0, 3.0, 7.0] {
            let ratio = osc_longtime_bound(&p, t).unwrap() / (-t).exp();
            assert!((ratio - 16.0 / 9.0).abs() < 1e-13);
        }
        let rate = osc_equilibrium_rate(&p).unwrap();
        assert!((rate.c_reduced - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((rate.rate - 1.0).abs() < 1e-15);

        let exact = osc_w2_exact(&p, 1.0).unwrap();
        let direct = w2_1d(
            &oscillator_marginal_law(&p, 1.0).unwrap(),
            &oscillator_reduced_law(&p, 1.0).unwrap(),
        );
        assert!((exact - direct * direct).abs() < 1e-13);
    }

    #[test]
    fn zero_start_reduced_rate() {
        let p = OscillatorParams::new(5.0, 2.0, 1.0, 0.0, 0.0).unwrap();
        let rate = osc_equilibrium_rate(&p).unwrap();
        assert!((rate.c_reduced - 1.0 / (p.omega * p.beta.sqrt())).abs() < 1e-15);
        for t in linspace(0.0, 10.0, 50) {
            let r = oscillator_reduced_law(&p, t).unwrap();
            let w = 0.25f64.sqrt() - r.var.sqrt();
            assert!(w <= rate.c_reduced * (-t).exp());
        }
    }

    #[test]
    fn coupled_examples() {
        let p = cpl(0.1);
        assert_eq!(coupled_w2_exact(&p, 0.0).unwrap(), 0.0);
        let expected = 0.01 / (E * E) + 0.1 / E;
        assert!((coupled_small_k_bound(&p).unwrap() - expected).abs() < 1e-15);
        assert_eq!(coupled_longtime_bound(&p, 0.0).unwrap(), 0.0);

        let diag = CoupledParams::symmetric(-1.0, 0.3, 2.0, 2.0).unwrap();
        assert!((coupled_small_k_bound(&diag).unwrap() - 0.3 / E).abs() < 1e-15);
        for t in [0.1, 1.0, 4.0] {
            let full = coupled_first_marginal(&diag, t).unwrap();
            let red = coupled_reduced_law(&diag, t).unwrap();
            assert!((full.mean - red.mean).abs() < 1e-15);
        }

        let rate = coupled_equilibrium_rate(&cpl(1.0)).unwrap();
        assert!((rate.c_reduced - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(rate.rate, 1.0);

        let t = 30.0;
        let tail = coupled_longtime_bound(&cpl(1.0), t).unwrap() / (-2.0 * t).exp();
        assert!((tail - (0.25 + 1.0 / 6.0)).abs() < 1e-12);
    }

    #[test]
    fn coupled_needs_symmetric_model() {
        let p = CoupledParams::new(-1.0, -2.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(coupled_w2_exact(&p, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(
            verify_bounds(&ModelParams::Coupled(p), &[0.0, 1.0]),
            Err(Error::Unsupported(_))
        ));
        let big = CoupledParams::symmetric(-1.0, 11.0, 1.0, 0.0).unwrap();
        assert!(coupled_small_k_bound(&big).is_err());
    }

    #[test]
    fn verify_examples() {
        let params = ModelParams::Oscillator(osc());
        let reports = verify_bounds(&params, &default_grid(&params)).unwrap();
        assert_eq!(reports.len(), 60 * 4);
        assert!(reports.iter().all(|r| r.satisfied), "{reports:?}");
        assert!(reports.windows(2).all(|w| (w[0].t, w[0].kind) < (w[1].t, w[1].kind)));

        for k in [0.1, 1.0, 10.0] {
            let params = ModelParams::Coupled(cpl(k));
            let reports = verify_bounds(&params, &default_grid(&params)).unwrap();
            assert!(reports.iter().all(|r| r.satisfied), "k = {k}");
        }
        assert_eq!(verify_bounds(&params, &[]), Err(Error::EmptyGrid));
    }

    #[test]
    fn longtime_bound_fails_for_large_initial_data() {
        let p = OscillatorParams::new(5.0, 2.0, 1.0, 20.0, 0.0).unwrap();
        let params = ModelParams::Oscillator(p);
        let reports = verify_bounds(&params, &linspace(0.0, 3.0, 61)).unwrap();
        let worst = reports
            .iter()
            .filter(|r| r.kind == BoundKind::OscLongTime)
            .map(|r| r.exact_sq - r.bound)
            .fold(f64::MIN, f64::max);
        assert!(worst > 1.0, "excess {worst}");
        // the other bounds still hold
        assert!(reports
            .iter()
            .filter(|r| r.kind != BoundKind::OscLongTime)
            .all(|r| r.satisfied));
    }

    #[test]
    fn highfriction_bound_scales_as_inverse_square() {
        let mut p = osc();
        for gamma in [40.0, 80.0, 160.0] {
            p.gamma = gamma;
            let b1 = osc_highfriction_bound(&p).unwrap();
            p.gamma = 2.0 * gamma;
            let b2 = osc_highfriction_bound(&p).unwrap();
            assert!((b2 / b1 - 0.25).abs() < 0.05 * 0.25);
            let ratio = b2 / b1;
            assert!((0.2..=0.3).contains(&ratio));
        }
    }

    #[test]
    fn small_k_bound_is_linear() {
        for k in [0.01, 0.001] {
            let ratio = coupled_small_k_bound(&cpl(k / 2.0)).unwrap()
                / coupled_small_k_bound(&cpl(k)).unwrap();
            assert!((ratio - 0.5).abs() < 0.025);
        }
    }

    #[test]
    fn longtime_bounds_decay_log_linearly() {
        let p = osc();
        let c = cpl(1.0);
        let ts = linspace(0.0, 20.0, 41);
        for w in ts.windows(2) {
            let dt = w[1] - w[0];
            let d = osc_longtime_bound(&p, w[1]).unwrap().ln()
                - osc_longtime_bound(&p, w[0]).unwrap().ln();
            assert!((d + p.lambda2() * dt).abs() < 1e-10);
        }
        // the coupled bound is log-linear once its transient factors saturate
        for w in linspace(20.0, 40.0, 21).windows(2) {
            let dt = w[1] - w[0];
            let d = coupled_longtime_bound(&c, w[1]).unwrap().ln()
                - coupled_longtime_bound(&c, w[0]).unwrap().ln();
            assert!((d - 2.0 * c.a * dt).abs() < 1e-10);
        }
    }

    #[test]
    fn equilibrium_distances_share_the_slow_rate() {
        let p = osc();
        let params = ModelParams::Oscillator(p);
        let (eq_o, eq_r) = equilibrium_laws(&params).unwrap();
        let ts = linspace(5.0 / p.lambda2(), 20.0 / p.lambda2(), 30);
        let orig: Vec<f64> = ts
            .iter()
            .map(|&t| w2_1d(&oscillator_marginal_law(&p, t).unwrap(), &eq_o))
            .collect();
        let red: Vec<f64> = ts
            .iter()
            .map(|&t| w2_1d(&oscillator_reduced_law(&p, t).unwrap(), &eq_r))
            .collect();
        for ys in [orig, red] {
            let slope = log_slope(&ts, &ys);
            assert!((slope + p.lambda2()).abs() < 0.02 * p.lambda2(), "{slope}");
        }
    }

    #[test]
    fn distance_to_equilibrium_monotonicity_is_soft() {
        let p = osc();
        let params = ModelParams::Oscillator(p);
        let (eq, _) = equilibrium_laws(&params).unwrap();
        let ds: Vec<f64> = default_grid(&params)
            .iter()
            .map(|&t| w2_1d(&oscillator_marginal_law(&p, t).unwrap(), &eq))
            .collect();
        let breaks = ds.windows(2).filter(|w| w[1] > w[0]).count();
        if breaks > 0 {
            eprintln!("distance to equilibrium increased {breaks} times on the grid");
        }
    }

    fn arb_oscillator() -> impl Strategy<Value = OscillatorParams> {
        (0.5f64..3.0, 1.0f64..25.0, 0.2f64..5.0, -2.0f64..2.0, -2.0f64..2.0).prop_filter_map(
            "overdamped",
            |(omega, ratio, beta, x0, v0)| {
                OscillatorParams::new(2.0 * omega * ratio, omega, beta, x0, v0).ok()
            },
        )
    }

    fn arb_coupled() -> impl Strategy<Value = CoupledParams> {
        (-5.0f64..-0.1, 0.0f64..1.0, -2.0f64..2.0, -2.0f64..2.0).prop_filter_map(
            "k > 0",
            |(a, u, x1, x2)| CoupledParams::symmetric(a, 10.0 * u, x1, x2).ok(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn oscillator_bounds_dominate(p in arb_oscillator()) {
            let params = ModelParams::Oscillator(p);
            let reports = verify_bounds(&params, &default_grid(&params)).unwrap();
            for r in reports {
                prop_assert!(r.satisfied, "{:?} {:?}", p, r);
            }
        }

        #[test]
        fn coupled_bounds_dominate(p in arb_coupled()) {
            let params = ModelParams::Coupled(p);
            let reports = verify_bounds(&params, &default_grid(&params)).unwrap();
            for r in reports {
                prop_assert!(r.satisfied, "{:?} {:?}", p, r);
            }
        }
    }
}
