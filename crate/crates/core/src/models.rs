//! Closed-form laws of the two reference models and their reductions.
//!
//! These are written out independently of [`crate::linear_sde::propagate_law`]
//! so the two routes can check each other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{marginal, Gaussian1, Gaussian2};
use crate::linalg2::Mat2;
use crate::linear_sde::stationary_law;
use crate::reduction::{
    reduce_coupled, reduce_oscillator, symmetric_stationary_variance, CoupledParams,
    OscillatorParams,
};

/// Either of the two reference models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelParams {
    Oscillator(OscillatorParams),
    Coupled(CoupledParams),
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelParams::Oscillator(p) => p.validate(),
            ModelParams::Coupled(p) => p.validate(),
        }
    }

    /// `(slow, fast)` relaxation rates: `(λ₂, λ₁)` or `(−λ₊, −λ₋)`.
    pub fn rates(&self) -> (f64, f64) {
        match self {
            ModelParams::Oscillator(p) => (p.lambda2(), p.lambda1()),
            ModelParams::Coupled(p) => {
                let (plus, minus) = p.eigenvalues();
                (-plus, -minus)
            }
        }
    }

    /// Law of the retained coordinate under the full dynamics.
    pub fn full_marginal(&self, t: f64) -> Result<Gaussian1> {
        match self {
            ModelParams::Oscillator(p) => oscillator_marginal_law(p, t),
            ModelParams::Coupled(p) if p.is_normalized_symmetric() => {
                marginal(&coupled_full_law(p, t)?, 1)
            }
            ModelParams::Coupled(p) => {
                let law = crate::linear_sde::propagate_law(
                    &p.full_model(),
                    &p.initial_state().into(),
                    t,
                )?;
                marginal(&law.as_bi().expect("planar"), 1)
            }
        }
    }

    /// Law of the reduced dynamics.
    pub fn reduced_law(&self, t: f64) -> Result<Gaussian1> {
        match self {
            ModelParams::Oscillator(p) => oscillator_reduced_law(p, t),
            ModelParams::Coupled(p) if p.is_normalized_symmetric() => coupled_reduced_law(p, t),
            ModelParams::Coupled(p) => Ok(reduce_coupled(p)?.law(p.x1, t)),
        }
    }
}

struct OscRates {
    l1: f64,
    l2: f64,
    gap: f64,
    /// `γβ⁻¹ / (λ₁ − λ₂)²`
    pref: f64,
}

fn osc_rates(p: &OscillatorParams) -> Result<OscRates> {
    p.validate()?;
    let gap = p.spectral_gap();
    Ok(OscRates {
        l1: p.lambda1(),
        l2: p.lambda2(),
        gap,
        pref: p.gamma * p.temperature() / (gap * gap),
    })
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParams(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// Bivariate law of `(x(t), v(t))` for the oscillator started at `(x0, v0)`.
pub fn oscillator_full_law(p: &OscillatorParams, t: f64) -> Result<Gaussian2> {
    let OscRates { l1, l2, gap, pref } = osc_rates(p)?;
    check_time(t)?;
    let (e1, e2) = ((-l1 * t).exp(), (-l2 * t).exp());
    // e^{−λ₂t} − e^{−λ₁t}
    let spread = -e2 * (-gap * t).exp_m1();
    let w2 = p.omega * p.omega;

    let m_x = (l1 * e2 - l2 * e1) / gap * p.x0 + spread / gap * p.v0;
    let m_v = -w2 * spread / gap * p.x0 + (l1 * e1 - l2 * e2) / gap * p.v0;

    // (λ₁+λ₂)/(λ₁λ₂) + 4/γ (e^{−γt} − 1) − e^{−2λ₁t}/λ₁ − e^{−2λ₂t}/λ₂, regrouped with expm1
    let em1 = |r: f64| (-r * t).exp_m1();
    let s_xx = pref * (4.0 / p.gamma * em1(p.gamma) - em1(2.0 * l1) / l1 - em1(2.0 * l2) / l2);
    let s_xv = pref * spread * spread;
    let s_vv = pref * (4.0 * w2 / p.gamma * em1(p.gamma) - l1 * em1(2.0 * l1) - l2 * em1(2.0 * l2));

    Ok(Gaussian2 {
        mean: [m_x, m_v],
        cov: Mat2::new(s_xx.max(0.0), s_xv, s_xv, s_vv.max(0.0)),
    })
}

/// Law of the position `x(t)`, in the form
/// `m(t) = e^{−λ₂t}x₀ + (e^{−λ₂t} − e^{−λ₁t})/(λ₁ − λ₂) · (λ₂x₀ + v₀)`,
/// `σ(t) = (1 − e^{−2λ₂t}) / (βω²(1 − 4ω²/γ²)) + γβ⁻¹/(γ² − 4ω²) [4/γ (e^{−γt} − 1) − (e^{−2λ₁t} − e^{−2λ₂t})/λ₁]`.
pub fn oscillator_marginal_law(p: &OscillatorParams, t: f64) -> Result<Gaussian1> {
    let OscRates { l1, l2, gap, pref } = osc_rates(p)?;
    check_time(t)?;
    let e2 = (-l2 * t).exp();
    let spread = -e2 * (-gap * t).exp_m1();
    let mean = e2 * p.x0 + spread / gap * (l2 * p.x0 + p.v0);

    let w2 = p.omega * p.omega;
    let ratio = 2.0 * p.omega / p.gamma;
    let slow = -(-2.0 * l2 * t).exp_m1() * p.temperature() / (w2 * (1.0 - ratio) * (1.0 + ratio));
    // e^{−2λ₁t} − e^{−2λ₂t} = e^{−2λ₂t}(e^{−2(λ₁−λ₂)t} − 1)
    let fast_diff = (-2.0 * l2 * t).exp() * (-2.0 * gap * t).exp_m1();
    let var = slow + pref * (4.0 / p.gamma * (-p.gamma * t).exp_m1() - fast_diff / l1);
    Ok(Gaussian1 {
        mean,
        var: var.max(0.0),
    })
}

/// `N(e^{−λ₂t}x₀, (1 − e^{−2λ₂t}) / (ω²β))`.
pub fn oscillator_reduced_law(p: &OscillatorParams, t: f64) -> Result<Gaussian1> {
    check_time(t)?;
    Ok(reduce_oscillator(p)?.law(p.x0, t))
}

fn require_symmetric(p: &CoupledParams) -> Result<()> {
    p.validate()?;
    if !p.is_normalized_symmetric() {
        return Err(Error::Unsupported(
            "closed-form coupled laws need a = d and sigma1 = sigma2 = 1".into(),
        ));
    }
    Ok(())
}

/// Bivariate law of the identical coupled oscillators (`a = d`, unit noise).
///
/// `e^{tQ} = ½[[e^{(a−2k)t} + e^{at}, e^{at} − e^{(a−2k)t}], [·, ·]]` and
/// `Σ(t) = ½[[f + g, g − f], [g − f, f + g]]` with
/// `f = (e^{2(a−2k)t} − 1)/(a − 2k)`, `g = (e^{2at} − 1)/a`.
pub fn coupled_full_law(p: &CoupledParams, t: f64) -> Result<Gaussian2> {
    require_symmetric(p)?;
    check_time(t)?;
    let (a, k) = (p.a, p.k);
    let fast = a - 2.0 * k;
    let (ef, es) = ((fast * t).exp(), (a * t).exp());
    let diag = 0.5 * (ef + es);
    let off = 0.5 * (es - ef);
    let mean = [diag * p.x1 + off * p.x2, off * p.x1 + diag * p.x2];

    let f = (2.0 * fast * t).exp_m1() / fast;
    let g = (2.0 * a * t).exp_m1() / a;
    let s_d = 0.5 * (f + g);
    let s_o = 0.5 * (g - f);
    Ok(Gaussian2 {
        mean,
        cov: Mat2::new(s_d, s_o, s_o, s_d),
    })
}

/// `N(e^{at}x₁, Σ̄₁₁(1 − e^{2at}))` with `λ₊ = a` for identical oscillators.
pub fn coupled_reduced_law(p: &CoupledParams, t: f64) -> Result<Gaussian1> {
    require_symmetric(p)?;
    check_time(t)?;
    let sigma = symmetric_stationary_variance(p.a, p.k);
    Ok(Gaussian1 {
        mean: (p.a * t).exp() * p.x1,
        var: -sigma * (2.0 * p.a * t).exp_m1(),
    })
}

/// `(original equilibrium of the retained coordinate, reduced equilibrium)`.
///
/// The original one is the first marginal of the Lyapunov stationary law of the
/// full model, the reduced one comes from the calibrated reduced model.
pub fn equilibrium_laws(params: &ModelParams) -> Result<(Gaussian1, Gaussian1)> {
    params.validate()?;
    let (full, reduced) = match params {
        ModelParams::Oscillator(p) => (p.full_model(), reduce_oscillator(p)?),
        ModelParams::Coupled(p) => (p.full_model(), reduce_coupled(p)?),
    };
    let stat = stationary_law(&full)?.as_bi().expect("planar model");
    let original = marginal(&stat, 1)?;
    Ok((
        Gaussian1 {
            mean: 0.0,
            var: original.var,
        },
        Gaussian1 {
            mean: 0.0,
            var: reduced.stationary_variance,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::w2_1d;
    use crate::grid::linspace;
    use crate::linear_sde::propagate_law;

    fn osc() -> OscillatorParams {
        OscillatorParams::new(5.0, 2.0, 1.0, 1.0, 0.0).unwrap()
    }

    fn cpl() -> CoupledParams {
        CoupledParams::symmetric(-1.0, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn oscillator_starts_as_point_mass() {
        let g = oscillator_full_law(&osc(), 0.0).unwrap();
        assert_eq!(g.mean, [1.0, 0.0]);
        assert_eq!(g.cov, Mat2::ZERO);
        assert_eq!(oscillator_marginal_law(&osc(), 0.0).unwrap(), Gaussian1::point_mass(1.0));
        assert_eq!(oscillator_reduced_law(&osc(), 0.0).unwrap(), Gaussian1::point_mass(1.0));
    }

    #[test]
    fn oscillator_long_time_limits() {
        let p = osc();
        let g = oscillator_full_law(&p, 100.0 / p.lambda2()).unwrap();
        assert!((g.cov.a11 - 0.25).abs() < 1e-14);
        assert!(g.cov.a12.abs() < 1e-14);
        assert!((g.cov.a22 - 1.0).abs() < 1e-14);
        let stat = stationary_law(&p.full_model()).unwrap().as_bi().unwrap();
        assert!((g.cov - stat.cov).max_abs() < 1e-14);
        let m = oscillator_marginal_law(&p, 100.0).unwrap();
        assert!((m.var - 0.25).abs() < 1e-14);
        let r = oscillator_reduced_law(&p, 100.0).unwrap();
        assert!((r.var - 0.25).abs() < 1e-15 && r.mean.abs() < 1e-40);
    }

    #[test]
    fn oscillator_matches_generic_propagator() {
        let p = osc();
        let closed = oscillator_full_law(&p, 1.0).unwrap();
        let model = crate::linear_sde::LinearModel::planar(
            Mat2::new(0.0, 1.0, -4.0, -5.0),
            Mat2::diag(0.0, 5.0),
        )
        .unwrap();
        let generic = propagate_law(&model, &p.initial_state().into(), 1.0)
            .unwrap()
            .as_bi()
            .unwrap();
        assert!((closed.cov - generic.cov).max_abs() < 1e-10);
        assert!((closed.mean[0] - generic.mean[0]).abs() < 1e-10);
        assert!((closed.mean[1] - generic.mean[1]).abs() < 1e-10);
    }

    #[test]
    fn slaved_start_has_no_mean_correction() {
        let mut p = osc();
        p.v0 = -p.lambda2() * p.x0;
        for t in [0.3, 1.0, 4.0] {
            let m = oscillator_marginal_law(&p, t).unwrap().mean;
            assert!((m - (-p.lambda2() * t).exp() * p.x0).abs() < 1e-16);
        }
    }

    #[test]
    fn reduced_oscillator_at_ln2() {
        let g = oscillator_reduced_law(&osc(), std::f64::consts::LN_2).unwrap();
        assert!((g.mean - 0.5).abs() < 1e-15);
        assert!((g.var - 0.25 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn marginal_consistency_on_grid() {
        let p = OscillatorParams::new(7.3, 1.1, 0.6, -0.4, 1.3).unwrap();
        for t in linspace(0.0, 10.0 / p.lambda2(), 20) {
            let full = marginal(&oscillator_full_law(&p, t).unwrap(), 1).unwrap();
            let direct = oscillator_marginal_law(&p, t).unwrap();
            assert!((full.mean - direct.mean).abs() < 1e-12);
            assert!((full.var - direct.var).abs() < 1e-12);
        }
    }

    #[test]
    fn cross_covariance_nonnegative() {
        let p = OscillatorParams::new(4.1, 2.0, 2.0, 1.0, 1.0).unwrap();
        for t in linspace(0.0, 30.0, 300) {
            assert!(oscillator_full_law(&p, t).unwrap().cov.a12 >= 0.0);
        }
    }

    #[test]
    fn coupled_examples() {
        let g = coupled_full_law(&cpl(), 0.0).unwrap();
        assert_eq!(g.mean, [1.0, 0.0]);
        assert_eq!(g.cov, Mat2::ZERO);

        let diag = CoupledParams::symmetric(-0.7, 2.0, 1.5, 1.5).unwrap();
        for t in [0.2, 1.0, 5.0] {
            let g = coupled_full_law(&diag, t).unwrap();
            let expected = (-0.7 * t).exp() * 1.5;
            assert!((g.mean[0] - expected).abs() < 1e-15);
            assert!((g.mean[1] - expected).abs() < 1e-15);
        }

        let r = coupled_reduced_law(&cpl(), 1.0).unwrap();
        assert!((r.mean - (-1.0f64).exp()).abs() < 1e-16);
        assert!((r.var - 2.0 / 3.0 * (1.0 - (-2.0f64).exp())).abs() < 1e-15);

        let r = coupled_reduced_law(&cpl(), 200.0).unwrap();
        assert!((r.var - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(coupled_reduced_law(&cpl(), 0.0).unwrap(), Gaussian1::point_mass(1.0));
    }

    #[test]
    fn coupled_matches_generic_propagator() {
        let p = cpl();
        let closed = coupled_full_law(&p, 1.0).unwrap();
        let generic = propagate_law(&p.full_model(), &p.initial_state().into(), 1.0)
            .unwrap()
            .as_bi()
            .unwrap();
        assert!((closed.cov - generic.cov).max_abs() < 1e-10);
        assert!((closed.mean[0] - generic.mean[0]).abs() < 1e-10);
    }

    #[test]
    fn coupled_closed_forms_need_symmetry() {
        let p = CoupledParams::new(-1.0, -2.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(coupled_full_law(&p, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(coupled_reduced_law(&p, 1.0), Err(Error::Unsupported(_))));
        // the generic route still serves it
        let params = ModelParams::Coupled(p);
        assert!(params.full_marginal(1.0).is_ok());
        assert!(params.reduced_law(1.0).is_ok());
    }

    #[test]
    fn equilibria_examples() {
        let (o, r) = equilibrium_laws(&ModelParams::Oscillator(osc())).unwrap();
        assert!((o.var - 0.25).abs() < 1e-15 && (r.var - 0.25).abs() < 1e-15);
        let (o, r) = equilibrium_laws(&ModelParams::Coupled(cpl())).unwrap();
        assert!((o.var - 2.0 / 3.0).abs() < 1e-15 && (r.var - 2.0 / 3.0).abs() < 1e-15);
        assert!(w2_1d(&o, &r) < 1e-7);
    }

    #[test]
    fn equilibria_agree_on_random_parameters() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let omega = rng.random_range(0.5..3.0);
            let p = OscillatorParams::new(
                2.0 * omega * rng.random_range(1.001..50.0),
                omega,
                rng.random_range(0.2..5.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            )
            .unwrap();
            let (o, r) = equilibrium_laws(&ModelParams::Oscillator(p)).unwrap();
            assert!((o.var - r.var).abs() <= 1e-13 * r.var.max(1.0));
            assert_eq!((o.mean, r.mean), (0.0, 0.0));

            let c = CoupledParams::symmetric(
                rng.random_range(-5.0..-0.1),
                rng.random_range(0.01..10.0),
                0.0,
                0.0,
            )
            .unwrap();
            let (o, r) = equilibrium_laws(&ModelParams::Coupled(c)).unwrap();
            assert!((o.var - r.var).abs() <= 1e-13 * r.var.max(1.0));
        }
    }
}
