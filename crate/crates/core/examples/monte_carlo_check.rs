//! Euler-Maruyama ensembles of the full and reduced oscillator compared with the
//! exact laws.
use modred::montecarlo::{bootstrap_w2_se, empirical_w2_1d, moment_estimates, simulate, SimConfig, BOOTSTRAP_RESAMPLES};
use modred::reduction::reduce_oscillator;
use modred::{Gaussian, ModelParams, OscillatorParams};

fn main() -> modred::Result<()> {
    let p = OscillatorParams::new(5.0, 2.0, 1.0, 1.0, 0.0)?;
    let reduced = reduce_oscillator(&p)?;
    let cfg = SimConfig { dt: 1e-3, n_steps: 2000, n_paths: 20_000, seed: 1 };
    let times = [0.5, 1.0, 2.0];
    let full = simulate(&p.full_model(), &Gaussian::Bi(p.initial_state()), &cfg, &times)?;
    let red_cfg = SimConfig { seed: 2, ..cfg };
    let init = Gaussian::Uni(modred::Gaussian1::point_mass(p.x0));
    let red = simulate(&reduced.linear_model(), &init, &red_cfg, &times)?;
    let model = ModelParams::Oscillator(p);
    for (f, r) in full.iter().zip(&red) {
        let xs = f.coordinate(1)?;
        let ys = r.coordinate(1)?;
        let m = moment_estimates(&xs)?;
        let exact = model.full_marginal(f.t)?;
        let w2 = empirical_w2_1d(&xs, &ys)?;
        let se = bootstrap_w2_se(&xs, &ys, BOOTSTRAP_RESAMPLES, 3)?;
        println!(
            "t = {}: mean {:.4} +- {:.4} (exact {:.4}), var {:.4} +- {:.4} (exact {:.4}), empirical W2 {:.4} +- {:.4}",
            f.t, m.mean, m.se_mean, exact.mean, m.var, m.se_var, exact.var, w2, se
        );
    }
    Ok(())
}
