//! Check every analytic error bound against the exact W2 on the default grid.
use modred::bounds::{default_grid, osc_equilibrium_rate, uniform_bound, sup_w2_sq, verify_bounds};
use modred::{CoupledParams, ModelParams, OscillatorParams};

fn main() -> modred::Result<()> {
    let models = [
        ModelParams::Oscillator(OscillatorParams::new(20.0, 2.0, 1.0, 1.0, 0.0)?),
        ModelParams::Coupled(CoupledParams::symmetric(-1.0, 0.2, 1.0, 0.0)?),
    ];
    for model in &models {
        let grid = default_grid(model);
        let reports = verify_bounds(model, &grid)?;
        let violations = reports.iter().filter(|r| !r.satisfied).count();
        let tightest = reports
            .iter()
            .min_by(|a, b| (a.margin / a.bound.max(f64::MIN_POSITIVE)).total_cmp(&(b.margin / b.bound.max(f64::MIN_POSITIVE))))
            .expect("non-empty grid");
        println!("{model:?}");
        println!(
            "  {} checks, {violations} violations; sup W2^2 = {:.3e} vs uniform bound {:.3e}",
            reports.len(),
            sup_w2_sq(model, &grid)?,
            uniform_bound(model)?
        );
        println!("  tightest: {} at t = {:.4}, exact {:.3e} <= {:.3e}", tightest.kind.name(), tightest.t, tightest.exact_sq, tightest.bound);
    }
    if let ModelParams::Oscillator(p) = &models[0] {
        let rate = osc_equilibrium_rate(p)?;
        println!("oscillator equilibrium: C = {:.4}, C_red = {:.4}, rate = {:.4}", rate.c_original, rate.c_reduced, rate.rate);
    }
    Ok(())
}
