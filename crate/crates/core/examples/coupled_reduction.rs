//! Slaving reduction of two coupled overdamped oscillators.
use modred::gaussian::w2_1d;
use modred::reduction::{invariance_roots, reduce_coupled};
use modred::{CoupledParams, ModelParams};

fn main() -> modred::Result<()> {
    for k in [0.01, 0.1, 1.0, 10.0] {
        let p = CoupledParams::symmetric(-1.0, k, 1.0, 0.0)?;
        let (plus, minus) = invariance_roots(p.a, p.d, k)?;
        let red = reduce_coupled(&p)?;
        let model = ModelParams::Coupled(p);
        let worst = [0.1, 0.5, 1.0, 2.0, 5.0]
            .iter()
            .map(|&t| Ok(w2_1d(&model.full_marginal(t)?, &model.reduced_law(t)?)))
            .collect::<modred::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "k = {k:>5}: alpha+ = {plus:.6}, alpha- = {minus:.6}, drift = {:.6}, stationary var = {:.6}, max W2 = {worst:.3e}",
            red.drift, red.stationary_variance
        );
    }
    Ok(())
}
