//! Reduce the overdamped Brownian oscillator to a scalar OU process and
//! compare the position marginals over time.
use modred::gaussian::w2_1d;
use modred::reduction::reduce_oscillator;
use modred::{ModelParams, OscillatorParams};

fn main() -> modred::Result<()> {
    let p = OscillatorParams::new(5.0, 2.0, 1.0, 1.0, 0.0)?;
    let red = reduce_oscillator(&p)?;
    println!("lambda1 = {}, lambda2 = {}", p.lambda1(), p.lambda2());
    println!("reduced drift {} diffusion {}", red.drift, red.diffusion);
    let model = ModelParams::Oscillator(p);
    println!("{:>6} {:>12} {:>12} {:>12} {:>12} {:>12}", "t", "mean", "var", "mean_red", "var_red", "W2");
    for t in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let full = model.full_marginal(t)?;
        let reduced = model.reduced_law(t)?;
        println!(
            "{t:>6} {:>12.6} {:>12.6} {:>12.6} {:>12.6} {:>12.3e}",
            full.mean, full.var, reduced.mean, reduced.var, w2_1d(&full, &reduced)
        );
    }
    Ok(())
}
