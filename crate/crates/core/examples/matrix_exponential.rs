//! Closed-form 2x2 matrix exponential, eigenvalues, SPD square root and Lyapunov solve.
use modred::linalg2::{eig2, expm2, solve_lyapunov2, sqrtm_spd2};
use modred::Mat2;

fn main() -> modred::Result<()> {
    // oscillator drift for gamma = 5, omega = 2
    let c = Mat2::from_rows([[0.0, 1.0], [-4.0, -5.0]]);
    println!("spectrum of C: {:?}", eig2(c));
    for t in [0.0, 0.5, 1.0, 5.0] {
        println!("exp({t} C) = {:?}", expm2(c.scale(t)).to_rows());
    }
    let rotation = Mat2::from_rows([[0.0, -1.0], [1.0, 0.0]]);
    println!("exp(pi J) = {:?}", expm2(rotation.scale(std::f64::consts::PI)).to_rows());

    let m = Mat2::from_rows([[4.0, 1.0], [1.0, 3.0]]);
    let r = sqrtm_spd2(m)?;
    println!("sqrt(M) = {:?}, residual {:e}", r.to_rows(), (r * r - m).max_abs());

    // stationary covariance of dX = C X dt + sqrt(2 D) dW
    let d = Mat2::from_rows([[0.0, 0.0], [0.0, 5.0]]);
    let sigma = solve_lyapunov2(c, d)?;
    println!("stationary covariance = {:?} (expect diag(1/4, 1))", sigma.to_rows());
    Ok(())
}
