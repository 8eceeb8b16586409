//! Wasserstein-2 distances between Gaussians in one and two dimensions.
use modred::gaussian::{w2_1d, w2_2d, Gaussian1, Gaussian2};
use modred::Mat2;

fn main() -> modred::Result<()> {
    let a = Gaussian1::new(0.0, 1.0)?;
    let b = Gaussian1::new(1.0, 4.0)?;
    println!("W2(N(0,1), N(1,4)) = {} (expect sqrt 2)", w2_1d(&a, &b));

    let p = Gaussian2::new([0.0, 0.0], Mat2::IDENTITY)?;
    let q = Gaussian2::new([1.0, -1.0], Mat2::from_rows([[2.0, 0.5], [0.5, 1.0]]))?;
    println!("W2 in the plane = {}", w2_2d(&p, &q)?);
    println!("W2 to a point mass = {}", w2_2d(&p, &Gaussian2::point_mass([0.0, 0.0]))?);
    Ok(())
}
