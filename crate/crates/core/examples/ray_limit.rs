//! Characteristic polynomials along the ray kΩ₃ approach x^2 + x
//! once the Perron-Frobenius root is divided out.

use penner::boundary::{ray_convergence_experiment, RayReport};
use penner::penner::{IntersectionMatrix, TwistWord};

fn main() -> penner::Result<()> {
    let omega = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])?;
    let word = TwistWord::unit(vec![1, 2, 3])?;
    let RayReport::Convergent(ray) = ray_convergence_experiment(&omega, &word, &[1, 2, 4, 8, 16, 32, 64, 128], 40)? else {
        unreachable!("the triangle path is supported");
    };
    println!("chi(f_gamma) = {}", ray.limit.charpoly);
    for row in &ray.rows {
        println!("k = {:>4}  lambda = {:<24}  distance = {:.5}", row.k, row.lambda.to_decimal(20), row.distance);
    }
    // Roughly halves with each doubling of k.
    let d = ray.diagnostic.distances();
    for w in d.windows(2) {
        print!("{:.3} ", w[1] / w[0]);
    }
    println!();
    Ok(())
}
