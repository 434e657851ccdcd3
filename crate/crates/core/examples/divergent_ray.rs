//! A path that leaves G(Ω): eigenvalue moduli grow or decay like powers
//! of k instead of converging.

use penner::boundary::{ray_convergence_experiment, RayReport};
use penner::penner::{IntersectionMatrix, TwistWord};

fn main() -> penner::Result<()> {
    let omega = IntersectionMatrix::from_int_rows(&[&[0, 0, 1, 2], &[0, 0, 1, 1], &[1, 1, 0, 1], &[2, 1, 1, 0]])?;
    let word = TwistWord::unit(vec![1, 2, 3, 4])?;
    let RayReport::Divergent(d) = ray_convergence_experiment(&omega, &word, &[16, 32, 64, 128, 256], 30)? else {
        unreachable!("edge (1,2) is missing");
    };
    println!("missing edge {:?}", d.missing_edge);
    for (k, ev) in d.scales.iter().zip(&d.eigenvalues) {
        let m: Vec<String> = ev.iter().map(|z| format!("{:>12.4e}", z.norm())).collect();
        println!("k = {k:>3}: {}", m.join(" "));
    }
    println!("slopes    {:?}", d.exponents.iter().map(|x| (x * 1000.0).round() / 1000.0).collect::<Vec<_>>());
    println!("constants {:?}", d.constants.iter().map(|x| (x * 1000.0).round() / 1000.0).collect::<Vec<_>>());
    Ok(())
}
