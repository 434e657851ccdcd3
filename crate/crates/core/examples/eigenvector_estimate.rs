//! Distance from the left PF eigenvector to the row combination predicted
//! by the first two curves, against the a priori bound.

use penner::boundary::eigenvector_asymptotics;
use penner::penner::{IntersectionMatrix, TwistWord};

fn main() -> penner::Result<()> {
    let omega = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])?;
    let word = TwistWord::unit(vec![1, 2, 3])?;
    println!("{:>5} {:>16} {:>12} {:>12}", "k", "lambda", "lhs", "bound");
    for k in [1, 2, 4, 8, 16, 32, 64, 128] {
        let e = eigenvector_asymptotics(&omega, &word, k)?;
        println!("{:>5} {:>16.6} {:>12.6} {:>12.4}", k, e.lambda, e.lhs, e.rhs_bound);
    }
    Ok(())
}
