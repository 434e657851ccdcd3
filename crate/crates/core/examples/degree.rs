//! Stretch factor and algebraic degree of Q3 Q2 Q1 on the triangle.

use penner::cli::{cmd_degree, degree_text};
use penner::penner::{IntersectionMatrix, TwistWord};

fn main() -> penner::Result<()> {
    let omega = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])?;
    for powers in [vec![1, 1, 1], vec![2, 1, 1], vec![3, 2, 1]] {
        let word = TwistWord::new(vec![1, 2, 3], powers.clone())?;
        let out = cmd_degree(&omega, &word, 40)?;
        println!("powers {powers:?}");
        print!("{}", degree_text(&out));
        println!();
    }
    Ok(())
}
