//! Bipartite configurations preserve an alternating form, so their
//! characteristic polynomials are reciprocal; the triangle's is not.

use penner::penner::{twist_product, IntersectionMatrix, TwistWord};
use penner::spectral::{alternating_form, is_reciprocal, spectral_report, symplectic_check};

fn main() -> penner::Result<()> {
    let bip = IntersectionMatrix::from_int_rows(&[
        &[0, 0, 1, 2],
        &[0, 0, 3, 1],
        &[1, 3, 0, 0],
        &[2, 1, 0, 0],
    ])?;
    let word = TwistWord::new(vec![1, 3, 2, 4], vec![1, 2, 1, 3])?;
    let form = alternating_form(&bip)?;
    let order: Vec<usize> = form.perm.iter().map(|i| i + 1).collect();
    println!("a-block size {}, curve order {order:?}", form.a_size);
    let m = twist_product(&bip, &word)?.to_rational();
    println!("M^T Delta M = Delta: {}", symplectic_check(&bip, &m)?);
    let r = spectral_report(&bip, &word, 30)?;
    println!("reduced {}  reciprocal: {}", r.reduced_poly, is_reciprocal(&r.reduced_poly));

    let tri = IntersectionMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])?;
    let r = spectral_report(&tri, &TwistWord::unit(vec![1, 2, 3])?, 30)?;
    println!("triangle {}  reciprocal: {}", r.reduced_poly, is_reciprocal(&r.reduced_poly));
    Ok(())
}
