use penner::boundary::{
    contractible_limit, f_gamma, homotopy_invariance_check, insert_backtracking, projection_identity_check,
    q_arrow, rotation_invariance_check, BoundaryPoint,
};
use penner::penner::IntersectionMatrix;

fn main() -> penner::Result<()> {
    let omega = IntersectionMatrix::from_int_rows(&[
        &[0, 2, 1, 0],
        &[2, 0, 1, 3],
        &[1, 1, 0, 1],
        &[0, 3, 1, 0],
    ])?;
    let bp = BoundaryPoint::new(omega)?;

    println!("Q(2<-1):");
    for row in q_arrow(&bp, 2, 1)?.to_rows() {
        let cells: Vec<String> = row.iter().map(|q| format!("{q:>5}")).collect();
        println!("  {}", cells.join(" "));
    }

    let gamma = [1, 2, 4, 3];
    let f = f_gamma(&bp, &gamma)?;
    println!("f_gamma on W (pivot {}): chi = {}, complexity {}", f.pivot, f.charpoly, f.complexity());

    let longer = insert_backtracking(&gamma, 2, 3);
    println!("{gamma:?} -> {longer:?}: f unchanged = {}", homotopy_invariance_check(&bp, &gamma, (2, 3))?);
    println!("rotation keeps chi: {}", rotation_invariance_check(&bp, &gamma, 1)?);
    println!("projection identity at (1,2,3,4): {}", projection_identity_check(&bp, 1, 2, 3, 4)?);

    // Walking out along a tree and back collapses everything.
    let tree_walk = [1, 2, 4, 2];
    println!("chi = {} (expected {})", f_gamma(&bp, &tree_walk)?.charpoly, contractible_limit(4));
    Ok(())
}
