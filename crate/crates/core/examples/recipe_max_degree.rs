//! Scan kΩ on the 24-curve bipartite configuration until the stretch
//! factor has degree 24 for three consecutive scales.

use penner::catalog;
use penner::cli::{cmd_recipe, recipe_text, RecipeOptions};
use penner::graph::{graph_of, spanning_tree_walk};
use penner::penner::TwistWord;
use penner::spectral::rank_exact;

fn main() -> penner::Result<()> {
    let omega = catalog::s43_max();
    println!("rank {}", rank_exact(&omega));
    let gamma = spanning_tree_walk(&graph_of(&omega), 1);
    let word = TwistWord::unit(gamma)?;
    let r = cmd_recipe(&omega, &word, &RecipeOptions { cross_check: true, ..Default::default() })?;
    print!("{}", recipe_text(&r));
    Ok(())
}
