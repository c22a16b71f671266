//! Spanning-tree counts of Q_n from the product formula, the Laplacian
//! spectrum, and (small n) Kirchhoff's cofactor.
//!
//!     cargo run --example spanning_trees -- 10

use cubespec::cayley::{make_cayley, GeneratorSet};
use cubespec::trees::{matrix_tree_oracle, tree_report};
use cubespec::Limits;

fn main() -> cubespec::Result<()> {
    let n_max: u32 = std::env::args().nth(1).map_or(Ok(8), |s| s.parse()).expect("n must be an integer");

    let limits = Limits::default();
    for n in 1..=n_max {
        let report = tree_report(n, &limits)?;
        let shown = if report.digits > 40 { format!("({} digits)", report.digits) } else { report.spanning_trees.clone() };
        println!("n={n:<3} τ = {shown:<42} routes agree: {}", report.routes_agree);
    }

    // A disconnected Cayley graph has none.
    let g = make_cayley(3, GeneratorSet::from_strs(3, &["011", "101"])?)?;
    println!("τ(<011, 101>) = {}", matrix_tree_oracle(&g)?.value);
    Ok(())
}
