//! Characteristic polynomial of the normalized Laplacian via the dimension
//! recursion, checked against the product formula and, for small n, against
//! Faddeev-LeVerrier on the explicit matrix.
//!
//!     cargo run --example polynomial -- 3

use cubespec::cayley::make_hypercube;
use cubespec::polynomial::{charpoly_oracle, closed_form_f, closed_form_g, recursion_f};
use cubespec::spectrum::{normalized_laplacian, LaplacianMode};

fn main() -> cubespec::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse()).expect("n must be an integer");

    for k in 1..=n {
        println!("f_{k}(λ) = {}", recursion_f(k)?);
    }

    let f = recursion_f(n)?;
    println!("recursion == product formula: {}", f == closed_form_f(n)?);

    let g = closed_form_g(n)?;
    println!("monic g_{n}(λ) = {g}");
    println!("as JSON: {}", g.to_json());

    if n <= 5 {
        let l = normalized_laplacian(&make_hypercube(n)?, LaplacianMode::Exact)?;
        let det = charpoly_oracle(l.as_exact().expect("exact mode"))?;
        println!("det(λI - L) == g_{n}: {}", det == g);
    }
    Ok(())
}
