//! The normalized Laplacian spectrum of Q_n three ways: closed form,
//! roots of the recursive characteristic polynomial, and Jacobi eigenvalues.
//!
//!     cargo run --release --example spectrum -- 6

use cubespec::polynomial::recursion_f;
use cubespec::spectrum::{
    closed_form_spectrum, compare_clusters, numeric_hypercube_clusters, spectrum_from_polynomial, DEFAULT_CLUSTER_GAP,
    DEFAULT_JACOBI_TOL,
};
use cubespec::{format_rational, Limits};

fn main() -> cubespec::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(Ok(5), |s| s.parse()).expect("n must be an integer");

    let table = closed_form_spectrum(n)?;
    println!("eigenvalue  multiplicity");
    for (value, mult) in table.entries() {
        println!("{:>10}  {mult}", format_rational(value));
    }
    println!("trace {} (= 2^n), symmetric about 1: {}", format_rational(&table.trace()), table.is_symmetric_about_one());

    if n <= 12 {
        let from_poly = spectrum_from_polynomial(&recursion_f(n)?, n)?;
        println!("roots of f_n agree: {}", from_poly == table);
    }

    let limits = Limits::default();
    if n <= limits.dense_float {
        let clusters = numeric_hypercube_clusters(n, DEFAULT_JACOBI_TOL, DEFAULT_CLUSTER_GAP, &limits)?;
        match compare_clusters(&clusters, &table, 1e-8) {
            Ok(()) => println!("Jacobi clusters agree ({} distinct values)", clusters.len()),
            Err(e) => println!("Jacobi mismatch: {e}"),
        }
    }

    print!("{}", table.to_csv());
    Ok(())
}
