//! Eigentime (Kemeny's constant) of the walk on Q_n: closed form, spectral
//! sum, exact mean first-passage times, and the S/L/T split.
//!
//!     cargo run --release --example eigentime -- 4

use cubespec::cayley::make_hypercube;
use cubespec::format_rational;
use cubespec::spectrum::closed_form_spectrum;
use cubespec::walks::{
    asymptotic_ratio, eigentime_closed_form, eigentime_spectral, mfpt_matrix, slt_decomposition, StationaryDistribution,
};

fn main() -> cubespec::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(Ok(4), |s| s.parse()).expect("n must be an integer");

    let h = eigentime_closed_form(n)?;
    println!("H(Q_{n}) = {}", format_rational(&h));
    println!("spectral sum agrees: {}", eigentime_spectral(&closed_form_spectrum(n)?)? == h);
    println!("H / 2^n = {}", format_rational(&asymptotic_ratio(n)?));

    let slt = slt_decomposition(n)?;
    println!("S = {}, L = {}, T = {}", format_rational(&slt.s), format_rational(&slt.l), format_rational(&slt.t));

    if n <= 6 {
        let g = make_hypercube(n)?;
        let m = mfpt_matrix(&g)?;
        let pi = StationaryDistribution::of(&g);
        let by_start = m.eigentime_by_start(&pi);
        println!("Σ_j π_j H_ij is the same from all {} starts: {}", by_start.len(), by_start.iter().all(|x| *x == h));
        let far = g.vertex_count() - 1;
        println!("H(0 -> {far}) = {}", format_rational(&m.values[(0, far as usize)]));
    }
    Ok(())
}
