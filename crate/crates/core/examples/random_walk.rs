//! Monte Carlo estimate of the eigentime against the exact value. The
//! estimate depends only on (n, trials, seed), not on the thread count.
//!
//!     cargo run --release --example random_walk -- 5 200000 42

use cubespec::cayley::make_hypercube;
use cubespec::walks::{eigentime_closed_form, simulate_eigentime, DEFAULT_SEED};
use num_traits::ToPrimitive;

fn main() -> cubespec::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: u32 = args.next().map_or(4, |s| s.parse().expect("n"));
    let trials: u64 = args.next().map_or(100_000, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(DEFAULT_SEED, |s| s.parse().expect("seed"));

    let report = simulate_eigentime(&make_hypercube(n)?, trials, seed)?;
    let exact = eigentime_closed_form(n)?.to_f64().unwrap_or(f64::NAN);
    let z = (report.estimate - exact) / report.standard_error;
    println!("n={n} trials={trials} seed={seed}");
    println!("estimate {:.4} ± {:.4}, exact {exact:.4}, z = {z:+.2}", report.estimate, report.standard_error);
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(())
}
