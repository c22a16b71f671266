//! Run every cross-route consistency check up to a dimension and print the report.
//!
//!     cargo run --release --example verify -- 6

use cubespec::verify::verify_suite;

fn main() {
    let n_max: u32 = std::env::args().nth(1).map_or(Ok(5), |s| s.parse()).expect("n must be an integer");
    let report = verify_suite(n_max);
    print!("{report}");
    for check in report.checks.iter().filter(|c| c.covered.is_some()) {
        eprintln!("{:<48} {:>8} ms", check.name, check.millis);
    }
    if !report.all_ok() {
        std::process::exit(1);
    }
}
