//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p cubespec --test acceptance -- --nocapture --test-threads 1`.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use cubespec::cayley::{make_hypercube, verify_block_structure};
use cubespec::cli::main_with_args;
use cubespec::polynomial::{charpoly_oracle, closed_form_f, closed_form_g, recursion_f};
use cubespec::spectrum::{
    closed_form_spectrum, numeric_hypercube_clusters, normalized_laplacian, LaplacianMode, DEFAULT_CLUSTER_GAP,
    DEFAULT_JACOBI_TOL,
};
use cubespec::trees::{count_closed_form, count_spectral, matrix_tree_oracle};
use cubespec::walks::{
    asymptotic_deviation, eigentime_closed_form, eigentime_spectral, mfpt_matrix, s_closed_form,
    simulate_eigentime, slt_decomposition, StationaryDistribution,
};
use cubespec::{binomial_row, format_rational, Limits};

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn verdict(id: &str, title: &str, started: Instant, failures: &[String]) {
    let secs = started.elapsed().as_secs_f64();
    if failures.is_empty() {
        println!("[PASS] {id} {title} ({secs:.1}s)");
    } else {
        println!("[FAIL] {id} {title} ({secs:.1}s): {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "{id} failed: {failures:?}");
}

#[test]
fn ac1_closed_form_spectrum_matches_jacobi() {
    const VALUE_TOL: f64 = 1e-8;
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=10u32 {
        let clusters =
            numeric_hypercube_clusters(n, DEFAULT_JACOBI_TOL, DEFAULT_CLUSTER_GAP, &Limits::default()).unwrap();
        let binom = binomial_row(n);
        if clusters.len() != n as usize + 1 {
            failures.push(format!("n={n}: {} clusters", clusters.len()));
            continue;
        }
        for (k, (value, mult)) in clusters.iter().enumerate() {
            let exact = 2.0 * k as f64 / f64::from(n);
            if (value - exact).abs() > VALUE_TOL {
                failures.push(format!("n={n} k={k}: {value} vs {exact}"));
            }
            if BigInt::from(*mult) != binom[k] {
                failures.push(format!("n={n} k={k}: multiplicity {mult} vs {}", binom[k]));
            }
        }
        let table = closed_form_spectrum(n).unwrap();
        for ((value, mult), (exact, exact_mult)) in clusters.iter().zip(table.entries()) {
            if (value - exact.to_f64().unwrap()).abs() > VALUE_TOL || BigUint::from(*mult) != *exact_mult {
                failures.push(format!("n={n}: table mismatch at {}", format_rational(exact)));
            }
        }
    }
    verdict("AC1", "closed-form spectrum == clustered Jacobi spectrum, n=1..10, tol 1e-8", start, &failures);
}

#[test]
fn ac2_recursion_equals_closed_form() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=10u32 {
        if recursion_f(n).unwrap() != closed_form_f(n).unwrap() {
            failures.push(format!("n={n}"));
        }
    }
    verdict("AC2", "recursion f_n == closed form f_n exactly, n=1..10", start, &failures);
}

#[test]
fn ac3_charpoly_oracle_equals_g() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=6u32 {
        let g = make_hypercube(n).unwrap();
        let l = normalized_laplacian(&g, LaplacianMode::Exact).unwrap();
        if charpoly_oracle(l.as_exact().unwrap()).unwrap() != closed_form_g(n).unwrap() {
            failures.push(format!("n={n}"));
        }
    }
    verdict("AC3", "Faddeev-LeVerrier det(λI-𝓛_n) == g_n exactly, n=1..6", start, &failures);
}

#[test]
fn ac4_eigentime_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=64u32 {
        let closed = eigentime_closed_form(n).unwrap();
        let spectral = eigentime_spectral(&closed_form_spectrum(n).unwrap()).unwrap();
        if closed != spectral {
            failures.push(format!("closed != spectral at n={n}"));
        }
    }
    for n in 1..=8u32 {
        let g = make_hypercube(n).unwrap();
        let h = mfpt_matrix(&g).unwrap();
        let by_start = h.eigentime_by_start(&StationaryDistribution::of(&g));
        let closed = eigentime_closed_form(n).unwrap();
        if by_start[0] != closed {
            failures.push(format!("mfpt != closed at n={n}"));
        }
        // Exhaustive start independence up to n = 6 (and beyond, since it is free).
        if let Some(i) = by_start.iter().position(|v| *v != by_start[0]) {
            failures.push(format!("start {i} differs at n={n}"));
        }
    }
    for (n, want) in [(1, q(1, 2)), (2, q(5, 2)), (3, q(29, 4))] {
        if eigentime_closed_form(n).unwrap() != want {
            failures.push(format!("spot value n={n}"));
        }
    }
    verdict("AC4", "eigentime closed == spectral (1..64) == MFPT (1..8), start-independent", start, &failures);
}

#[test]
fn ac5_linear_growth() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let points = [8u32, 16, 32, 64];
    let devs: Vec<BigRational> = points.iter().map(|&n| asymptotic_deviation(n).unwrap()).collect();
    for (i, w) in devs.windows(2).enumerate() {
        if w[1] >= w[0] {
            failures.push(format!("|ratio-1| not decreasing from n={} to n={}", points[i], points[i + 1]));
        }
    }
    for (&n, d) in points.iter().zip(&devs) {
        if *d > q(6, i64::from(n)) {
            failures.push(format!("|ratio-1| > 6/n at n={n}"));
        }
    }
    for n in 5..=60u32 {
        if asymptotic_deviation(n).unwrap() > q(6, i64::from(n)) {
            failures.push(format!("|ratio-1| > 6/n at n={n}"));
        }
    }
    for n in 1..=60u32 {
        match slt_decomposition(n) {
            Ok(d) => {
                if d.s != s_closed_form(n) {
                    failures.push(format!("S closed form at n={n}"));
                }
                if !(d.t < d.l && d.l <= &d.t * q(3, 1)) {
                    failures.push(format!("T < L <= 3T at n={n}"));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    verdict("AC5", "|H/2^n-1| decreasing at 8,16,32,64 and <= 6/n; S closed form; T<L<=3T", start, &failures);
}

#[test]
fn ac6_spanning_trees() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=12u32 {
        let closed = count_closed_form(n).unwrap();
        let spectral = count_spectral(&closed_form_spectrum(n).unwrap(), u64::from(n), 1 << n).unwrap();
        if closed.value != spectral.value {
            failures.push(format!("closed != spectral at n={n}"));
        }
        if n <= 6 {
            let oracle = matrix_tree_oracle(&make_hypercube(n).unwrap()).unwrap();
            if oracle.value != closed.value {
                failures.push(format!("closed != Matrix-Tree at n={n}"));
            }
        }
    }
    for (n, want) in [(2u32, 4u64), (3, 384), (4, 42_467_328)] {
        if matrix_tree_oracle(&make_hypercube(n).unwrap()).unwrap().value != BigUint::from(want) {
            failures.push(format!("spot value n={n}"));
        }
    }
    verdict("AC6", "spanning trees closed == spectral (1..12) == Matrix-Tree (1..6)", start, &failures);
}

#[test]
fn ac7_monte_carlo() {
    const TRIALS: u64 = 100_000;
    const SEEDS: u64 = 100;
    const REQUIRED: u64 = 99;
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 1..=5u32 {
        let g = make_hypercube(n).unwrap();
        let exact = eigentime_closed_form(n).unwrap().to_f64().unwrap();
        let within = (1..=SEEDS)
            .filter(|&seed| {
                let r = simulate_eigentime(&g, TRIALS, seed).unwrap();
                (r.estimate - exact).abs() <= 3.0 * r.standard_error
            })
            .count() as u64;
        println!("  n={n}: {within}/{SEEDS} seeds within 3 standard errors of {exact}");
        if within < REQUIRED {
            failures.push(format!("n={n}: only {within}/{SEEDS} within 3 SE"));
        }
    }
    let args = ["cubespec", "simulate", "--n", "4", "--trials", "20000", "--seed", "99", "--format", "json"];
    let mut first = Vec::new();
    let mut second = Vec::new();
    assert_eq!(main_with_args(args, &mut first, &mut Vec::new()), 0);
    assert_eq!(main_with_args(args, &mut second, &mut Vec::new()), 0);
    if first != second {
        failures.push("identical seed produced different bytes".into());
    }
    verdict("AC7", "Monte Carlo within 3 SE in >= 99/100 seeds, n<=5, 1e5 trials; reproducible", start, &failures);
}

#[test]
fn ac8_structure() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=10u32 {
        if !verify_block_structure(n).unwrap() {
            failures.push(format!("block structure n={n}"));
        }
    }
    for n in 1..=64u32 {
        let t = closed_form_spectrum(n).unwrap();
        if !t.is_symmetric_about_one() {
            failures.push(format!("λ ↔ 2-λ symmetry n={n}"));
        }
        if t.trace() != BigRational::from_integer(BigInt::one() << n) {
            failures.push(format!("trace n={n}"));
        }
    }
    verdict("AC8", "block structure (2..10), λ↔2-λ symmetry and trace = 2^n (1..64)", start, &failures);
}
