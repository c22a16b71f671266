//! Simple random walks on Z_2^n Cayley graphs: the eigentime identity
//! `H = Σ_j π_j H_ij = Σ_{λ≠0} 1/λ`, computed in closed form, from a spectrum, from
//! exact mean first-passage times, and by Monte Carlo.
//!
//! `H_ii = 0` throughout. The walk is the plain (non-lazy) walk; it is periodic on
//! bipartite graphs, which leaves hitting times finite and `π` stationary.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{is_generating, CayleyGraph};
use crate::linalg::{fraction_free_solve, Matrix};
use crate::spectrum::SpectrumTable;
use crate::{binomial_row, rational_int, Error, Limits, Result};

/// Largest `n` for the closed-form walk quantities.
pub const MAX_FORMULA_N: u32 = 64;

/// `π_i = d_i / 2|E|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryDistribution {
    pub weights: Vec<BigRational>,
}

impl StationaryDistribution {
    pub fn of(g: &CayleyGraph) -> Self {
        let two_m = BigInt::from(2 * g.edge_count());
        let d = BigInt::from(g.degree());
        let w = BigRational::new(d, two_m);
        StationaryDistribution { weights: vec![w; g.order()] }
    }

    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    /// Exact check of `πP = π` for the transition matrix `P = D^{-1} A`.
    pub fn is_stationary_for(&self, g: &CayleyGraph) -> bool {
        let inv_degree = BigRational::new(BigInt::one(), BigInt::from(g.degree()));
        (0..g.vertex_count()).all(|j| {
            // P_ij = 1/d_i for each neighbor i of j (the graph is undirected).
            let inflow: BigRational = g
                .neighbor_indices(j)
                .map(|i| &self.weights[i as usize] * &inv_degree)
                .sum();
            inflow == self.weights[j as usize]
        })
    }
}

/// Exact mean first-passage times, `values[(i, j)] = H_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct MfptMatrix {
    pub values: Matrix<BigRational>,
}

impl MfptMatrix {
    /// `Σ_j π_j H_ij` for every start vertex `i`.
    pub fn eigentime_by_start(&self, pi: &StationaryDistribution) -> Vec<BigRational> {
        let n = self.values.rows();
        (0..n)
            .map(|i| self.values.row(i).iter().zip(&pi.weights).map(|(h, p)| h * p).sum())
            .collect()
    }
}

/// `Σ_{k=1}^{n} n·C(n,k) / (2k)`.
pub fn eigentime_closed_form(n: u32) -> Result<BigRational> {
    Error::check_range(n, 1, MAX_FORMULA_N)?;
    let binom = binomial_row(n);
    let n_big = BigInt::from(n);
    Ok((1..=n)
        .map(|k| BigRational::new(&n_big * &binom[k as usize], BigInt::from(2 * k)))
        .sum())
}

/// `Σ mult/λ` over the nonzero eigenvalues of a connected graph's spectrum.
pub fn eigentime_spectral(s: &SpectrumTable) -> Result<BigRational> {
    let zero_mult = s.zero_multiplicity();
    if zero_mult > BigUint::one() {
        return Err(Error::Disconnected(format!(
            "eigenvalue 0 has multiplicity {zero_mult}; eigentime is undefined"
        )));
    }
    if zero_mult.is_zero() {
        return Err(Error::InvalidArgument("spectrum has no zero eigenvalue".into()));
    }
    Ok(s.entries()
        .iter()
        .filter(|(v, _)| !v.is_zero())
        .map(|(v, m)| BigRational::from_integer(BigInt::from(m.clone())) / v)
        .sum())
}

/// Hitting times `h_i = H_{i,target}` from the defining system
/// `h_i = 1 + (1/d) Σ_{u ~ i} h_u` (`i ≠ target`), `h_target = 0`, solved on its own.
///
/// Kept as a literal per-target oracle for [`mfpt_matrix`].
pub fn hitting_times_to(g: &CayleyGraph, target: u64) -> Result<Vec<BigRational>> {
    hitting_times_to_with(g, target, &Limits::default())
}

pub fn hitting_times_to_with(g: &CayleyGraph, target: u64, limits: &Limits) -> Result<Vec<BigRational>> {
    Error::check_range(g.dimension(), 1, limits.mfpt)?;
    g.vertex(target)?;
    let order = g.order();
    let t = target as usize;
    let unknowns: Vec<usize> = (0..order).filter(|&i| i != t).collect();
    let mut index = vec![usize::MAX; order];
    for (k, &i) in unknowns.iter().enumerate() {
        index[i] = k;
    }
    let d = BigInt::from(g.degree());
    // d·h_i - Σ_{u ~ i, u ≠ target} h_u = d
    let mut a = Matrix::filled(order - 1, order - 1, BigInt::zero());
    for (k, &i) in unknowns.iter().enumerate() {
        a[(k, k)] += &d;
        for u in g.neighbor_indices(i as u64) {
            if u as usize != t {
                a[(k, index[u as usize])] -= 1;
            }
        }
    }
    let b = Matrix::filled(order - 1, 1, d.clone());
    let sol = fraction_free_solve(&a, &b).map_err(disconnected_if_singular)?;
    let mut h = vec![BigRational::zero(); order];
    for (k, &i) in unknowns.iter().enumerate() {
        h[i] = sol.entry(k, 0);
    }
    Ok(h)
}

fn disconnected_if_singular(e: Error) -> Error {
    match e {
        Error::Singular(msg) => Error::Singular(format!("{msg} (graph is disconnected)")),
        other => other,
    }
}

/// All mean first-passage times.
///
/// For target `j` the hitting-time vector solves `L h = d·1 - 2|E| e_j` with
/// `h_j = 0`, where `L = D - A`. All `N` right-hand sides are eliminated together
/// against the nonsingular `L + J` (`J` all ones; the right-hand sides sum to zero),
/// and each solution is shifted so its target entry vanishes. Every column is then
/// checked exactly against the defining equations.
pub fn mfpt_matrix(g: &CayleyGraph) -> Result<MfptMatrix> {
    mfpt_matrix_with(g, &Limits::default())
}

pub fn mfpt_matrix_with(g: &CayleyGraph, limits: &Limits) -> Result<MfptMatrix> {
    Error::check_range(g.dimension(), 1, limits.mfpt)?;
    let order = g.order();
    let d = g.degree() as i64;
    let two_m = BigInt::from(2 * g.edge_count());
    let mut m = Matrix::filled(order, order, BigInt::one());
    for i in 0..order {
        m[(i, i)] += d;
        for u in g.neighbor_indices(i as u64) {
            m[(i, u as usize)] -= 1;
        }
    }
    let rhs = Matrix::from_fn(order, order, |i, j| {
        if i == j {
            BigInt::from(d) - &two_m
        } else {
            BigInt::from(d)
        }
    });
    let sol = fraction_free_solve(&m, &rhs).map_err(disconnected_if_singular)?;
    let det = &sol.denominator;
    let x = &sol.scaled;

    // det·H_ij = x_ij - x_jj, integer.
    let scaled_h = Matrix::from_fn(order, order, |i, j| &x[(i, j)] - &x[(j, j)]);

    // d·H_ij - Σ_{u~i} H_uj = d for i ≠ j.
    let d_det = det * BigInt::from(d);
    for j in 0..order {
        for i in (0..order).filter(|&i| i != j) {
            let nbr_sum: BigInt = g.neighbor_indices(i as u64).map(|u| &scaled_h[(u as usize, j)]).sum();
            if &scaled_h[(i, j)] * BigInt::from(d) - nbr_sum != d_det {
                return Err(Error::Consistency(format!("H[{i}][{j}] violates the first-passage equations")));
            }
        }
    }
    let values = scaled_h.map(|v| BigRational::new(v.clone(), det.clone()));
    Ok(MfptMatrix { values })
}

/// `Σ_j π_j H_ij` from exact mean first-passage times, starting at vertex 0.
///
/// Fails with [`Error::Consistency`] unless every start vertex gives the same value.
pub fn eigentime_from_mfpt(g: &CayleyGraph) -> Result<BigRational> {
    eigentime_from_mfpt_with(g, &Limits::default())
}

pub fn eigentime_from_mfpt_with(g: &CayleyGraph, limits: &Limits) -> Result<BigRational> {
    let h = mfpt_matrix_with(g, limits)?;
    let pi = StationaryDistribution::of(g);
    let by_start = h.eigentime_by_start(&pi);
    if let Some((i, v)) = by_start.iter().enumerate().find(|(_, v)| *v != &by_start[0]) {
        return Err(Error::Consistency(format!(
            "eigentime from start {i} is {v}, from start 0 it is {}",
            by_start[0]
        )));
    }
    Ok(by_start[0].clone())
}

/// Monte Carlo estimate of the eigentime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkReport {
    pub n: u32,
    pub estimate: f64,
    pub trials: u64,
    #[serde(rename = "stderr")]
    pub standard_error: f64,
    pub seed: u64,
}

/// Default seed used by the CLI when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// Per trial: draw a target from `π`, walk from vertex 0 by uniformly random
/// generators until the target is hit, record the step count.
///
/// Trial `t` draws from ChaCha8 keyed by `seed` (little-endian in the first 8 key
/// bytes, remaining bytes zero) on stream `t`, so the report depends only on
/// `(graph, trials, seed)`, not on scheduling.
pub fn simulate_eigentime(g: &CayleyGraph, trials: u64, seed: u64) -> Result<WalkReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !is_generating(g.generators()) {
        return Err(Error::Disconnected("generators do not span Z_2^n; some targets are unreachable".into()));
    }
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let masks: Vec<u64> = g.generators().elements().iter().map(|e| e.bits()).collect();
    let order = g.vertex_count();

    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::from_seed(key);
            rng.set_stream(trial);
            let target = rng.random_range(0..order);
            let mut pos = 0u64;
            let mut steps = 0u64;
            while pos != target {
                pos ^= masks[rng.random_range(0..masks.len())];
                steps += 1;
            }
            (u128::from(steps), u128::from(steps) * u128::from(steps))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let t = u128::from(trials);
    let estimate = sum as f64 / trials as f64;
    let standard_error = if trials > 1 {
        // Exact integer numerator of the unbiased variance.
        let numer = t * sum_sq - sum * sum;
        let variance = numer as f64 / (t * (t - 1)) as f64;
        (variance / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(WalkReport { n: g.dimension(), estimate, trials, standard_error, seed })
}

/// `H = S + L` with the tail bound `T < L ≤ 3T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SltDecomposition {
    pub s: BigRational,
    pub l: BigRational,
    pub t: BigRational,
}

/// `S(n) = (n/2) Σ C(n,k)/(k+1)`, `L(n) = (n/2) Σ C(n,k)/(k(k+1))`,
/// `T(n) = (n/2) Σ C(n,k)/((k+1)(k+2))`, sums over `1 ≤ k ≤ n`.
///
/// Also checks `S(n) = n(2^{n+1} - n - 2) / (2(n+1))`, `S + L = H`, and
/// `T < L ≤ 3T`; any failure is an [`Error::Consistency`].
pub fn slt_decomposition(n: u32) -> Result<SltDecomposition> {
    Error::check_range(n, 1, MAX_FORMULA_N)?;
    let binom = binomial_row(n);
    let half_n = BigRational::new(BigInt::from(n), BigInt::from(2));
    let sum = |weight: &dyn Fn(i64) -> i64| -> BigRational {
        let total: BigRational = (1..=i64::from(n))
            .map(|k| BigRational::new(binom[k as usize].clone(), BigInt::from(weight(k))))
            .sum();
        &half_n * total
    };
    let s = sum(&|k| k + 1);
    let l = sum(&|k| k * (k + 1));
    let t = sum(&|k| (k + 1) * (k + 2));

    let s_closed = s_closed_form(n);
    if s != s_closed {
        return Err(Error::Consistency(format!("S({n}) = {s} but closed form gives {s_closed}")));
    }
    let h = eigentime_closed_form(n)?;
    if &s + &l != h {
        return Err(Error::Consistency(format!("S({n}) + L({n}) != H({n})")));
    }
    let three_t = &t * rational_int(3);
    if !(t < l && l <= three_t) {
        return Err(Error::Consistency(format!("T({n}) < L({n}) <= 3T({n}) fails")));
    }
    Ok(SltDecomposition { s, l, t })
}

/// `n(2^{n+1} - n - 2) / (2(n+1))`.
pub fn s_closed_form(n: u32) -> BigRational {
    let n_big = BigInt::from(n);
    let numer = &n_big * ((BigInt::one() << (n + 1)) - &n_big - 2);
    BigRational::new(numer, 2 * (n_big + 1))
}

/// `H(Γ_n) / 2^n`.
pub fn asymptotic_ratio(n: u32) -> Result<BigRational> {
    let h = eigentime_closed_form(n)?;
    Ok(h / BigRational::from_integer(BigInt::one() << n))
}

/// `|H(Γ_n)/2^n - 1|`.
pub fn asymptotic_deviation(n: u32) -> Result<BigRational> {
    Ok((asymptotic_ratio(n)? - BigRational::one()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{make_cayley, make_hypercube, GeneratorSet};
    use crate::spectrum::closed_form_spectrum;
    use crate::{format_rational, rational};

    #[test]
    fn closed_form_values() {
        assert_eq!(format_rational(&eigentime_closed_form(1).unwrap()), "1/2");
        assert_eq!(format_rational(&eigentime_closed_form(2).unwrap()), "5/2");
        assert_eq!(format_rational(&eigentime_closed_form(3).unwrap()), "29/4");
        assert_eq!(format_rational(&eigentime_closed_form(4).unwrap()), "103/6");
        assert!(matches!(eigentime_closed_form(0), Err(Error::DimensionRange { .. })));
    }

    #[test]
    fn spectral_values() {
        assert_eq!(eigentime_spectral(&closed_form_spectrum(2).unwrap()).unwrap(), rational(5, 2));
        assert_eq!(eigentime_spectral(&closed_form_spectrum(3).unwrap()).unwrap(), rational(29, 4));
        let disconnected = SpectrumTable::new([
            (BigRational::zero(), BigUint::from(2u8)),
            (rational(1, 1), BigUint::from(2u8)),
        ]);
        assert!(matches!(eigentime_spectral(&disconnected), Err(Error::Disconnected(_))));
        let no_zero = SpectrumTable::new([(rational(1, 1), BigUint::from(2u8))]);
        assert!(eigentime_spectral(&no_zero).is_err());
    }

    #[test]
    fn mfpt_values() {
        assert_eq!(eigentime_from_mfpt(&make_hypercube(1).unwrap()).unwrap(), rational(1, 2));
        let c4 = make_hypercube(2).unwrap();
        let h = mfpt_matrix(&c4).unwrap();
        let row0: Vec<String> = h.values.row(0).iter().map(format_rational).collect();
        assert_eq!(row0, ["0/1", "3/1", "3/1", "4/1"]);
        assert_eq!(eigentime_from_mfpt(&c4).unwrap(), rational(5, 2));
        assert_eq!(eigentime_from_mfpt(&make_hypercube(3).unwrap()).unwrap(), rational(29, 4));
    }

    #[test]
    fn per_target_solve_matches_shared_elimination() {
        for n in 1..=4 {
            let g = make_hypercube(n).unwrap();
            let h = mfpt_matrix(&g).unwrap();
            for target in 0..g.vertex_count() {
                let col = hitting_times_to(&g, target).unwrap();
                for (i, v) in col.iter().enumerate() {
                    assert_eq!(v, &h.values[(i, target as usize)], "n={n} i={i} j={target}");
                }
            }
        }
    }

    #[test]
    fn mfpt_on_disconnected_graph_is_singular() {
        let g = make_cayley(2, GeneratorSet::from_strs(2, &["11"]).unwrap()).unwrap();
        assert!(matches!(mfpt_matrix(&g), Err(Error::Singular(_))));
        assert!(matches!(hitting_times_to(&g, 1), Err(Error::Singular(_))));
    }

    #[test]
    fn mfpt_cap() {
        let g = make_hypercube(9).unwrap();
        assert!(matches!(eigentime_from_mfpt(&g), Err(Error::DimensionRange { .. })));
    }

    #[test]
    fn stationary_distribution() {
        for n in 1..=6 {
            let g = make_hypercube(n).unwrap();
            let pi = StationaryDistribution::of(&g);
            assert!(pi.total().is_one());
            assert!(pi.is_stationary_for(&g));
            assert!(pi.weights.iter().all(|w| *w == BigRational::new(BigInt::one(), BigInt::one() << n)));
        }
    }

    #[test]
    fn slt_values() {
        let d1 = slt_decomposition(1).unwrap();
        assert_eq!(d1.s, rational(1, 4));
        let d2 = slt_decomposition(2).unwrap();
        assert_eq!(d2.s, rational(4, 3));
        for n in 1..=30 {
            let d = slt_decomposition(n).unwrap();
            assert_eq!(&d.s + &d.l, eigentime_closed_form(n).unwrap());
        }
        assert!(slt_decomposition(0).is_err());
    }

    #[test]
    fn ratios() {
        assert_eq!(asymptotic_ratio(2).unwrap(), rational(5, 8));
        assert_eq!(asymptotic_ratio(3).unwrap(), rational(29, 32));
        assert_eq!(asymptotic_ratio(4).unwrap(), rational(103, 96));
    }

    #[test]
    fn simulation_contract() {
        let k2 = make_hypercube(1).unwrap();
        let a = simulate_eigentime(&k2, 1, 42).unwrap();
        let b = simulate_eigentime(&k2, 1, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.standard_error, 0.0);
        assert!(a.estimate == 0.0 || a.estimate == 1.0);

        assert!(matches!(simulate_eigentime(&k2, 0, 1), Err(Error::InvalidArgument(_))));
        let g = make_cayley(2, GeneratorSet::from_strs(2, &["11"]).unwrap()).unwrap();
        assert!(matches!(simulate_eigentime(&g, 10, 1), Err(Error::Disconnected(_))));
    }

    #[test]
    fn simulation_is_close() {
        for (n, exact) in [(1u32, 0.5), (3, 7.25)] {
            let g = make_hypercube(n).unwrap();
            let r = simulate_eigentime(&g, 100_000, 7).unwrap();
            assert!((r.estimate - exact).abs() <= 3.0 * r.standard_error, "{r:?}");
        }
    }
}
