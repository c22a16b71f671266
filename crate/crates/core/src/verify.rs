//! Cross-route verification suite: every identity that has two independent routes
//! is recomputed both ways up to its size cap.

use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{make_hypercube_with, verify_block_structure_with};
use crate::linalg::{rational_determinant, Matrix};
use crate::polynomial::{charpoly_oracle_with, closed_form_f_with, closed_form_g_with, recursion_f_with};
use crate::spectrum::{
    closed_form_spectrum, compare_clusters, normalized_laplacian_with, numeric_hypercube_clusters,
    spectrum_from_polynomial, LaplacianMode, DEFAULT_CLUSTER_GAP, DEFAULT_JACOBI_TOL,
};
use crate::trees::{count_closed_form, count_spectral, matrix_tree_oracle_with};
use crate::walks::{
    asymptotic_deviation, eigentime_closed_form, eigentime_from_mfpt_with, eigentime_spectral, slt_decomposition,
    StationaryDistribution,
};
use crate::{format_rational, rational, Error, Limits, Result};

/// Per-check upper limits on `n`, before [`Limits`] are applied.
pub const BLOCK_STRUCTURE_CAP: u32 = 10;
pub const RECURSION_CAP: u32 = 10;
pub const CHARPOLY_ORACLE_CAP: u32 = 6;
pub const BLOCK_DETERMINANT_CAP: u32 = 8;
pub const NUMERIC_SPECTRUM_CAP: u32 = 10;
pub const FORMULA_CAP: u32 = 64;
pub const MFPT_CAP: u32 = 8;
pub const SLT_CAP: u32 = 60;
pub const TREE_SPECTRAL_CAP: u32 = 12;
pub const TREE_ORACLE_CAP: u32 = 6;

/// Tolerance on numeric cluster centres against `2k/n`.
pub const CLUSTER_VALUE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Inclusive range of `n` (or matrix order) actually covered; `None` if empty.
    pub covered: Option<(u32, u32)>,
    pub ok: bool,
    /// First counterexample or error, when `ok` is false.
    pub detail: Option<String>,
    /// Wall time; not serialized so documents stay byte-reproducible.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub n_max: u32,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify n_max={}", self.n_max)?;
        for c in &self.checks {
            let range = match c.covered {
                Some((lo, hi)) => format!("{lo}..={hi}"),
                None => "-".into(),
            };
            write!(f, "{:<44} {:>8}  {}", c.name, range, if c.ok { "ok" } else { "FAIL" })?;
            if let Some(d) = &c.detail {
                write!(f, "  ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs one check over `lo..=hi`, stopping at the first failing `n`.
fn run_range(
    name: &str,
    lo: u32,
    hi: u32,
    mut check: impl FnMut(u32) -> Result<std::result::Result<(), String>>,
) -> Option<CheckResult> {
    if hi < lo {
        return None;
    }
    let start = Instant::now();
    let mut detail = None;
    for n in lo..=hi {
        match check(n) {
            Ok(Ok(())) => {}
            Ok(Err(msg)) => {
                detail = Some(format!("n={n}: {msg}"));
                break;
            }
            Err(e) => {
                detail = Some(format!("n={n}: {e}"));
                break;
            }
        }
    }
    Some(CheckResult {
        name: name.to_string(),
        covered: Some((lo, hi)),
        ok: detail.is_none(),
        detail,
        millis: start.elapsed().as_millis(),
    })
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Deterministic symmetric rational matrix with small entries.
pub fn sample_symmetric_matrix(order: usize, seed: u64) -> Matrix<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::filled(order, order, BigRational::default());
    for i in 0..order {
        for j in i..order {
            let v = rational(rng.random_range(-6..=6), rng.random_range(1..=4));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// `det([[A, I], [I, A]]) == det(A + I) · det(A - I)`.
pub fn block_determinant_identity_holds(a: &Matrix<BigRational>) -> Result<bool> {
    let k = a.rows();
    let one = BigRational::one();
    let big = Matrix::from_fn(2 * k, 2 * k, |i, j| {
        let (bi, bj) = (i / k, j / k);
        let (ii, jj) = (i % k, j % k);
        if bi == bj {
            a[(ii, jj)].clone()
        } else if ii == jj {
            one.clone()
        } else {
            BigRational::default()
        }
    });
    let shifted = |s: &BigRational| Matrix::from_fn(k, k, |i, j| if i == j { &a[(i, j)] + s } else { a[(i, j)].clone() });
    let lhs = rational_determinant(&big)?;
    let rhs = rational_determinant(&shifted(&one))? * rational_determinant(&shifted(&-one.clone()))?;
    Ok(lhs == rhs)
}

/// Runs every cross-route check up to `n_max` (each clipped to its own cap).
pub fn verify_suite(n_max: u32) -> VerifyReport {
    verify_suite_with(n_max, &Limits::default())
}

pub fn verify_suite_with(n_max: u32, limits: &Limits) -> VerifyReport {
    let cap = |c: u32| n_max.min(c);
    let mut checks = Vec::new();

    checks.extend(run_range(
        "block structure A_n = [[A_{n-1},I],[I,A_{n-1}]]",
        2,
        cap(BLOCK_STRUCTURE_CAP.min(limits.dense_float)),
        |n| Ok(expect(verify_block_structure_with(n, limits)?, || "block mismatch".into())),
    ));

    checks.extend(run_range("block determinant identity", 1, cap(BLOCK_DETERMINANT_CAP), |k| {
        let a = sample_symmetric_matrix(k as usize, 0xb10c + u64::from(k));
        Ok(expect(block_determinant_identity_holds(&a)?, || "det mismatch".into()))
    }));

    checks.extend(run_range(
        "recursion f_n == closed form f_n",
        1,
        cap(RECURSION_CAP.min(limits.polynomial)),
        |n| {
            let rec = recursion_f_with(n, limits)?;
            let closed = closed_form_f_with(n, limits)?;
            let lead = crate::polynomial::leading_coefficient_f(n);
            Ok(expect(rec == closed, || "coefficient lists differ".into()).and_then(|()| {
                expect(rec.degree() == Some(1 << n) && rec.leading_coefficient() == Some(&lead), || {
                    "degree or leading coefficient wrong".into()
                })
            }))
        },
    ));

    checks.extend(run_range(
        "charpoly oracle det(λI-𝓛_n) == g_n",
        1,
        cap(CHARPOLY_ORACLE_CAP.min(limits.dense_exact)),
        |n| {
            let g = make_hypercube_with(n, limits)?;
            let l = normalized_laplacian_with(&g, LaplacianMode::Exact, limits)?;
            let oracle = charpoly_oracle_with(l.as_exact().expect("exact mode"), limits)?;
            Ok(expect(oracle == closed_form_g_with(n, limits)?, || "oracle differs from g_n".into()))
        },
    ));

    checks.extend(run_range("spectrum invariants (range, count, trace, symmetry)", 1, cap(FORMULA_CAP), |n| {
        let t = closed_form_spectrum(n)?;
        Ok(expect(t.all_in_unit_range(), || "eigenvalue outside [0,2]".into())
            .and_then(|()| expect(t.total_multiplicity() == BigUint::one() << n, || "multiplicities".into()))
            .and_then(|()| expect(t.trace() == BigRational::from_integer(BigInt::one() << n), || "trace".into()))
            .and_then(|()| expect(t.is_symmetric_about_one(), || "not symmetric about 1".into())))
    }));

    checks.extend(run_range(
        "spectrum: closed form == polynomial roots == Jacobi",
        1,
        cap(NUMERIC_SPECTRUM_CAP.min(limits.dense_float).min(limits.polynomial)),
        |n| {
            let closed = closed_form_spectrum(n)?;
            let from_poly = spectrum_from_polynomial(&recursion_f_with(n, limits)?, n)?;
            if from_poly != closed {
                return Ok(Err("roots of f_n differ from closed form".into()));
            }
            let clusters = numeric_hypercube_clusters(n, DEFAULT_JACOBI_TOL, DEFAULT_CLUSTER_GAP, limits)?;
            Ok(compare_clusters(&clusters, &closed, CLUSTER_VALUE_TOL))
        },
    ));

    checks.extend(run_range("eigentime closed form == spectral sum", 1, cap(FORMULA_CAP), |n| {
        let closed = eigentime_closed_form(n)?;
        let spectral = eigentime_spectral(&closed_form_spectrum(n)?)?;
        Ok(expect(closed == spectral, || format!("{} vs {}", format_rational(&closed), format_rational(&spectral))))
    }));

    checks.extend(run_range(
        "eigentime closed form == MFPT (all starts)",
        1,
        cap(MFPT_CAP.min(limits.mfpt)),
        |n| {
            let g = make_hypercube_with(n, limits)?;
            let closed = eigentime_closed_form(n)?;
            let mfpt = eigentime_from_mfpt_with(&g, limits)?;
            Ok(expect(closed == mfpt, || format!("{} vs {}", format_rational(&closed), format_rational(&mfpt))))
        },
    ));

    checks.extend(run_range("stationarity πP = π", 1, cap(MFPT_CAP.min(limits.mfpt)), |n| {
        let g = make_hypercube_with(n, limits)?;
        let pi = StationaryDistribution::of(&g);
        Ok(expect(pi.total().is_one() && pi.is_stationary_for(&g), || "π not stationary".into()))
    }));

    checks.extend(run_range("S/L/T decomposition", 1, cap(SLT_CAP), |n| {
        slt_decomposition(n)?;
        Ok(Ok(()))
    }));

    checks.extend(run_range("|H/2^n - 1| <= 6/n", 5, cap(SLT_CAP), |n| {
        let dev = asymptotic_deviation(n)?;
        Ok(expect(dev <= rational(6, i64::from(n)), || {
            format!("deviation {:.6}", dev.to_f64().unwrap_or(f64::NAN))
        }))
    }));

    let points: Vec<u32> = [8u32, 16, 32, 64].into_iter().filter(|&p| p <= n_max).collect();
    if points.len() >= 2 {
        let start = Instant::now();
        let devs: Result<Vec<BigRational>> = points.iter().map(|&p| asymptotic_deviation(p)).collect();
        let detail = match devs {
            Ok(d) => d
                .windows(2)
                .position(|w| w[1] >= w[0])
                .map(|i| format!("deviation does not decrease from n={} to n={}", points[i], points[i + 1])),
            Err(e) => Some(e.to_string()),
        };
        checks.push(CheckResult {
            name: "|H/2^n - 1| strictly decreasing at 8,16,32,64".into(),
            covered: Some((points[0], *points.last().unwrap())),
            ok: detail.is_none(),
            detail,
            millis: start.elapsed().as_millis(),
        });
    }

    checks.extend(run_range("spanning trees closed form == spectral", 1, cap(TREE_SPECTRAL_CAP), |n| {
        let closed = count_closed_form(n)?;
        let spectral = count_spectral(&closed_form_spectrum(n)?, u64::from(n), 1 << n)?;
        Ok(expect(closed.value == spectral.value, || "counts differ".into()))
    }));

    checks.extend(run_range(
        "spanning trees closed form == Matrix-Tree",
        1,
        cap(TREE_ORACLE_CAP.min(limits.dense_exact)),
        |n| {
            let closed = count_closed_form(n)?;
            let oracle = matrix_tree_oracle_with(&make_hypercube_with(n, limits)?, limits)?;
            Ok(expect(closed.value == oracle.value, || format!("{} vs {}", closed.value, oracle.value)))
        },
    ));

    VerifyReport { n_max, checks }
}

/// Convenience for callers that want a `Result`.
pub fn verify_or_error(n_max: u32, limits: &Limits) -> Result<VerifyReport> {
    let report = verify_suite_with(n_max, limits);
    let failure = report
        .failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()));
    match failure {
        Some(msg) => Err(Error::Consistency(msg)),
        None => Ok(report),
    }
}
