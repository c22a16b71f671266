//! Normalized Laplacian `𝓛 = I - D^{-1/2} A D^{-1/2}` of Z_2^n Cayley graphs and its
//! spectrum: closed form, roots of the exact characteristic polynomial, and a
//! numeric Jacobi eigensolver.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::linalg::Matrix;
use crate::polynomial::RationalPolynomial;
use crate::{binomial_row, format_rational, parse_rational, rational, rational_int, Error, Limits, Result};

/// Largest `n` accepted by [`closed_form_spectrum`].
pub const MAX_CLOSED_FORM_N: u32 = 64;

/// Default off-diagonal Frobenius tolerance for [`numeric_spectrum`].
pub const DEFAULT_JACOBI_TOL: f64 = 1e-12;

/// Default clustering gap for [`cluster_multiplicities`].
pub const DEFAULT_CLUSTER_GAP: f64 = 1e-6;

const SYMMETRY_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianMode {
    Exact,
    Float,
}

/// Dense normalized Laplacian in lexicographic vertex order.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalizedLaplacian {
    Exact(Matrix<BigRational>),
    Float(Matrix<f64>),
}

impl NormalizedLaplacian {
    pub fn order(&self) -> usize {
        match self {
            NormalizedLaplacian::Exact(m) => m.rows(),
            NormalizedLaplacian::Float(m) => m.rows(),
        }
    }

    pub fn as_exact(&self) -> Option<&Matrix<BigRational>> {
        match self {
            NormalizedLaplacian::Exact(m) => Some(m),
            NormalizedLaplacian::Float(_) => None,
        }
    }

    pub fn as_float(&self) -> Option<&Matrix<f64>> {
        match self {
            NormalizedLaplacian::Float(m) => Some(m),
            NormalizedLaplacian::Exact(_) => None,
        }
    }
}

pub fn normalized_laplacian(g: &CayleyGraph, mode: LaplacianMode) -> Result<NormalizedLaplacian> {
    normalized_laplacian_with(g, mode, &Limits::default())
}

/// Cayley graphs are `d`-regular, so `D^{-1/2} A D^{-1/2} = A/d` and every entry is
/// rational: 1 on the diagonal, `-1/d` on edges.
pub fn normalized_laplacian_with(g: &CayleyGraph, mode: LaplacianMode, limits: &Limits) -> Result<NormalizedLaplacian> {
    match mode {
        LaplacianMode::Exact => {
            Error::check_range(g.dimension(), 1, limits.dense_exact)?;
            let off = rational(-1, g.degree() as i64);
            Ok(NormalizedLaplacian::Exact(laplacian_matrix(g, BigRational::one(), off, BigRational::zero())))
        }
        LaplacianMode::Float => {
            Error::check_range(g.dimension(), 1, limits.dense_float)?;
            let off = -1.0 / g.degree() as f64;
            Ok(NormalizedLaplacian::Float(laplacian_matrix(g, 1.0, off, 0.0)))
        }
    }
}

fn laplacian_matrix<T: Clone>(g: &CayleyGraph, diag: T, off: T, zero: T) -> Matrix<T> {
    let order = g.order();
    let mut m = Matrix::filled(order, order, zero);
    for u in 0..order {
        m[(u, u)] = diag.clone();
        for v in g.neighbor_indices(u as u64) {
            m[(u, v as usize)] = off.clone();
        }
    }
    m
}

/// Eigenvalues with multiplicities, strictly increasing by eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    entries: Vec<(BigRational, BigUint)>,
}

impl SpectrumTable {
    /// Sorts, merges equal eigenvalues and drops zero multiplicities.
    pub fn new(entries: impl IntoIterator<Item = (BigRational, BigUint)>) -> Self {
        let mut entries: Vec<(BigRational, BigUint)> =
            entries.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigRational, BigUint)> = Vec::with_capacity(entries.len());
        for (value, mult) in entries {
            match merged.last_mut() {
                Some((last, m)) if *last == value => *m += mult,
                _ => merged.push((value, mult)),
            }
        }
        SpectrumTable { entries: merged }
    }

    pub fn entries(&self) -> &[(BigRational, BigUint)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, value: &BigRational) -> BigUint {
        self.entries
            .binary_search_by(|(v, _)| v.cmp(value))
            .map(|i| self.entries[i].1.clone())
            .unwrap_or_default()
    }

    pub fn zero_multiplicity(&self) -> BigUint {
        self.multiplicity(&BigRational::zero())
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// `Σ λ · mult(λ)`.
    pub fn trace(&self) -> BigRational {
        self.entries
            .iter()
            .map(|(v, m)| v * BigRational::from_integer(BigInt::from(m.clone())))
            .sum()
    }

    pub fn all_in_unit_range(&self) -> bool {
        let two = rational_int(2);
        self.entries.iter().all(|(v, _)| !v.is_negative() && *v <= two)
    }

    /// `λ` present iff `2 - λ` present, with equal multiplicity.
    pub fn is_symmetric_about_one(&self) -> bool {
        let two = rational_int(2);
        let k = self.entries.len();
        (0..k).all(|i| {
            let (a, ma) = &self.entries[i];
            let (b, mb) = &self.entries[k - 1 - i];
            &two - a == *b && ma == mb
        })
    }

    /// CSV with header `eigenvalue_num,eigenvalue_den,multiplicity`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eigenvalue_num,eigenvalue_den,multiplicity\n");
        for (v, m) in &self.entries {
            let _ = writeln!(out, "{},{},{}", v.numer(), v.denom(), m);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("eigenvalue_num,eigenvalue_den,multiplicity") => {}
            other => return Err(Error::Parse(format!("bad spectrum CSV header {other:?}"))),
        }
        let mut entries = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let fields: Vec<&str> = line.split(',').collect();
            let [num, den, mult] = fields[..] else {
                return Err(Error::Parse(format!("bad spectrum CSV row {line:?}")));
            };
            let value = parse_rational(&format!("{num}/{den}"))?;
            let mult: BigUint = mult.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity {mult:?}")))?;
            entries.push((value, mult));
        }
        Ok(SpectrumTable::new(entries))
    }

    pub fn to_json_entries(&self) -> Vec<SpectrumEntryJson> {
        self.entries
            .iter()
            .map(|(v, m)| SpectrumEntryJson { eigenvalue: format_rational(v), multiplicity: m.to_string() })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_entries()).expect("plain strings always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<SpectrumEntryJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = rows
            .into_iter()
            .map(|r| {
                let mult = r
                    .multiplicity
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity {:?}", r.multiplicity)))?;
                Ok((parse_rational(&r.eigenvalue)?, mult))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumTable::new(entries))
    }
}

/// JSON row of a spectrum export; both fields are exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntryJson {
    pub eigenvalue: String,
    pub multiplicity: String,
}

/// `{2k/n ↦ C(n,k) : 0 ≤ k ≤ n}`.
pub fn closed_form_spectrum(n: u32) -> Result<SpectrumTable> {
    Error::check_range(n, 1, MAX_CLOSED_FORM_N)?;
    let binom = binomial_row(n);
    Ok(SpectrumTable::new((0..=n).map(|k| {
        let mult = binom[k as usize].to_biguint().expect("binomials are positive");
        (rational(2 * i64::from(k), i64::from(n)), mult)
    })))
}

/// Reads the spectrum off an exact characteristic polynomial whose roots are
/// among `2k/n`, by repeated synthetic division.
///
/// Fails with [`Error::Consistency`] if anything but a constant is left over, i.e. if
/// the polynomial has a root outside the candidate set.
pub fn spectrum_from_polynomial(p: &RationalPolynomial, n: u32) -> Result<SpectrumTable> {
    let lead = p
        .leading_coefficient()
        .ok_or_else(|| Error::Consistency("zero polynomial has no spectrum".into()))?;
    let mut rest = p.scale(&lead.recip());
    let mut entries = Vec::new();
    for k in 0..=n {
        let root = rational(2 * i64::from(k), i64::from(n));
        let (mult, cofactor) = rest.root_multiplicity(&root);
        rest = cofactor;
        entries.push((root, BigUint::from(mult)));
    }
    if rest != RationalPolynomial::one() {
        return Err(Error::Consistency(format!(
            "characteristic polynomial has roots outside {{2k/{n}}}: cofactor of degree {:?}",
            rest.degree()
        )));
    }
    Ok(SpectrumTable::new(entries))
}

/// All eigenvalues of a symmetric matrix, ascending, by Jacobi rotations until the
/// off-diagonal Frobenius norm drops below `tol`.
///
/// Rotations are applied in round-robin order: each round pairs every index exactly
/// once, so the `N/2` rotations of a round act on disjoint index pairs and are
/// applied together (columns, then rows). Every pair is visited once per sweep.
pub fn numeric_spectrum(l: &Matrix<f64>, tol: f64) -> Result<Vec<f64>> {
    if !l.is_square() {
        return Err(Error::Shape(format!("eigenvalues of a {}x{} matrix", l.rows(), l.cols())));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Shape(format!("tolerance must be positive, got {tol}")));
    }
    let n = l.rows();
    for i in 0..n {
        for j in i + 1..n {
            let diff = (l[(i, j)] - l[(j, i)]).abs();
            if diff.is_nan() || diff > SYMMETRY_TOL {
                return Err(Error::NotSymmetric { row: i, col: j, diff });
            }
        }
    }
    let mut a = l.clone();
    if n <= 1 {
        return Ok(a.as_slice().to_vec());
    }

    // Pad to even order with a decoupled zero row/column so the round-robin schedule
    // is uniform; the padding index is never rotated.
    let padded = n + n % 2;
    let schedule = round_robin(padded);
    // Entries below this cannot keep the off-diagonal norm above `tol` on their own.
    let skip_below = tol / n as f64;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for round in &schedule {
            let rotations: Vec<Rotation> = round
                .iter()
                .filter(|&&(_, q)| q < n)
                .filter(|&&(p, q)| a[(p, q)].abs() >= skip_below)
                .filter_map(|&(p, q)| Rotation::annihilating(&a, p, q))
                .collect();
            if !rotations.is_empty() {
                apply_round(&mut a, &rotations);
            }
        }
        sweeps += 1;
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[derive(Debug, Clone, Copy)]
struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
}

impl Rotation {
    /// Plane rotation zeroing `a[p][q]`; `None` when it is already zero.
    fn annihilating(a: &Matrix<f64>, p: usize, q: usize) -> Option<Self> {
        let apq = a[(p, q)];
        if apq == 0.0 {
            return None;
        }
        let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        Some(Rotation { p, q, c, s: t * c })
    }
}

/// `A ← Jᵀ A J` for a block of rotations on disjoint index pairs.
fn apply_round(a: &mut Matrix<f64>, rotations: &[Rotation]) {
    let n = a.rows();
    // Columns: every row mixes its own (p, q) entries.
    a.as_mut_slice().par_chunks_mut(n).for_each(|row| {
        for r in rotations {
            let (xp, xq) = (row[r.p], row[r.q]);
            row[r.p] = r.c * xp - r.s * xq;
            row[r.q] = r.s * xp + r.c * xq;
        }
    });
    // Rows: each rotation mixes rows p and q.
    let mut slots: Vec<Option<&mut [f64]>> = a.as_mut_slice().chunks_mut(n).map(Some).collect();
    let mut pairs: Vec<(Rotation, &mut [f64], &mut [f64])> = rotations
        .iter()
        .map(|r| (*r, slots[r.p].take().unwrap(), slots[r.q].take().unwrap()))
        .collect();
    pairs.par_iter_mut().for_each(|(r, rp, rq)| {
        for (xp, xq) in rp.iter_mut().zip(rq.iter_mut()) {
            let (vp, vq) = (*xp, *xq);
            *xp = r.c * vp - r.s * vq;
            *xq = r.s * vp + r.c * vq;
        }
        rp[r.q] = 0.0;
        rq[r.p] = 0.0;
    });
}

/// Circle-method schedule for an even number of indices: `size - 1` rounds of
/// `size / 2` disjoint pairs covering every pair exactly once.
fn round_robin(size: usize) -> Vec<Vec<(usize, usize)>> {
    debug_assert!(size.is_multiple_of(2));
    let mut ring: Vec<usize> = (1..size).collect();
    let mut rounds = Vec::with_capacity(size - 1);
    for _ in 0..size - 1 {
        let mut round = Vec::with_capacity(size / 2);
        round.push((0, ring[0]));
        for i in 1..size / 2 {
            let (x, y) = (ring[i], ring[size - 1 - i]);
            round.push((x.min(y), x.max(y)));
        }
        rounds.push(round);
        ring.rotate_right(1);
    }
    rounds
}

fn off_diagonal_norm(a: &Matrix<f64>) -> f64 {
    let n = a.rows();
    let sum: f64 = (0..n)
        .into_par_iter()
        .map(|i| a.row(i).iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x * x).sum::<f64>())
        .sum();
    sum.sqrt()
}

/// Merges consecutive sorted values closer than `gap`; each cluster reports its mean
/// and size.
pub fn cluster_multiplicities(values: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut last: Option<f64> = None;
    for &v in values {
        match (last, clusters.last_mut()) {
            (Some(prev), Some((sum, count))) if v - prev <= gap => {
                *sum += v;
                *count += 1;
            }
            _ => clusters.push((v, 1)),
        }
        last = Some(v);
    }
    clusters.into_iter().map(|(sum, count)| (sum / count as f64, count)).collect()
}

/// Compares clustered numeric eigenvalues against an exact table: same number of
/// distinct values, each within `tol`, identical multiplicities. Returns the first
/// mismatch as text.
pub fn compare_clusters(clusters: &[(f64, usize)], table: &SpectrumTable, tol: f64) -> std::result::Result<(), String> {
    if clusters.len() != table.len() {
        return Err(format!("{} clusters vs {} exact eigenvalues", clusters.len(), table.len()));
    }
    for ((approx, count), (exact, mult)) in clusters.iter().zip(table.entries()) {
        let exact_f = exact.to_f64().unwrap_or(f64::NAN);
        if (approx - exact_f).abs() > tol {
            return Err(format!("cluster {approx} is not within {tol:e} of {}", format_rational(exact)));
        }
        if BigUint::from(*count) != *mult {
            return Err(format!("eigenvalue {}: multiplicity {count}, expected {mult}", format_rational(exact)));
        }
    }
    Ok(())
}

/// Numeric spectrum of the hypercube Γ_n, clustered.
pub fn numeric_hypercube_clusters(n: u32, tol: f64, gap: f64, limits: &Limits) -> Result<Vec<(f64, usize)>> {
    let g = crate::cayley::make_hypercube_with(n, limits)?;
    let l = normalized_laplacian_with(&g, LaplacianMode::Float, limits)?;
    let values = numeric_spectrum(l.as_float().expect("float mode"), tol)?;
    Ok(cluster_multiplicities(&values, gap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{make_cayley, make_hypercube, GeneratorSet};

    fn table_strings(t: &SpectrumTable) -> Vec<(String, String)> {
        t.entries().iter().map(|(v, m)| (format_rational(v), m.to_string())).collect()
    }

    fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
        items.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn laplacian_entries() {
        let k2 = normalized_laplacian(&make_hypercube(1).unwrap(), LaplacianMode::Exact).unwrap();
        let m = k2.as_exact().unwrap();
        assert_eq!(m[(0, 0)], rational(1, 1));
        assert_eq!(m[(0, 1)], rational(-1, 1));

        let c4 = normalized_laplacian(&make_hypercube(2).unwrap(), LaplacianMode::Float).unwrap();
        let m = c4.as_float().unwrap();
        assert_eq!(m.row(0), &[1.0, -0.5, -0.5, 0.0]);

        let q3 = normalized_laplacian(&make_hypercube(3).unwrap(), LaplacianMode::Exact).unwrap();
        let m = q3.as_exact().unwrap();
        let third = rational(-1, 3);
        let pairs = (0..8).flat_map(|i| (i + 1..8).map(move |j| (i, j))).filter(|&(i, j)| m[(i, j)] == third);
        assert_eq!(pairs.count(), 12);
        assert!((0..8).all(|i| m[(i, i)].is_one()));
        assert!((0..8).all(|i| (0..8).all(|j| m[(i, j)] == m[(j, i)])));
    }

    #[test]
    fn laplacian_size_caps() {
        let g7 = make_hypercube(7).unwrap();
        assert!(normalized_laplacian(&g7, LaplacianMode::Exact).is_err());
        assert!(normalized_laplacian(&g7, LaplacianMode::Float).is_ok());
        let g13 = make_hypercube(13).unwrap();
        assert!(normalized_laplacian(&g13, LaplacianMode::Float).is_err());
    }

    #[test]
    fn closed_form_tables() {
        assert_eq!(table_strings(&closed_form_spectrum(1).unwrap()), pairs(&[("0/1", "1"), ("2/1", "1")]));
        assert_eq!(
            table_strings(&closed_form_spectrum(2).unwrap()),
            pairs(&[("0/1", "1"), ("1/1", "2"), ("2/1", "1")])
        );
        assert_eq!(
            table_strings(&closed_form_spectrum(3).unwrap()),
            pairs(&[("0/1", "1"), ("2/3", "3"), ("4/3", "3"), ("2/1", "1")])
        );
        assert!(matches!(closed_form_spectrum(0), Err(Error::DimensionRange { .. })));
        assert!(closed_form_spectrum(65).is_err());
    }

    #[test]
    fn closed_form_invariants_to_64() {
        for n in 1..=MAX_CLOSED_FORM_N {
            let t = closed_form_spectrum(n).unwrap();
            assert_eq!(t.total_multiplicity(), BigUint::one() << n);
            assert_eq!(t.trace(), BigRational::from_integer(BigInt::one() << n));
            assert!(t.all_in_unit_range());
            assert!(t.is_symmetric_about_one());
            assert!(t.zero_multiplicity().is_one());
        }
    }

    #[test]
    fn jacobi_small() {
        let k2 = normalized_laplacian(&make_hypercube(1).unwrap(), LaplacianMode::Float).unwrap();
        let v = numeric_spectrum(k2.as_float().unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        assert!((v[0] - 0.0).abs() < 1e-12 && (v[1] - 2.0).abs() < 1e-12);

        let c4 = normalized_laplacian(&make_hypercube(2).unwrap(), LaplacianMode::Float).unwrap();
        let v = numeric_spectrum(c4.as_float().unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        for (got, want) in v.iter().zip([0.0, 1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }

        let q3 = normalized_laplacian(&make_hypercube(3).unwrap(), LaplacianMode::Float).unwrap();
        let v = numeric_spectrum(q3.as_float().unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        let want = [0.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 2.0];
        for (got, want) in v.iter().zip(want) {
            assert!((got - want).abs() < 1e-9);
        }
    }

    #[test]
    fn jacobi_odd_order_and_general_symmetric() {
        // Path graph P3 Laplacian-like matrix with known eigenvalues 1, 1±√2.
        let m = Matrix::from_rows(vec![vec![1.0, 1.0, 0.0], vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let v = numeric_spectrum(&m, 1e-13).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in v.iter().zip([1.0 - s, 1.0, 1.0 + s]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn jacobi_input_errors() {
        let asym = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.4, 1.0]]).unwrap();
        assert!(matches!(numeric_spectrum(&asym, 1e-12), Err(Error::NotSymmetric { .. })));
        let rect = Matrix::filled(2, 3, 0.0);
        assert!(matches!(numeric_spectrum(&rect, 1e-12), Err(Error::Shape(_))));
        let sq = Matrix::filled(2, 2, 0.0);
        assert!(numeric_spectrum(&sq, 0.0).is_err());
    }

    #[test]
    fn round_robin_covers_every_pair_once() {
        for size in [2usize, 4, 8, 10] {
            let mut seen = std::collections::HashSet::new();
            for round in round_robin(size) {
                let mut used = vec![false; size];
                for (p, q) in round {
                    assert!(p < q && !used[p] && !used[q]);
                    used[p] = true;
                    used[q] = true;
                    assert!(seen.insert((p, q)));
                }
            }
            assert_eq!(seen.len(), size * (size - 1) / 2);
        }
    }

    #[test]
    fn clustering() {
        let c = cluster_multiplicities(&[0.0, 0.9999999999, 1.0000000001, 2.0], 1e-6);
        let counts: Vec<usize> = c.iter().map(|x| x.1).collect();
        assert_eq!(counts, [1, 2, 1]);
        assert!((c[1].0 - 1.0).abs() < 1e-12);
        assert_eq!(cluster_multiplicities(&[0.5], 1e-6), [(0.5, 1)]);
        assert!(cluster_multiplicities(&[], 1e-6).is_empty());

        let c4 = numeric_hypercube_clusters(4, DEFAULT_JACOBI_TOL, DEFAULT_CLUSTER_GAP, &Limits::default()).unwrap();
        let counts: Vec<usize> = c4.iter().map(|x| x.1).collect();
        assert_eq!(counts, [1, 4, 6, 4, 1]);
    }

    #[test]
    fn polynomial_route() {
        for n in 1..=6 {
            let g = crate::polynomial::closed_form_g(n).unwrap();
            assert_eq!(spectrum_from_polynomial(&g, n).unwrap(), closed_form_spectrum(n).unwrap());
        }
        // λ³ has the root 0 only; λ²(λ-1/2) has an outside root.
        let bad = RationalPolynomial::new(vec![BigRational::zero(), BigRational::zero(), rational(-1, 2), BigRational::one()]);
        assert!(matches!(spectrum_from_polynomial(&bad, 2), Err(Error::Consistency(_))));
    }

    #[test]
    fn disconnected_zero_multiplicity() {
        let gens = GeneratorSet::from_strs(3, &["011", "101", "110"]).unwrap();
        let g = make_cayley(3, gens).unwrap();
        let l = normalized_laplacian(&g, LaplacianMode::Float).unwrap();
        let v = numeric_spectrum(l.as_float().unwrap(), DEFAULT_JACOBI_TOL).unwrap();
        let clusters = cluster_multiplicities(&v, DEFAULT_CLUSTER_GAP);
        assert!(clusters[0].0.abs() < 1e-9);
        assert_eq!(clusters[0].1, 2);
    }

    #[test]
    fn csv_and_json_exports() {
        let t = closed_form_spectrum(3).unwrap();
        assert_eq!(t.to_csv(), "eigenvalue_num,eigenvalue_den,multiplicity\n0,1,1\n2,3,3\n4,3,3\n2,1,1\n");
        assert_eq!(SpectrumTable::from_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(
            t.to_json(),
            r#"[{"eigenvalue":"0/1","multiplicity":"1"},{"eigenvalue":"2/3","multiplicity":"3"},{"eigenvalue":"4/3","multiplicity":"3"},{"eigenvalue":"2/1","multiplicity":"1"}]"#
        );
        assert_eq!(SpectrumTable::from_json(&t.to_json()).unwrap(), t);
        assert!(SpectrumTable::from_csv("a,b,c\n").is_err());
    }
}
