//! Spanning-tree counts of Z_2^n Cayley graphs: closed form for the hypercube, the
//! normalized-spectrum formula, and the Kirchhoff cofactor of `D - A`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::linalg::{bareiss_determinant, Matrix};
use crate::spectrum::SpectrumTable;
use crate::{binomial_row, Error, Limits, Result};

/// Largest `n` for [`count_closed_form`].
pub const MAX_CLOSED_FORM_N: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCount {
    pub value: BigUint,
    pub n: u32,
    /// Set when the input graph is disconnected (and `value` is zero).
    pub disconnected: bool,
}

impl TreeCount {
    pub fn digits(&self) -> usize {
        self.value.to_string().len()
    }
}

/// `2^{2^n - n - 1} · ∏_{k=1}^{n} k^{C(n,k)}`.
pub fn count_closed_form(n: u32) -> Result<TreeCount> {
    Error::check_range(n, 1, MAX_CLOSED_FORM_N)?;
    let binom = binomial_row(n);
    let mut value = BigUint::one() << ((1u64 << n) - u64::from(n) - 1);
    for k in 2..=n {
        let e = u32::try_from(&binom[k as usize]).expect("C(n,k) fits u32 for n <= 16");
        value *= BigUint::from(k).pow(e);
    }
    Ok(TreeCount { value, n, disconnected: false })
}

/// `d^{N-1} · ∏_{λ≠0} λ^{mult} / N` for a `d`-regular graph on `N` vertices,
/// evaluated exactly; the result must be an integer.
pub fn count_spectral(s: &SpectrumTable, degree: u64, vertices: u64) -> Result<TreeCount> {
    if vertices == 0 || degree == 0 {
        return Err(Error::InvalidArgument("degree and vertex count must be positive".into()));
    }
    if s.total_multiplicity() != BigUint::from(vertices) {
        return Err(Error::InvalidArgument(format!(
            "spectrum has total multiplicity {}, graph has {vertices} vertices",
            s.total_multiplicity()
        )));
    }
    let n = vertices.trailing_zeros();
    if !s.zero_multiplicity().is_one() {
        return Ok(TreeCount { value: BigUint::zero(), n, disconnected: true });
    }
    // ∏ d_i / Σ d_i = d^N / (N d)
    let mut product = BigRational::from_integer(BigInt::from(degree).pow((vertices - 1) as u32));
    for (value, mult) in s.entries() {
        if value.is_zero() {
            continue;
        }
        let e = u32::try_from(mult).map_err(|_| Error::InvalidArgument("multiplicity too large".into()))?;
        product *= num_traits::pow(value.clone(), e as usize);
    }
    product /= BigRational::from_integer(BigInt::from(vertices));
    if !product.is_integer() {
        return Err(Error::Consistency(format!("spanning-tree formula gave a non-integer {product}")));
    }
    let value = product
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Consistency("spanning-tree formula gave a negative count".into()))?;
    Ok(TreeCount { value, n, disconnected: false })
}

/// Kirchhoff: the determinant of `D - A` with vertex 0's row and column removed.
pub fn matrix_tree_oracle(g: &CayleyGraph) -> Result<TreeCount> {
    matrix_tree_oracle_with(g, &Limits::default())
}

pub fn matrix_tree_oracle_with(g: &CayleyGraph, limits: &Limits) -> Result<TreeCount> {
    Error::check_range(g.dimension(), 1, limits.dense_exact)?;
    let order = g.order();
    let d = g.degree() as i64;
    let mut reduced = Matrix::filled(order - 1, order - 1, BigInt::zero());
    for i in 1..order {
        reduced[(i - 1, i - 1)] = BigInt::from(d);
        for u in g.neighbor_indices(i as u64) {
            if u != 0 {
                reduced[(i - 1, u as usize - 1)] -= 1;
            }
        }
    }
    let det = bareiss_determinant(&reduced)?;
    let value = det
        .to_biguint()
        .ok_or_else(|| Error::Consistency("Laplacian cofactor is negative".into()))?;
    let disconnected = value.is_zero();
    Ok(TreeCount { value, n: g.dimension(), disconnected })
}

/// JSON document for a spanning-tree count.
#[derive(Debug, Clone, Serialize)]
pub struct TreeReport {
    pub n: u32,
    pub spanning_trees: String,
    pub digits: usize,
    pub routes_agree: bool,
}

/// Closed form cross-checked against the spectral formula (always) and the
/// Matrix-Tree oracle (when `n` is within the dense exact cap).
pub fn tree_report(n: u32, limits: &Limits) -> Result<TreeReport> {
    let closed = count_closed_form(n)?;
    let spectrum = crate::spectrum::closed_form_spectrum(n)?;
    let spectral = count_spectral(&spectrum, u64::from(n), 1u64 << n)?;
    let mut agree = spectral.value == closed.value;
    if n <= limits.dense_exact {
        let g = crate::cayley::make_hypercube_with(n, limits)?;
        agree &= matrix_tree_oracle_with(&g, limits)?.value == closed.value;
    }
    Ok(TreeReport { n, spanning_trees: closed.value.to_string(), digits: closed.digits(), routes_agree: agree })
}
