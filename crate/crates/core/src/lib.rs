//! # cubespec
//!
//! Normalized Laplacian spectra of hypercube Cayley graphs, computed three ways
//! (closed form, exact characteristic-polynomial recursion, numeric Jacobi
//! eigendecomposition), and the two quantities they determine exactly: the
//! eigentime identity (Kemeny constant) of the simple random walk and the
//! number of spanning trees.
//!
//! Every closed form in the crate ships with an independent exact oracle:
//!
//! | Quantity | Closed form | Oracle |
//! |----------|-------------|--------|
//! | spectrum | [`spectrum::closed_form_spectrum`] | [`spectrum::numeric_spectrum`], [`polynomial::charpoly_oracle`] |
//! | characteristic polynomial | [`polynomial::closed_form_f`] | [`polynomial::recursion_f`] |
//! | eigentime | [`walks::eigentime_closed_form`] | [`walks::eigentime_from_mfpt`], [`walks::simulate_eigentime`] |
//! | spanning trees | [`trees::count_closed_form`] | [`trees::matrix_tree_oracle`] |
//!
//! ```
//! use cubespec::{cayley, spectrum, walks, trees};
//!
//! let cube = cayley::make_hypercube(3).unwrap();
//! assert_eq!(cube.edge_count(), 12);
//!
//! let table = spectrum::closed_form_spectrum(3).unwrap();
//! let h = walks::eigentime_spectral(&table).unwrap();
//! assert_eq!(cubespec::format_rational(&h), "29/4");
//!
//! assert_eq!(trees::matrix_tree_oracle(&cube).unwrap().value.to_string(), "384");
//! ```

pub mod cayley;
pub mod cli;
pub mod linalg;
pub mod polynomial;
pub mod spectrum;
pub mod trees;
pub mod verify;
pub mod walks;

mod error;
mod limits;

pub use error::{Error, Result};
pub use limits::Limits;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Formats an exact rational as `"p/q"` in lowest terms with `q > 0`.
///
/// Integers keep the explicit denominator (`"2/1"`, `"0/1"`).
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `"p/q"` or a bare integer `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn rational_int<T: Into<BigInt>>(value: T) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Binomial coefficients C(n, 0..=n) as big integers.
pub fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut current = BigInt::one();
    row.push(current.clone());
    for k in 1..=n {
        current = current * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(current.clone());
    }
    row
}
