//! Exact univariate polynomials over the rationals, and the characteristic
//! polynomials of the hypercube normalized Laplacian.
//!
//! `f_n(λ) = det((λ-1)D_n + A_n)` and `g_n(λ) = det(λI - 𝓛_n) = n^{-2^n} f_n(λ)`.
//! [`recursion_f`] builds `f_n` from `f_1 = λ(λ-2)` through
//! `f_n(λ) = f_{n-1}(nλ/(n-1)) · f_{n-1}((nλ-2)/(n-1))`, and [`closed_form_f`]
//! expands `n^{2^n} ∏_k (λ - 2k/n)^{C(n,k)}`. Both are exact, so equality is a
//! flat coefficient comparison.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{rational_matmul, Matrix};
use crate::{binomial_row, format_rational, parse_rational, rational, rational_int, Error, Limits, Result};

/// Dense polynomial with exact rational coefficients; `coefficients()[i]` multiplies `λ^i`.
///
/// Always canonical: no trailing zero coefficients, and the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `λ`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `a·λ + b`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![b, a])
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational_int(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalPolynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Splits into integer coefficients over one positive common denominator.
    fn to_integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (ints, den)
    }

    fn from_integer_parts(ints: Vec<BigInt>, den: &BigInt) -> Self {
        let coeffs = if den.is_one() {
            ints.into_iter().map(BigRational::from_integer).collect()
        } else {
            ints.into_par_iter().map(|c| BigRational::new(c, den.clone())).collect()
        };
        Self::new(coeffs)
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, da) = self.to_integer_parts();
        let (b, db) = other.to_integer_parts();
        let product = integer_convolution(&a, &b);
        Self::from_integer_parts(product, &(da * db))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `p(aλ + b)`, by Horner's rule in the polynomial ring.
    ///
    /// Runs over integers: with `a = p/q`, `b = r/q` and the coefficients cleared to
    /// `c_k / D`, the accumulator holds `Σ c_k (pλ + r)^k q^{d-k}`, divided out by
    /// `q^d D` at the end.
    pub fn affine_substitute(&self, a: &BigRational, b: &BigRational) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        let (c, den) = self.to_integer_parts();
        let q = a.denom().lcm(b.denom());
        let p = a.numer() * (&q / a.denom());
        let r = b.numer() * (&q / b.denom());

        let mut acc: Vec<BigInt> = vec![c[d].clone()];
        let mut q_power = BigInt::one();
        for k in (0..d).rev() {
            q_power *= &q;
            // acc ← acc · (pλ + r) + c_k q^{d-k}
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, v) in acc.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                next[i + 1] += v * &p;
                next[i] += v * &r;
            }
            next[0] += &c[k] * &q_power;
            acc = next;
        }
        Self::from_integer_parts(acc, &(q_power * den))
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Synthetic division by `(λ - root)`: returns `(quotient, remainder)`.
    pub fn divide_by_root(&self, root: &BigRational) -> (Self, BigRational) {
        let Some(d) = self.degree() else {
            return (Self::zero(), BigRational::zero());
        };
        let mut quotient = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (0..=d).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Self::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Multiplicity of `root` as a root, and the cofactor with that root divided out.
    pub fn root_multiplicity(&self, root: &BigRational) -> (usize, Self) {
        let mut current = self.clone();
        let mut mult = 0;
        while !current.is_zero() {
            let (q, rem) = current.divide_by_root(root);
            if !rem.is_zero() {
                break;
            }
            current = q;
            mult += 1;
        }
        (mult, current)
    }

    /// Coefficients as `"p/q"` strings, index = power.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(strings: &[S]) -> Result<Self> {
        Ok(Self::new(strings.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string arrays always serialize")
    }
}

/// Schoolbook convolution, parallel over output coefficients.
fn integer_convolution(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len() + b.len() - 1;
    let coeff = |k: usize| {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut s = BigInt::zero();
        for i in lo..=hi {
            let (x, y) = (&a[i], &b[k - i]);
            if !x.is_zero() && !y.is_zero() {
                s += x * y;
            }
        }
        s
    };
    if a.len().min(b.len()) > 16 {
        (0..len).into_par_iter().map(coeff).collect()
    } else {
        (0..len).map(coeff).collect()
    }
}

impl fmt::Debug for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPolynomial({self})")
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RationalPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        RationalPolynomial::mul(self, rhs)
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        Self::from_strings(&strings).map_err(D::Error::custom)
    }
}

/// Exact product `p · q`.
pub fn poly_mul(p: &RationalPolynomial, q: &RationalPolynomial) -> RationalPolynomial {
    p.mul(q)
}

/// `p(aλ + b)`.
pub fn affine_substitute(p: &RationalPolynomial, a: &BigRational, b: &BigRational) -> RationalPolynomial {
    p.affine_substitute(a, b)
}

pub fn poly_eval(p: &RationalPolynomial, x: &BigRational) -> BigRational {
    p.eval(x)
}

/// `f_1(λ) = λ(λ - 2) = λ² - 2λ`.
pub fn f1() -> RationalPolynomial {
    RationalPolynomial::from_integers(&[0, -2, 1])
}

/// `f_n` by the two-branch recursion from `f_1`.
pub fn recursion_f(n: u32) -> Result<RationalPolynomial> {
    recursion_f_with(n, &Limits::default())
}

pub fn recursion_f_with(n: u32, limits: &Limits) -> Result<RationalPolynomial> {
    Error::check_range(n, 1, limits.polynomial)?;
    let mut f = f1();
    for m in 2..=n {
        let m = i64::from(m);
        let a = rational(m, m - 1);
        let left = f.affine_substitute(&a, &BigRational::zero());
        let right = f.affine_substitute(&a, &rational(-2, m - 1));
        f = left.mul(&right);
    }
    Ok(f)
}

/// `∏_{k=0}^{n} (λ - 2k/n)^{C(n,k)}`, the monic characteristic polynomial `g_n`.
pub fn closed_form_g(n: u32) -> Result<RationalPolynomial> {
    closed_form_g_with(n, &Limits::default())
}

pub fn closed_form_g_with(n: u32, limits: &Limits) -> Result<RationalPolynomial> {
    Error::check_range(n, 1, limits.polynomial)?;
    let binom = binomial_row(n);
    let factors: Vec<RationalPolynomial> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let root = rational(2 * i64::from(k), i64::from(n));
            let mult = u64::try_from(&binom[k as usize]).expect("C(n,k) fits u64 for n <= 64");
            RationalPolynomial::linear(BigRational::one(), -root).pow(mult)
        })
        .collect();
    Ok(product_tree(factors))
}

/// `n^{2^n} ∏_{k=0}^{n} (λ - 2k/n)^{C(n,k)}`.
pub fn closed_form_f(n: u32) -> Result<RationalPolynomial> {
    closed_form_f_with(n, &Limits::default())
}

pub fn closed_form_f_with(n: u32, limits: &Limits) -> Result<RationalPolynomial> {
    let g = closed_form_g_with(n, limits)?;
    Ok(g.scale(&leading_coefficient_f(n)))
}

/// `n^{2^n}`, the leading coefficient of `f_n` and the ratio `f_n / g_n`.
pub fn leading_coefficient_f(n: u32) -> BigRational {
    rational_int(num_traits::pow(BigInt::from(n), 1usize << n))
}

fn product_tree(mut factors: Vec<RationalPolynomial>) -> RationalPolynomial {
    if factors.is_empty() {
        return RationalPolynomial::one();
    }
    while factors.len() > 1 {
        factors = factors
            .par_chunks(2)
            .map(|pair| match pair {
                [a, b] => a.mul(b),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    factors.pop().unwrap()
}

/// Largest matrix order accepted by [`charpoly_oracle`] under `limits`.
pub fn charpoly_order_cap(limits: &Limits) -> usize {
    1usize << limits.dense_exact.min(12)
}

/// `det(λI - M)` by the Faddeev–LeVerrier iteration in exact arithmetic.
///
/// `M_0 = 0`, `M_k = M·M_{k-1} + c_{d-k+1} I`, `c_{d-k} = -tr(M·M_k)/k`.
pub fn charpoly_oracle(m: &Matrix<BigRational>) -> Result<RationalPolynomial> {
    charpoly_oracle_with(m, &Limits::default())
}

pub fn charpoly_oracle_with(m: &Matrix<BigRational>, limits: &Limits) -> Result<RationalPolynomial> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let d = m.rows();
    let cap = charpoly_order_cap(limits);
    if d > cap {
        return Err(Error::Shape(format!("matrix order {d} exceeds oracle cap {cap}")));
    }
    let mut coeffs = vec![BigRational::zero(); d + 1];
    coeffs[d] = BigRational::one();
    let mut mk = Matrix::filled(d, d, BigRational::zero());
    for k in 1..=d {
        // mk currently holds M·M_{k-1}; add c_{d-k+1} I.
        for i in 0..d {
            mk[(i, i)] += &coeffs[d - k + 1];
        }
        let product = rational_matmul(m, &mk)?;
        let trace: BigRational = (0..d).map(|i| product[(i, i)].clone()).sum();
        coeffs[d - k] = -trace / rational_int(k as i64);
        mk = product;
    }
    Ok(RationalPolynomial::new(coeffs))
}
