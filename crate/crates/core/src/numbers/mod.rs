//! Exact evaluation of `N_d(n,k)` and `C_d(n)`.
//!
//! Three routes are provided and kept independent of each other:
//! the closed form ([`narayana`]), fixed-point iteration of the
//! generating-function equation ([`series_narayana`]), and coefficient
//! extraction through Lagrange inversion ([`lagrange_narayana`]).

mod lagrange;
mod poly;
mod series;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::{check_arity, Result};

pub use lagrange::lagrange_narayana;
pub use series::{series_catalan, series_narayana, BivariateSeriesTable};

/// A nonnegative count of arbitrary size.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountValue(BigUint);

impl CountValue {
    pub fn zero() -> Self {
        CountValue(BigUint::zero())
    }

    pub fn one() -> Self {
        CountValue(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    /// The value as a `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<BigUint> for CountValue {
    fn from(v: BigUint) -> Self {
        CountValue(v)
    }
}

impl From<u64> for CountValue {
    fn from(v: u64) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl From<usize> for CountValue {
    fn from(v: usize) -> Self {
        CountValue(BigUint::from(v))
    }
}

impl PartialEq<u64> for CountValue {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl std::iter::Sum for CountValue {
    fn sum<I: Iterator<Item = CountValue>>(iter: I) -> Self {
        CountValue(iter.map(|c| c.0).sum())
    }
}

// Decimal string, so that values beyond 2^53 survive JSON consumers.
impl Serialize for CountValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// Binomial coefficient `C(a, b)`, zero outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> CountValue {
    if a < 0 || b < 0 || b > a {
        return CountValue::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 1..=b {
        // acc * (a - b + i) is divisible by i after each step
        acc *= a - b + i;
        acc /= i;
    }
    CountValue(acc)
}

/// `N_d(n,k)` by the closed form; zero when `k > n`.
pub fn narayana(d: usize, n: usize, k: usize) -> Result<CountValue> {
    check_arity(d)?;
    if k > n {
        return Ok(CountValue::zero());
    }
    let (n_i, k_i, d_i) = (n as i64, k as i64, d as i64);
    let top = n_i + (n_i - k_i) * (d_i - 2) + 1;
    let numerator = binomial(n_i + 1, k_i + 1).0 * binomial(top, k_i).0;
    let (quotient, remainder) = numerator.div_rem(&BigUint::from(n + 1));
    assert!(
        remainder.is_zero(),
        "N_{d}({n},{k}): numerator not divisible by n+1"
    );
    Ok(CountValue(quotient))
}

/// `C_d(n)`, the row sum of [`narayana`].
pub fn catalan(d: usize, n: usize) -> Result<CountValue> {
    check_arity(d)?;
    (0..=n).map(|k| narayana(d, n, k)).sum()
}

/// One full row `N_d(n,0), ..., N_d(n,n)`.
pub fn narayana_row(d: usize, n: usize) -> Result<Vec<CountValue>> {
    (0..=n).map(|k| narayana(d, n, k)).collect()
}
