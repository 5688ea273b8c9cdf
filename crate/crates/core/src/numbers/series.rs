use serde::Serialize;

use super::poly::Truncated;
use super::CountValue;
use crate::{check_arity, Result};

/// Coefficients of `A_d(x,y) = sum N_d(n,k) x^n y^k` for `n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BivariateSeriesTable {
    pub d: usize,
    pub max_n: usize,
    /// `coeff[n][k]` for `0 <= k <= n`.
    pub coeff: Vec<Vec<CountValue>>,
}

impl BivariateSeriesTable {
    /// Coefficient of `x^n y^k`; zero above the diagonal.
    ///
    /// Panics if `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> CountValue {
        assert!(
            n <= self.max_n,
            "x-degree {n} beyond truncation {}",
            self.max_n
        );
        self.coeff[n].get(k).cloned().unwrap_or_default()
    }
}

/// Iterates `A -> (1 + xyA)(1 + xA(1 + xyA)^(d-2))` from `A = 1` until
/// two successive truncations agree. With `y_shift = 0` the `y` variable
/// is specialised to 1.
fn fixed_point(d: usize, max_n: usize, y_shift: usize, max_y: usize) -> Truncated {
    let one = Truncated::one(max_n, max_y);
    let mut current = one.clone();
    loop {
        let irreducible = one.add(&current.shift(1, y_shift));
        let tail = current.shift(1, 0).mul(&irreducible.pow(d - 2));
        let next = irreducible.mul(&one.add(&tail));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `N_d(n,k)` for all `n <= max_n` from the functional equation of the
/// generating function.
pub fn series_narayana(d: usize, max_n: usize) -> Result<BivariateSeriesTable> {
    check_arity(d)?;
    let a = fixed_point(d, max_n, 1, max_n);
    let coeff = (0..=max_n)
        .map(|n| {
            (0..=n)
                .map(|k| CountValue::from(a.coeff(n, k).clone()))
                .collect()
        })
        .collect();
    Ok(BivariateSeriesTable { d, max_n, coeff })
}

/// `C_d(0), ..., C_d(max_n)` from `u = (1 + xu)(1 + xu(1 + xu)^(d-2))`.
pub fn series_catalan(d: usize, max_n: usize) -> Result<Vec<CountValue>> {
    check_arity(d)?;
    let u = fixed_point(d, max_n, 0, 0);
    Ok((0..=max_n)
        .map(|n| CountValue::from(u.coeff(n, 0).clone()))
        .collect())
}
