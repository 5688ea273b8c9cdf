use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use super::poly::Truncated;
use super::CountValue;
use crate::{check_arity, Result};

/// `N_d(n,k)` as `[x^(n+1)][y^(k+1)] v` where `v = x * Phi(v)` and
/// `Phi(t) = (1 + t)(y + t(1 + t)^(d-2))`.
///
/// Lagrange inversion gives `[x^(n+1)] v = 1/(n+1) [t^n] Phi(t)^(n+1)`;
/// the power is expanded exactly as a polynomial in `t` and `y`.
pub fn lagrange_narayana(d: usize, n: usize, k: usize) -> Result<CountValue> {
    check_arity(d)?;
    if k > n {
        return Ok(CountValue::zero());
    }
    // x plays the role of t here
    let (max_t, max_y) = (n, k + 1);
    let one = Truncated::one(max_t, max_y);
    let t = Truncated::monomial(max_t, max_y, 1, 0);
    let y = Truncated::monomial(max_t, max_y, 0, 1);
    let one_plus_t = one.add(&t);
    let phi = one_plus_t.mul(&y.add(&t.mul(&one_plus_t.pow(d - 2))));
    let power = phi.pow(n + 1);
    let (quotient, remainder) = power.coeff(n, k + 1).div_rem(&BigUint::from(n + 1));
    assert!(
        remainder.is_zero(),
        "Lagrange coefficient not divisible by n+1"
    );
    Ok(CountValue::from(quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::narayana;

    #[test]
    fn table_values() {
        assert_eq!(lagrange_narayana(3, 3, 2).unwrap(), 10);
        assert_eq!(lagrange_narayana(2, 4, 2).unwrap(), 20);
        assert_eq!(lagrange_narayana(3, 5, 4).unwrap(), 35);
    }

    #[test]
    fn quinary_matches_closed_form() {
        assert_eq!(
            lagrange_narayana(5, 5, 4).unwrap(),
            narayana(5, 5, 4).unwrap()
        );
    }

    #[test]
    fn above_diagonal_is_zero() {
        assert_eq!(lagrange_narayana(3, 2, 3).unwrap(), 0);
    }
}
