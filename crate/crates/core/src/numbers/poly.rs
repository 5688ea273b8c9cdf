use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Bivariate polynomial in `x`, `y` with every monomial beyond
/// `x^max_x` or `y^max_y` discarded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct Truncated {
    max_x: usize,
    max_y: usize,
    c: Vec<Vec<BigUint>>,
}

impl Truncated {
    pub fn zero(max_x: usize, max_y: usize) -> Self {
        Truncated {
            max_x,
            max_y,
            c: vec![vec![BigUint::zero(); max_y + 1]; max_x + 1],
        }
    }

    pub fn one(max_x: usize, max_y: usize) -> Self {
        let mut p = Self::zero(max_x, max_y);
        p.c[0][0] = BigUint::one();
        p
    }

    /// `x^i y^j`, or zero if it lies beyond the truncation.
    pub fn monomial(max_x: usize, max_y: usize, i: usize, j: usize) -> Self {
        let mut p = Self::zero(max_x, max_y);
        if i <= max_x && j <= max_y {
            p.c[i][j] = BigUint::one();
        }
        p
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigUint {
        &self.c[i][j]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (row, orow) in out.c.iter_mut().zip(&other.c) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b;
            }
        }
        out
    }

    /// Multiply by `x^dx y^dy`.
    pub fn shift(&self, dx: usize, dy: usize) -> Self {
        let mut out = Self::zero(self.max_x, self.max_y);
        for i in (0..=self.max_x).take_while(|i| i + dx <= self.max_x) {
            for j in (0..=self.max_y).take_while(|j| j + dy <= self.max_y) {
                out.c[i + dx][j + dy] = self.c[i][j].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_x, self.max_y);
        for (i1, row1) in self.c.iter().enumerate() {
            for (j1, a) in row1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, row2) in other.c.iter().enumerate().take(self.max_x + 1 - i1) {
                    for (j2, b) in row2.iter().enumerate().take(self.max_y + 1 - j1) {
                        if !b.is_zero() {
                            out.c[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.max_x, self.max_y);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_expansion() {
        // (1 + x)^5 has coefficients 1 5 10 10 5 1
        let p = Truncated::one(5, 0).add(&Truncated::monomial(5, 0, 1, 0));
        let q = p.pow(5);
        let got: Vec<u32> = (0..=5).map(|i| q.coeff(i, 0).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn truncation_drops_high_terms() {
        let xy = Truncated::monomial(2, 1, 1, 1);
        let sq = xy.mul(&xy);
        assert!(sq == Truncated::zero(2, 1));
        assert_eq!(xy.shift(1, 0).coeff(2, 1), &BigUint::one());
        assert!(xy.shift(0, 1) == Truncated::zero(2, 1));
    }
}
