//! Truncated formal power series in q with exact integer coefficients.
//!
//! All arithmetic is closed at a fixed truncation order M: multiplying two
//! series of order M yields a series correct through order M. Used for the
//! sums-of-squares identity checks, where exactness removes every rounding
//! question.

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>, // coeffs[k] multiplies q^k; len = order + 1
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// c·q^k truncated at `order`.
    pub fn monomial(c: impl Into<BigInt>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, v: impl Into<BigInt>) {
        self.coeffs[k] = v.into();
    }

    pub fn add_to_coeff(&mut self, k: usize, v: &BigInt) {
        self.coeffs[k] += v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        QSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs }
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * &c).collect(),
        }
    }

    /// Multiplication by q^k (drops coefficients past the truncation order).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        if k > order {
            return s;
        }
        for i in 0..=order - k {
            s.coeffs[i + k] = self.coeffs[i].clone();
        }
        s
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse; requires a unit constant term (±1).
    pub fn inverse(&self) -> Self {
        let a0 = &self.coeffs[0];
        assert!(
            a0.is_one() || (-a0).is_one(),
            "inverse needs a unit constant term"
        );
        let order = self.order();
        let mut inv = Self::zero(order);
        inv.coeffs[0] = a0.clone(); // 1/±1 = ±1
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv.coeffs[n - i];
                }
            }
            inv.coeffs[n] = -(a0 * acc); // a0^{-1} = a0 for a0 = ±1
        }
        inv
    }

    /// Largest k with a nonzero coefficient of q^k, if any.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Index of the first differing coefficient, if the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        assert_eq!(self.order(), other.order());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

/// θ-type alternating series Σ_{j ∈ ℤ} (-1)^j q^{j²} truncated at `order`:
/// coefficient 1 at q^0 and 2(-1)^j at each square j².
pub fn theta_alternating(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut j = 1usize;
    while j * j <= order {
        s.set_coeff(j * j, if j % 2 == 0 { 2 } else { -2 });
        j += 1;
    }
    s
}

/// Plain theta series Σ_{j ∈ ℤ} q^{j²}: the generating function of r_1(m).
pub fn theta_plain(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    let mut j = 1usize;
    while j * j <= order {
        s.set_coeff(j * j, 2);
        j += 1;
    }
    s
}

/// Π_{j≥1, step·j ≤ order} (1 - q^{step·j}) truncated at `order`.
pub fn product_one_minus_q(step: usize, order: usize) -> QSeries {
    let mut acc = QSeries::one(order);
    let mut j = 1usize;
    while step * j <= order {
        // multiply in place by the sparse binomial (1 - q^{step j})
        let k = step * j;
        for i in (0..=order - k).rev() {
            let v = acc.coeffs[i].clone();
            if !v.is_zero() {
                acc.coeffs[i + k] -= v;
            }
        }
        j += 1;
    }
    acc
}
