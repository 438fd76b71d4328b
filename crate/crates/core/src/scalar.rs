//! The coefficient-ring abstraction shared by series and polynomials.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A commutative ring with unit, usable as a coefficient type.
///
/// Blanket-implemented for anything with the `num-traits` identities and
/// owned ring operators, so `i64`, `BigInt`, `BigRational`, and the crate's
/// polynomial and K₀ types all qualify.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// `n · 1`, by double-and-add.
    fn from_u64(n: u64) -> Self {
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc + base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() + base;
            }
        }
        acc
    }

    fn from_i64(n: i64) -> Self {
        let v = Self::from_u64(n.unsigned_abs());
        if n < 0 {
            -v
        } else {
            v
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        use num_traits::Signed;
        let mut acc = Self::zero();
        for digit in n.abs().to_u64_digits().1.iter().rev() {
            acc = acc * Self::from_u64(1 << 32) * Self::from_u64(1 << 32) + Self::from_u64(*digit);
        }
        if n.is_negative() {
            -acc
        } else {
            acc
        }
    }

    /// `self · n` for an integer `n`.
    fn scale_i64(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Binomial coefficient for signed upper argument (`C(n,k)` with `n < 0`
/// follows the usual polynomial extension).
pub fn binomial_signed(n: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i as i64);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_integers() {
        assert_eq!(<i64 as Scalar>::from_u64(37), 37);
        assert_eq!(<i64 as Scalar>::from_i64(-12), -12);
        let big = BigInt::from(1u64 << 40) * BigInt::from(12345u64) - BigInt::from(7);
        assert_eq!(<BigInt as Scalar>::from_bigint(&big), big);
        assert_eq!(<BigInt as Scalar>::from_bigint(&-big.clone()), -big);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial_signed(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_signed(4, 2), BigInt::from(6));
    }
}
