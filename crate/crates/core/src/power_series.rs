//! Truncated formal power series over a commutative coefficient ring.

use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::scalar::{binomial, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("constant term is not 1")]
    ConstantTermNotOne,
}

/// `c_0 + c_1 t + … + c_N t^N + O(t^{N+1})`; always exactly `N+1` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> TruncSeries<C> {
    /// Pads with zeros or truncates to order `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![], order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// `c_0 + c_1 t` truncated to `order`.
    pub fn linear(c0: C, c1: C, order: usize) -> Self {
        Self::new(vec![c0, c1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), other.order()))
        }
    }

    /// Cauchy product, discarding degrees above the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prev = std::mem::replace(&mut out[i + j], C::zero());
                out[i + j] = prev + a.clone() * b.clone();
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(self.clone() + other.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        r
    }

    pub fn has_unit_constant(&self) -> bool {
        self.coeffs[0] == C::one()
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if !self.has_unit_constant() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut inv = vec![C::zero(); n + 1];
        inv[0] = C::one();
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s = s + self.coeffs[j].clone() * inv[k - j].clone();
                }
            }
            inv[k] = -s;
        }
        Ok(TruncSeries { coeffs: inv })
    }

    /// Integer power with negative exponents via [`inverse`](Self::inverse).
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inverse()
        } else {
            Ok(p)
        }
    }

    /// Evaluates at `u = t/(1-t)` by Horner's scheme, where multiplication
    /// by `u` is a shift followed by multiplication with `1/(1-t)`.
    pub fn gamma_substitute(&self) -> Result<Self, SeriesError> {
        if !self.has_unit_constant() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut acc = vec![C::zero(); n + 1];
        for a in self.coeffs.iter().rev() {
            // acc <- a + u·acc; dividing by 1 - t is a running sum.
            let mut next = Vec::with_capacity(n + 1);
            next.push(a.clone());
            let mut run = C::zero();
            for c in &acc[..n] {
                if !c.is_zero() {
                    run = run + c.clone();
                }
                next.push(run.clone());
            }
            acc = next;
        }
        Ok(TruncSeries { coeffs: acc })
    }

    /// Same substitution via `Σ_{j=1..k} C(k-1, j-1) a_j`; an independent
    /// route used to cross-check [`gamma_substitute`](Self::gamma_substitute).
    pub fn gamma_substitute_closed_form(&self) -> Result<Self, SeriesError> {
        if !self.has_unit_constant() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = self.order();
        let mut out = vec![C::one()];
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                let b = binomial((k - 1) as u64, (j - 1) as u64);
                s = s + self.coeffs[j].clone() * C::from_bigint(&b);
            }
            out.push(s);
        }
        Ok(TruncSeries { coeffs: out })
    }
}

impl<C: Scalar> Add for TruncSeries<C> {
    type Output = Self;
    /// Panics on mismatched orders; use [`TruncSeries::checked_add`] otherwise.
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "truncation order mismatch");
        TruncSeries {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<C: Scalar> Sub for TruncSeries<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Scalar> Neg for TruncSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Cauchy product of two series; see [`TruncSeries::mul`].
pub fn ps_mul<C: Scalar>(
    a: &TruncSeries<C>,
    b: &TruncSeries<C>,
) -> Result<TruncSeries<C>, SeriesError> {
    a.mul(b)
}

pub fn ps_inverse<C: Scalar>(a: &TruncSeries<C>) -> Result<TruncSeries<C>, SeriesError> {
    a.inverse()
}

pub fn ps_gamma_substitute<C: Scalar>(a: &TruncSeries<C>) -> Result<TruncSeries<C>, SeriesError> {
    a.gamma_substitute()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::MPoly;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;
    use proptest::prelude::*;

    fn s(c: &[i64], n: usize) -> TruncSeries<i64> {
        TruncSeries::new(c.to_vec(), n)
    }

    #[test]
    fn products() {
        assert_eq!(
            s(&[1, 1], 2).mul(&s(&[1, -1], 2)).unwrap(),
            s(&[1, 0, -1], 2)
        );
        assert_eq!(s(&[1, 1], 2).mul(&s(&[1], 2)).unwrap(), s(&[1, 1], 2));
        assert_eq!(
            s(&[1, 1], 2).mul(&s(&[1], 3)),
            Err(SeriesError::OrderMismatch(2, 3))
        );
    }

    #[test]
    fn product_over_polynomials() {
        type P = MPoly<BigInt, String>;
        let g = P::var("g".into());
        let h = P::var("h".into());
        let a = TruncSeries::linear(P::one(), g.clone(), 2);
        let b = TruncSeries::linear(P::one(), h.clone(), 2);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.coeff(1), g.clone() + h.clone());
        assert_eq!(prod.coeff(2), g * h);
    }

    #[test]
    fn inverse_examples() {
        // multiply-back oracle
        let inv = s(&[1, 1], 3).inverse().unwrap();
        assert_eq!(inv, s(&[1, -1, 1, -1], 3));
        assert_eq!(inv.mul(&s(&[1, 1], 3)).unwrap(), s(&[1], 3));
        assert_eq!(s(&[1], 4).inverse().unwrap(), s(&[1], 4));
        assert_eq!(
            s(&[2, 1], 2).inverse(),
            Err(SeriesError::ConstantTermNotOne)
        );
    }

    #[test]
    fn inverse_geometric_over_polynomials() {
        // 1/(1 + (1-l)t) has coefficients (l-1)^k
        type P = MPoly<BigInt, String>;
        let l = P::var("l".into());
        let one = P::one();
        let n = 5;
        let a = TruncSeries::linear(one.clone(), one.clone() - l.clone(), n);
        let inv = a.inverse().unwrap();
        for k in 0..=n {
            assert_eq!(inv.coeff(k), (l.clone() - one.clone()).pow(k as u32));
        }
    }

    #[test]
    fn gamma_substitute_examples() {
        // 1 + t -> 1/(1-t)
        assert_eq!(s(&[1, 1], 5).gamma_substitute().unwrap(), s(&[1; 6], 5));
        assert_eq!(s(&[1], 3).gamma_substitute().unwrap(), s(&[1], 3));
        // 1 + g t + L t^2 -> coefficient of t^2 is g + L (u = t + t^2 + ...,
        // u^2 = t^2 + ...)
        type P = MPoly<BigInt, String>;
        let g = P::var("g".into());
        let l2 = P::var("L2 g".into());
        let a = TruncSeries::new(vec![P::one(), g.clone(), l2.clone()], 4);
        let sub = a.gamma_substitute().unwrap();
        assert_eq!(sub.coeff(1), g.clone());
        assert_eq!(sub.coeff(2), g.clone() + l2.clone());
        assert_eq!(
            s(&[3, 1], 2).gamma_substitute(),
            Err(SeriesError::ConstantTermNotOne)
        );
    }

    #[test]
    fn generic_over_rationals() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = TruncSeries::linear(BigRational::one(), half.clone(), 3);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeff(3), -(half.clone() * half.clone() * half));
        assert_eq!(inv.mul(&a).unwrap(), TruncSeries::one(3));
    }

    fn arb_unit_series(n: usize) -> impl Strategy<Value = TruncSeries<i64>> {
        prop::collection::vec(-5i64..=5, n).prop_map(move |mut c| {
            c.insert(0, 1);
            TruncSeries::new(c, n)
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_unit_series(6), b in arb_unit_series(6), c in arb_unit_series(6)) {
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn inverse_two_sided(a in arb_unit_series(8)) {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv).unwrap(), TruncSeries::one(8));
            prop_assert_eq!(inv.mul(&a).unwrap(), TruncSeries::one(8));
        }

        #[test]
        fn gamma_substitute_multiplicative(a in arb_unit_series(7), b in arb_unit_series(7)) {
            let lhs = a.mul(&b).unwrap().gamma_substitute().unwrap();
            let rhs = a.gamma_substitute().unwrap().mul(&b.gamma_substitute().unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gamma_two_routes_agree(a in arb_unit_series(10)) {
            prop_assert_eq!(a.gamma_substitute().unwrap(), a.gamma_substitute_closed_form().unwrap());
        }
    }
}
