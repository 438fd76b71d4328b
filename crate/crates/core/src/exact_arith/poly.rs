use std::cmp::Ordering;
use std::fmt;

use super::fp::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod, FpElem};

/// Dense univariate polynomial over F_p, little-endian coefficients, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: i64, p: u32) -> Self {
        Self::from_coeffs(vec![reduce_i64(c, p)], p)
    }

    /// The indeterminate `t`.
    pub fn t(p: u32) -> Self {
        Self::monomial(1, 1, p)
    }

    pub fn monomial(c: i64, deg: usize, p: u32) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = reduce_i64(c, p);
        Self::from_coeffs(coeffs, p)
    }

    /// Builds from residues (each reduced mod p); trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<u32>, p: u32) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = FpPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn from_i64s(coeffs: &[i64], p: u32) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| reduce_i64(c, p)).collect(), p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        Self::from_coeffs(
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
            self.p,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_coeffs(coeffs, self.p)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Self::from_coeffs(coeffs, self.p)
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.p).sub(self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_coeffs(acc.into_iter().map(|c| c as u32).collect(), self.p)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut r = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lead(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    r[k + j] = sub_mod(r[k + j], mul_mod(c, b, p), p);
                }
            }
        }
        r.truncate(dd);
        (Self::from_coeffs(q, p), Self::from_coeffs(r, p))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, u)` with `s*self + u*other = g`, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut u0, mut u1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let u = u0.sub(&q.mul(&u1));
            u0 = std::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = inv_mod(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), u0.scale(inv))
    }

    /// Inverse modulo `m`, if `self` is coprime to it.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64 % p as u64) as u32, p))
            .collect();
        Self::from_coeffs(coeffs, p)
    }

    pub fn eval(&self, x: FpElem) -> FpElem {
        let p = self.p;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| add_mod(mul_mod(acc, x.value(), p), c, p));
        FpElem::new(v as i64, p)
    }

    /// `f(t) -> f(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Self::from_coeffs(coeffs, self.p)
    }

    /// `f(t) -> f(t)^p`, which over the prime field equals `f(t^p)`.
    pub fn frobenius(&self) -> Self {
        self.inflate(self.p as usize)
    }

    /// If every exponent is divisible by `p`, returns `g` with `g^p = self`.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.p as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, &c)| c != 0 && i % p != 0)
        {
            return None;
        }
        let coeffs = self.coeffs.iter().step_by(p).copied().collect();
        Some(Self::from_coeffs(coeffs, self.p))
    }

    /// Splits `self = Σ_{i<p} t^i g_i(t^p)` and returns the `g_i`.
    pub fn frobenius_components(&self) -> Vec<Self> {
        let p = self.p as usize;
        (0..p)
            .map(|i| {
                let coeffs = self.coeffs.iter().skip(i).step_by(p).copied().collect();
                Self::from_coeffs(coeffs, self.p)
            })
            .collect()
    }

    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        r
    }

    pub fn leading_inverse(&self) -> u32 {
        inv_mod(self.lead(), self.p)
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], p: u32) -> FpPoly {
        FpPoly::from_i64s(c, p)
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = 7;
        let a = poly(&[3, 1, 4, 1, 5, 2], p);
        let d = poly(&[2, 0, 3], p);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_and_inverse() {
        let p = 5;
        // (t-1)(t-2) and (t-1)(t+1)
        let a = poly(&[1, -1], p).mul(&poly(&[-2, 1], p));
        let b = poly(&[-1, 1], p).mul(&poly(&[1, 1], p));
        assert_eq!(a.gcd(&b), poly(&[-1, 1], p));
        let m = poly(&[2, 0, 1], p); // t^2+2 irreducible mod 5
        let x = poly(&[1, 3], p);
        let inv = x.inverse_mod(&m).unwrap();
        assert!(x.mul(&inv).rem(&m).is_one());
    }

    #[test]
    fn derivative_char_p() {
        // d/dt (t^3 + 1) = 0 mod 3
        assert!(poly(&[1, 0, 0, 1], 3).derivative().is_zero());
        assert_eq!(poly(&[0, 0, 1], 5).derivative(), poly(&[0, 2], 5));
    }

    #[test]
    fn frobenius_root_round_trip() {
        let f = poly(&[1, 2, 0, 1], 3);
        assert_eq!(f.frobenius(), f.pow(3));
        assert_eq!(f.frobenius().pth_root(), Some(f));
        assert_eq!(poly(&[0, 1], 3).pth_root(), None);
    }

    #[test]
    fn frobenius_components_recombine() {
        let p = 3;
        let f = poly(&[1, 2, 0, 1, 1, 2, 2, 1], p);
        let parts = f.frobenius_components();
        let mut acc = FpPoly::zero(p);
        for (i, g) in parts.iter().enumerate() {
            acc = acc.add(&FpPoly::monomial(1, i, p).mul(&g.inflate(p as usize)));
        }
        assert_eq!(acc, f);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[2, 0, 1], 5).to_string(), "t^2+2");
        assert_eq!(poly(&[0, 3], 5).to_string(), "3*t");
        assert_eq!(FpPoly::zero(5).to_string(), "0");
    }
}
