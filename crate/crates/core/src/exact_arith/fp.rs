use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::ArithError;

/// Largest characteristic accepted anywhere in the crate.
pub const MAX_PRIME: u32 = 97;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks that `p` is a prime in the supported range `2..=97`.
pub fn check_prime(p: u32) -> Result<u32, ArithError> {
    if (2..=MAX_PRIME).contains(&p) && is_prime(p) {
        Ok(p)
    } else {
        Err(ArithError::BadPrime(p))
    }
}

/// Reduces a signed integer into `0..p`.
pub fn reduce_i64(n: i64, p: u32) -> u32 {
    n.rem_euclid(p as i64) as u32
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, (p - 2) as u64, p)
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FpElem {
    value: u32,
    p: u32,
}

impl FpElem {
    pub fn new(value: i64, p: u32) -> Self {
        FpElem {
            value: reduce_i64(value, p),
            p,
        }
    }

    pub fn zero(p: u32) -> Self {
        FpElem { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        FpElem { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(FpElem {
                value: inv_mod(self.value, self.p),
                p: self.p,
            })
        }
    }

    pub fn pow(self, e: u64) -> Self {
        FpElem {
            value: pow_mod(self.value, e, self.p),
            p: self.p,
        }
    }

    /// Smallest nonnegative integer lift.
    pub fn lift(self) -> u32 {
        self.value
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        FpElem {
            value: add_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        FpElem {
            value: sub_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        FpElem {
            value: mul_mod(self.value, rhs.value, self.p),
            p: self.p,
        }
    }
}

impl Div for FpElem {
    type Output = FpElem;
    fn div(self, rhs: FpElem) -> FpElem {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem {
            value: sub_mod(0, self.value, self.p),
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_in_range() {
        let primes: Vec<u32> = (0..=100).filter(|&n| check_prime(n).is_ok()).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(primes.first(), Some(&2));
        assert_eq!(primes.last(), Some(&97));
        assert!(check_prime(101).is_err());
        assert!(check_prime(1).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for p in [2u32, 3, 5, 7] {
            for a in 0..p as i64 {
                let x = FpElem::new(a, p);
                assert_eq!(x + (-x), FpElem::zero(p));
                if a != 0 {
                    assert_eq!(x * x.inverse().unwrap(), FpElem::one(p));
                    // Fermat
                    assert_eq!(x.pow(p as u64 - 1), FpElem::one(p));
                }
                for b in 0..p as i64 {
                    let y = FpElem::new(b, p);
                    for c in 0..p as i64 {
                        let z = FpElem::new(c, p);
                        assert_eq!((x + y) + z, x + (y + z));
                        assert_eq!((x * y) * z, x * (y * z));
                        assert_eq!(x * (y + z), x * y + x * z);
                    }
                }
            }
        }
    }

    #[test]
    fn wilson() {
        for p in [2u32, 3, 5, 7, 11, 97] {
            let mut f = FpElem::one(p);
            for k in 1..p as i64 {
                f = f * FpElem::new(k, p);
            }
            assert_eq!(f, FpElem::new(-1, p));
        }
    }

    #[test]
    fn negative_reduction() {
        assert_eq!(FpElem::new(-1, 5).value(), 4);
        assert_eq!(FpElem::new(-10, 5).value(), 0);
    }
}
