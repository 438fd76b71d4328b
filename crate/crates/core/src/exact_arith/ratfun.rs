use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::fp::{inv_mod, FpElem};
use super::poly::FpPoly;
use super::ArithError;

/// A reduced rational function `num/den` in `F_p(t)`.
///
/// The denominator is monic and coprime to the numerator; zero is `0/1`.
/// Structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: FpPoly,
    den: FpPoly,
}

impl RatFun {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: FpPoly, den: FpPoly) -> Self {
        let p = den.modulus();
        if num.is_zero() {
            return RatFun {
                num,
                den: FpPoly::one(p),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if !den.is_monic() {
            let inv = inv_mod(den.lead(), p);
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFun { num, den }
    }

    pub fn zero(p: u32) -> Self {
        Self::from_poly(FpPoly::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::from_poly(FpPoly::one(p))
    }

    pub fn from_int(c: i64, p: u32) -> Self {
        Self::from_poly(FpPoly::constant(c, p))
    }

    pub fn t(p: u32) -> Self {
        Self::from_poly(FpPoly::t(p))
    }

    pub fn from_poly(num: FpPoly) -> Self {
        let p = num.modulus();
        RatFun {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn from_fp(c: FpElem) -> Self {
        Self::from_int(c.value() as i64, c.modulus())
    }

    pub fn modulus(&self) -> u32 {
        self.den.modulus()
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, when the function is constant.
    pub fn as_constant(&self) -> Option<FpElem> {
        (self.den.is_one() && self.num.is_constant())
            .then(|| FpElem::new(self.num.coeff(0) as i64, self.modulus()))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        let inv = other.inverse().ok_or(ArithError::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(RatFun {
                num: self.num.pow(e as u64),
                den: self.den.pow(e as u64),
            })
        } else {
            let inv = self.inverse().ok_or(ArithError::DivisionByZero)?;
            inv.pow(-e)
        }
    }

    /// `self^p`, computed as the substitution `t -> t^p`.
    pub fn frobenius(&self) -> Self {
        RatFun {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// `f(t) -> f(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        RatFun {
            num: self.num.inflate(k),
            den: self.den.inflate(k),
        }
    }

    /// Quotient-rule derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let top = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        Self::reduce(top, self.den.mul(&self.den))
    }

    /// `k`-fold derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// The unique `g` with `g^p = self`, if `self` lies in `F_p(t^p)`.
    ///
    /// In reduced form this happens exactly when numerator and denominator
    /// are both polynomials in `t^p`.
    pub fn pth_root(&self) -> Option<Self> {
        let num = self.num.pth_root()?;
        let den = self.den.pth_root()?;
        Some(RatFun { num, den })
    }

    /// Decomposition `self = Σ_{i<p} t^i · c_i(t^p)`; returns `c_i` as
    /// functions of a fresh variable (so `c_i(t)` stands for `c_i(t^p)`).
    pub fn frobenius_components(&self) -> Vec<Self> {
        let p = self.modulus() as u64;
        // num/den = num·den^{p-1} / den^p and den^p = den(t^p).
        let top = self.num.mul(&self.den.pow(p - 1));
        let den_root = self.den.clone();
        top.frobenius_components()
            .into_iter()
            .map(|c| Self::reduce(c, den_root.clone()))
            .collect()
    }

    pub fn eval(&self, x: FpElem) -> Option<FpElem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Total degree bound `max(deg num, deg den)`, useful for sizing.
    pub fn height(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = |poly: &FpPoly| poly.coeffs().iter().filter(|&&c| c != 0).count();
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if terms(&self.num) > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den_s = self.den.to_string();
        let den = if terms(&self.den) > 1 || den_s.contains('*') {
            format!("({den_s})")
        } else {
            den_s
        };
        write!(f, "{num}/{den}")
    }
}

macro_rules! ratfun_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a RatFun> for &'a RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &'a RatFun) -> RatFun {
                assert_eq!(self.modulus(), rhs.modulus(), "characteristic mismatch");
                let f: fn(&RatFun, &RatFun) -> RatFun = $body;
                f(self, rhs)
            }
        }
        impl $trait<RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &'a RatFun) -> RatFun {
                $trait::$method(&self, rhs)
            }
        }
    };
}

ratfun_binop!(Add, add, |a, b| {
    if a.den == b.den {
        RatFun::reduce(a.num.add(&b.num), a.den.clone())
    } else {
        RatFun::reduce(a.num.mul(&b.den).add(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
});

ratfun_binop!(Sub, sub, |a, b| {
    if a.den == b.den {
        RatFun::reduce(a.num.sub(&b.num), a.den.clone())
    } else {
        RatFun::reduce(a.num.mul(&b.den).sub(&b.num.mul(&a.den)), a.den.mul(&b.den))
    }
});

ratfun_binop!(Mul, mul, |a, b| {
    RatFun::reduce(a.num.mul(&b.num), a.den.mul(&b.den))
});

ratfun_binop!(Div, div, |a, b| {
    a.checked_div(b)
        .expect("rational function division by zero")
});

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}
