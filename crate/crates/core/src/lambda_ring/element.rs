use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_arith::{MPoly, Monomial};

/// The λ-symbol `Λ^degree generator`; degree 1 is the generator itself.
///
/// Ordered by generator name, then degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LambdaSymbol {
    pub generator: Arc<str>,
    pub degree: u32,
}

impl LambdaSymbol {
    pub fn new(generator: impl Into<Arc<str>>, degree: u32) -> Self {
        LambdaSymbol {
            generator: generator.into(),
            degree,
        }
    }
}

/// Renders as `E` or `L2 E`.
impl fmt::Display for LambdaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "L{} {}", self.degree, self.generator)
        }
    }
}

pub type K0Monomial = Monomial<LambdaSymbol>;

/// An integer combination of λ-symbol monomials; the empty monomial is
/// the unit class `[1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct K0Element(MPoly<BigInt, LambdaSymbol>);

impl K0Element {
    pub fn unit() -> Self {
        Self::one()
    }

    pub fn from_int(n: i64) -> Self {
        K0Element(MPoly::constant(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        K0Element(MPoly::constant(n))
    }

    pub fn symbol(s: LambdaSymbol) -> Self {
        K0Element(MPoly::var(s))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K0Monomial, BigInt)>) -> Self {
        K0Element(MPoly::from_terms(terms))
    }

    pub fn poly(&self) -> &MPoly<BigInt, LambdaSymbol> {
        &self.0
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&K0Monomial, &BigInt)> {
        self.0.terms()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    pub fn coeff(&self, m: &K0Monomial) -> BigInt {
        self.0.coeff(m)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &LambdaSymbol> {
        self.0.variables()
    }

    /// All coefficients positive (the zero element counts as effective).
    pub fn is_effective(&self) -> bool {
        self.0.terms().all(|(_, c)| c.is_positive())
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        K0Element(self.0.scale(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        K0Element(self.0.pow(e))
    }

    /// Writes in the element grammar, e.g. `2*[E] - [F] + 3*[L2 E]*[F]`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Zero for K0Element {
    fn zero() -> Self {
        K0Element(MPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for K0Element {
    fn one() -> Self {
        K0Element(MPoly::one())
    }
}

impl Add for K0Element {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        K0Element(self.0 + rhs.0)
    }
}

impl Sub for K0Element {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        K0Element(self.0 - rhs.0)
    }
}

impl Mul for K0Element {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        K0Element(&self.0 * &rhs.0)
    }
}

impl Neg for K0Element {
    type Output = Self;
    fn neg(self) -> Self {
        K0Element(-self.0)
    }
}

pub(crate) fn monomial_text(m: &K0Monomial) -> String {
    if m.is_one() {
        return "[1]".to_string();
    }
    m.factors()
        .iter()
        .map(|(s, e)| {
            if *e == 1 {
                format!("[{s}]")
            } else {
                format!("[{s}]^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{}", monomial_text(m))?;
            } else {
                write!(f, "{mag}*{}", monomial_text(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e() -> K0Element {
        K0Element::symbol(LambdaSymbol::new("E", 1))
    }

    fn f() -> K0Element {
        K0Element::symbol(LambdaSymbol::new("F", 1))
    }

    #[test]
    fn ring_laws_examples() {
        assert_eq!(K0Element::unit() * e(), e());
        let x = K0Element::from_int(2) * e() - f();
        assert_eq!(x + f(), K0Element::from_int(2) * e());
        let sq = e() * e();
        assert_eq!(sq.num_terms(), 1);
        let (m, c) = sq.terms().next().unwrap();
        assert_eq!(m.expanded().count(), 2);
        assert!(c.is_one());
    }

    #[test]
    fn display_grammar() {
        let l2 = K0Element::symbol(LambdaSymbol::new("E", 2));
        let x = K0Element::from_int(2) * e() - f() + K0Element::from_int(3) * l2 * f();
        assert_eq!(x.to_string(), "2*[E] - [F] + 3*[L2 E]*[F]");
        assert_eq!(K0Element::zero().to_string(), "0");
        assert_eq!((K0Element::unit() - e() * e()).to_string(), "[1] - [E]^2");
    }

    #[test]
    fn effectivity() {
        assert!((e() + f()).is_effective());
        assert!(!(e() - f()).is_effective());
        assert!(K0Element::zero().is_effective());
    }
}
