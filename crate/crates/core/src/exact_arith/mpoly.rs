//! Sparse multivariate polynomials over an arbitrary coefficient ring.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
///
/// Ordered graded-lexicographically: total degree first, then the
/// variable/exponent list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V: Ord + Hash + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: vec![] }
    }

    pub fn var(v: V) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Each variable repeated by its exponent.
    pub fn expanded(&self) -> impl Iterator<Item = &V> {
        self.factors
            .iter()
            .flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }
}

impl<V: Ord> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.factors.iter().map(|(_, e)| e).sum();
        let db: u32 = other.factors.iter().map(|(_, e)| e).sum();
        da.cmp(&db).then_with(|| {
            // Lexicographic order of the expanded variable sequences. With
            // equal degrees, a shorter run of a shared variable is followed
            // by a larger variable, so it sorts later.
            for ((va, ea), (vb, eb)) in self.factors.iter().zip(&other.factors) {
                match va.cmp(vb) {
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    },
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl<V: Ord> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial `Σ c_m · m` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly<C, V = String> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<C: Scalar, V: Ord + Hash + Clone> MPoly<C, V> {
    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: V) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial<V>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn variables(&self) -> impl Iterator<Item = &V> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v))
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r * self.clone();
        }
        r
    }

    /// Ring homomorphism defined by the image of each variable.
    pub fn eval_with<R: Scalar>(&self, coeff: impl Fn(&C) -> R, var: impl Fn(&V) -> R) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (v, e) in &m.factors {
                let x = var(v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MPoly<D, V> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Zero for MPoly<C, V> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> One for MPoly<C, V> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Add for MPoly<C, V> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        if rhs.terms.len() * 8 < self.terms.len() {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
            return self;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = self.terms.into_iter().peekable();
        let mut b = rhs.terms.into_iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().expect("peeked")),
                Ordering::Greater => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let (m, ca) = a.next().expect("peeked");
                    let (_, cb) = b.next().expect("peeked");
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        MPoly {
            terms: out.into_iter().collect(),
        }
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Sub for MPoly<C, V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Neg for MPoly<C, V> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Mul for MPoly<C, V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Scalar, V: Ord + Hash + Clone> Mul for &MPoly<C, V> {
    type Output = MPoly<C, V>;
    fn mul(self, rhs: Self) -> MPoly<C, V> {
        if self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()) {
            return rhs.scale(&self.constant_term());
        }
        let mut acc: HashMap<Monomial<V>, C> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let c = ca.clone() * cb.clone();
                match acc.entry(ma.mul(mb)) {
                    Entry::Occupied(mut slot) => {
                        let old = std::mem::replace(slot.get_mut(), C::zero());
                        *slot.get_mut() = old + c;
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(c);
                    }
                }
            }
        }
        MPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<C: Scalar + fmt::Display, V: Ord + Hash + Clone + fmt::Display> fmt::Display for MPoly<C, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, e) in &m.factors {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
