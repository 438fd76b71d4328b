//! Presented pre-λ-rings standing in for K₀ of an abelian category with
//! tensor and exterior products.
//!
//! λ-operations are defined on the additive span of the unit and the
//! generators: `λ_t([1]) = 1 + t`, `λ_t(g) = Σ_{k<=rank g} [Λ^k g] t^k`, and
//! `λ_t(Σ n_i x_i) = Π λ_t(x_i)^{n_i}` with negative powers taken by series
//! inversion. λ of products and of higher λ-symbols is left undefined.

mod element;
mod morphism;
mod presentation;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::power_series::{SeriesError, TruncSeries};
pub(crate) use element::monomial_text;
pub use element::{K0Element, K0Monomial, LambdaSymbol};
pub use morphism::{apply_morphism, RingMorphism};
pub(crate) use presentation::valid_name;
pub use presentation::{Generator, RingPresentation};

pub type K0Series = TruncSeries<K0Element>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LambdaError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element refers to `{0}`, which is not in the presentation")]
    PresentationMismatch(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator `{0}` must have rank >= 1")]
    ZeroRank(String),
    #[error("Λ^{degree} {generator} is undefined for rank {rank}")]
    BadDegree {
        generator: String,
        degree: u32,
        rank: u32,
    },
    #[error("λ-operations are only defined on combinations of [1] and generators, not on {0}")]
    NonLinear(String),
    #[error("morphism: {0}")]
    Morphism(String),
    #[error("element is not effective: {0}")]
    NotEffective(String),
    #[error("integer overflow computing the rank")]
    Overflow,
    #[error("invalid presentation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Ring operations on K₀ elements of a common presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K0Op {
    Add,
    Sub,
    Mul,
}

pub fn k0_arith(
    pres: &RingPresentation,
    x: &K0Element,
    y: &K0Element,
    op: K0Op,
) -> Result<K0Element, LambdaError> {
    pres.check_element(x)?;
    pres.check_element(y)?;
    let (x, y) = (x.clone(), y.clone());
    Ok(match op {
        K0Op::Add => x + y,
        K0Op::Sub => x - y,
        K0Op::Mul => x * y,
    })
}

/// λ-series of a single basis term: the unit or a generator.
fn atom_series(
    pres: &RingPresentation,
    m: &K0Monomial,
    order: usize,
) -> Result<K0Series, LambdaError> {
    if m.is_one() {
        return Ok(TruncSeries::linear(
            K0Element::one(),
            K0Element::one(),
            order,
        ));
    }
    match m.factors() {
        [(s, 1)] if s.degree == 1 => {
            let rank = pres
                .rank(&s.generator)
                .ok_or_else(|| LambdaError::PresentationMismatch(s.generator.to_string()))?;
            let mut coeffs = vec![K0Element::one()];
            for k in 1..=(rank as usize).min(order) {
                coeffs.push(K0Element::symbol(LambdaSymbol::new(
                    s.generator.to_string(),
                    k as u32,
                )));
            }
            Ok(TruncSeries::new(coeffs, order))
        }
        _ => Err(LambdaError::NonLinear(monomial_text(m))),
    }
}

/// `λ_t(x)` truncated at `t^order`.
pub fn lambda_series(
    pres: &RingPresentation,
    x: &K0Element,
    order: usize,
) -> Result<K0Series, LambdaError> {
    pres.check_element(x)?;
    let mut positive = TruncSeries::one(order);
    let mut negative = TruncSeries::one(order);
    for (m, n) in x.terms() {
        let base = atom_series(pres, m, order)?;
        let e = n.magnitude().to_u32().ok_or(LambdaError::Overflow)?;
        let pw = base.pow(e);
        if n.sign() == num_bigint::Sign::Minus {
            negative = negative.mul(&pw)?;
        } else {
            positive = positive.mul(&pw)?;
        }
    }
    Ok(positive.mul(&negative.inverse()?)?)
}

/// `γ_t(x) = λ_u(x)` with `u = t/(1-t)`.
pub fn gamma_series(
    pres: &RingPresentation,
    x: &K0Element,
    order: usize,
) -> Result<K0Series, LambdaError> {
    Ok(lambda_series(pres, x, order)?.gamma_substitute()?)
}

/// Rank of a monomial: product of the ranks `C(rank g, k)` of its symbols.
fn monomial_rank(pres: &RingPresentation, m: &K0Monomial) -> Result<BigInt, LambdaError> {
    let mut r = BigInt::one();
    for (s, e) in m.factors() {
        r *= num_traits::pow(pres.symbol_rank(s)?, *e as usize);
    }
    Ok(r)
}

/// The augmentation `e(Σ n_i [x_i]) = Σ n_i rk(x_i)`.
pub fn rank_e(pres: &RingPresentation, x: &K0Element) -> Result<i64, LambdaError> {
    pres.check_element(x)?;
    let mut total = BigInt::zero();
    for (m, n) in x.terms() {
        total += n * monomial_rank(pres, m)?;
    }
    total.to_i64().ok_or(LambdaError::Overflow)
}

/// `d(x) = e(x)·[1]`.
pub fn d_op(pres: &RingPresentation, x: &K0Element) -> Result<K0Element, LambdaError> {
    Ok(K0Element::from_int(rank_e(pres, x)?))
}

/// Ring map to ℤ sending `Λ^k g` to `C(rank g, k)`; on ℤ the λ-structure is
/// `λ^k(m) = C(m, k)`.
pub fn specialize_to_z(pres: &RingPresentation, x: &K0Element) -> Result<BigInt, LambdaError> {
    pres.check_element(x)?;
    let mut total = BigInt::zero();
    for (m, n) in x.terms() {
        total += n * monomial_rank(pres, m)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    fn pres() -> RingPresentation {
        RingPresentation::new(vec![
            Generator {
                name: "E".into(),
                rank: 2,
            },
            Generator {
                name: "F".into(),
                rank: 3,
            },
            Generator {
                name: "l".into(),
                rank: 1,
            },
        ])
        .unwrap()
    }

    fn sym(g: &str, k: u32) -> K0Element {
        K0Element::symbol(LambdaSymbol::new(g, k))
    }

    fn int(n: i64) -> K0Element {
        K0Element::from_int(n)
    }

    #[test]
    fn arithmetic_checks_presentation() {
        let p = pres();
        let x = int(2) * sym("E", 1) - sym("F", 1);
        assert_eq!(
            k0_arith(&p, &x, &sym("F", 1), K0Op::Add).unwrap(),
            int(2) * sym("E", 1)
        );
        assert_eq!(
            k0_arith(&p, &int(1), &sym("E", 1), K0Op::Mul).unwrap(),
            sym("E", 1)
        );
        assert!(matches!(
            k0_arith(&p, &x, &sym("G", 1), K0Op::Add),
            Err(LambdaError::PresentationMismatch(_))
        ));
    }

    #[test]
    fn lambda_series_examples() {
        let p = pres();
        // λ_t([1]) = 1 + t
        let s = lambda_series(&p, &int(1), 4).unwrap();
        assert_eq!(s, TruncSeries::linear(int(1), int(1), 4));
        // λ_t(E) = 1 + E t + Λ²E t², rank 2
        let s = lambda_series(&p, &sym("E", 1), 4).unwrap();
        assert_eq!(
            s.coeffs(),
            &[int(1), sym("E", 1), sym("E", 2), int(0), int(0)]
        );
        // λ_t(-E) = 1 - E t + (E² - Λ²E) t² (inverse of 1 + E t + Λ²E t²)
        let s = lambda_series(&p, &-sym("E", 1), 2).unwrap();
        assert_eq!(
            s.coeffs(),
            &[
                int(1),
                -sym("E", 1),
                sym("E", 1) * sym("E", 1) - sym("E", 2)
            ]
        );
    }

    #[test]
    fn lambda_rejects_products() {
        let p = pres();
        let x = sym("E", 1) * sym("F", 1);
        assert!(matches!(
            lambda_series(&p, &x, 3),
            Err(LambdaError::NonLinear(_))
        ));
        assert!(matches!(
            lambda_series(&p, &sym("E", 2), 3),
            Err(LambdaError::NonLinear(_))
        ));
    }

    #[test]
    fn gamma_series_examples() {
        let p = pres();
        let g = gamma_series(&p, &int(1), 6).unwrap();
        assert!(g.coeffs().iter().all(|c| *c == int(1)));
        let g = gamma_series(&p, &sym("E", 1), 3).unwrap();
        assert_eq!(g.coeff(1), sym("E", 1));
        assert_eq!(g.coeff(2), sym("E", 1) + sym("E", 2));
    }

    #[test]
    fn rank_and_d() {
        let p = pres();
        assert_eq!(rank_e(&p, &int(1)).unwrap(), 1);
        let x = int(2) * sym("E", 1) - sym("F", 1);
        assert_eq!(rank_e(&p, &x).unwrap(), 1);
        assert_eq!(d_op(&p, &x).unwrap(), int(1));
        assert_eq!(d_op(&p, &sym("E", 1)).unwrap(), int(2));
        assert_eq!(d_op(&p, &int(1)).unwrap(), int(1));
        let p3 = RingPresentation::new(vec![Generator {
            name: "E".into(),
            rank: 3,
        }])
        .unwrap();
        assert_eq!(rank_e(&p3, &sym("E", 2)).unwrap(), 3);
    }

    #[test]
    fn specialization_examples() {
        let p = pres();
        assert_eq!(specialize_to_z(&p, &sym("E", 1)).unwrap(), BigInt::from(2));
        assert_eq!(specialize_to_z(&p, &sym("E", 2)).unwrap(), BigInt::from(1));
        let x = int(1) - sym("E", 1) + sym("E", 2);
        assert_eq!(specialize_to_z(&p, &x).unwrap(), BigInt::from(0));
    }

    #[test]
    fn specialization_intertwines_lambda() {
        let p = pres();
        let x = int(2) * sym("E", 1) + sym("F", 1) + sym("l", 1) + int(1);
        let e = rank_e(&p, &x).unwrap() as u64;
        let s = lambda_series(&p, &x, 12).unwrap();
        for k in 0..=12 {
            assert_eq!(
                specialize_to_z(&p, &s.coeff(k)).unwrap(),
                binomial(e, k as u64)
            );
        }
    }

    #[test]
    fn rank_is_multiplicative() {
        let p = pres();
        let x = int(2) * sym("E", 1) - sym("F", 2);
        let y = sym("F", 1) + int(3) - sym("l", 1);
        let xy = k0_arith(&p, &x, &y, K0Op::Mul).unwrap();
        assert_eq!(
            rank_e(&p, &xy).unwrap(),
            rank_e(&p, &x).unwrap() * rank_e(&p, &y).unwrap()
        );
    }
}
