//! Exact coefficient arithmetic: F_p, F_p[t], F_p(t), and sparse
//! multivariate polynomials with arbitrary-precision integer coefficients.

mod factor;
mod fp;
mod mpoly;
mod partial;
mod poly;
mod ratfun;

use thiserror::Error;

pub use factor::{factor, is_irreducible, squarefree};
pub use fp::{check_prime, is_prime, FpElem, MAX_PRIME};
pub use mpoly::{MPoly, Monomial};
pub use partial::{partial_fractions, PartialFractionTerm, PartialFractions};
pub use poly::FpPoly;
pub use ratfun::RatFun;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("unsupported characteristic {0}: expected a prime between 2 and 97")]
    BadPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic mismatch: {0} vs {1}")]
    Mismatch(u32, u32),
}

/// Leibniz-rule derivative `d/dt`.
pub fn ratfun_derivative(f: &RatFun) -> RatFun {
    f.derivative()
}

/// `g` with `g^p = f`, when `f ∈ F_p(t^p)`.
pub fn ratfun_pth_root(f: &RatFun) -> Option<RatFun> {
    f.pth_root()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_ratfun(p: u32, max_deg: usize) -> impl Strategy<Value = RatFun> {
        (
            prop::collection::vec(0..p, 0..=max_deg + 1),
            prop::collection::vec(0..p, 1..=max_deg + 1),
        )
            .prop_map(move |(n, d)| {
                let den = FpPoly::from_coeffs(d, p);
                let den = if den.is_zero() { FpPoly::one(p) } else { den };
                RatFun::new(FpPoly::from_coeffs(n, p), den).unwrap()
            })
    }

    fn arb_prime() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![2u32, 3, 5, 7, 13])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn field_axioms((a, b, c) in arb_prime().prop_flat_map(|p| (arb_ratfun(p, 3), arb_ratfun(p, 3), arb_ratfun(p, 3)))) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, RatFun::zero(a.modulus()));
            if let Some(inv) = a.inverse() {
                prop_assert!((&a * &inv).is_one());
            }
        }

        #[test]
        fn leibniz((f, g) in arb_prime().prop_flat_map(|p| (arb_ratfun(p, 4), arb_ratfun(p, 4)))) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f * &g.derivative()) + &(&g * &f.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pth_root_of_pth_power(f in arb_prime().prop_flat_map(|p| arb_ratfun(p, 4))) {
            let p = f.modulus() as i64;
            let fp = f.pow(p).unwrap();
            prop_assert_eq!(fp.clone(), f.frobenius());
            prop_assert_eq!(ratfun_pth_root(&fp), Some(f));
        }

        #[test]
        fn partial_fractions_recombine(f in arb_prime().prop_flat_map(|p| arb_ratfun(p, 6))) {
            let pf = partial_fractions(&f);
            prop_assert_eq!(pf.recombine(), f);
            for w in pf.terms.windows(2) {
                prop_assert!(w[0].factor < w[1].factor || (w[0].factor == w[1].factor && w[0].multiplicity < w[1].multiplicity));
            }
            for term in &pf.terms {
                prop_assert!(is_irreducible(&term.factor));
            }
        }
    }
}
