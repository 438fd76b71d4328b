use super::factor::factor;
use super::poly::FpPoly;
use super::ratfun::RatFun;

/// One term `numerator / factor^multiplicity` with `deg numerator < deg factor`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractionTerm {
    pub factor: FpPoly,
    pub multiplicity: u32,
    pub numerator: FpPoly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFractions {
    pub polynomial: FpPoly,
    /// Sorted by factor, then multiplicity ascending; zero numerators omitted.
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractions {
    pub fn recombine(&self) -> RatFun {
        let mut acc = RatFun::from_poly(self.polynomial.clone());
        for term in &self.terms {
            let piece = RatFun::new(
                term.numerator.clone(),
                term.factor.pow(term.multiplicity as u64),
            )
            .expect("irreducible factor is nonzero");
            acc = acc + piece;
        }
        acc
    }
}

/// Full partial fraction decomposition over the monic irreducible factors of
/// the denominator.
pub fn partial_fractions(f: &RatFun) -> PartialFractions {
    let (polynomial, proper) = f.num().div_rem(f.den());
    let mut terms = Vec::new();
    if !proper.is_zero() {
        let den = f.den();
        for (q, m) in factor(den) {
            let block = q.pow(m as u64);
            let cofactor = den.div_exact(&block);
            let inv = cofactor
                .inverse_mod(&block)
                .expect("coprime prime-power blocks");
            // proper/den restricted to the q-block is local/q^m.
            let mut local = proper.mul(&inv).rem(&block);
            // q-adic digits: local = Σ_j d_j q^j, term d_j / q^{m-j}.
            let mut digits = Vec::with_capacity(m as usize);
            for _ in 0..m {
                let (quo, digit) = local.div_rem(&q);
                digits.push(digit);
                local = quo;
            }
            debug_assert!(local.is_zero());
            for (j, digit) in digits.into_iter().enumerate().rev() {
                if !digit.is_zero() {
                    terms.push(PartialFractionTerm {
                        factor: q.clone(),
                        multiplicity: m - j as u32,
                        numerator: digit,
                    });
                }
            }
        }
    }
    terms.sort_by(|a, b| {
        a.factor
            .cmp(&b.factor)
            .then(a.multiplicity.cmp(&b.multiplicity))
    });
    PartialFractions { polynomial, terms }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[i64], p: u32) -> RatFun {
        RatFun::new(FpPoly::from_i64s(num, p), FpPoly::from_i64s(den, p)).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        // p=5: 1/(t^2 - t) = -1/t + 1/(t-1)
        let p = 5;
        let pf = partial_fractions(&rf(&[1], &[0, -1, 1], p));
        assert!(pf.polynomial.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0].factor, FpPoly::from_i64s(&[0, 1], p));
        assert_eq!(pf.terms[0].numerator, FpPoly::constant(-1, p));
        assert_eq!(pf.terms[1].factor, FpPoly::from_i64s(&[-1, 1], p));
        assert_eq!(pf.terms[1].numerator, FpPoly::one(p));
        // recombination oracle
        let back = rf(&[-1], &[0, 1], p) + rf(&[1], &[-1, 1], p);
        assert_eq!(back, rf(&[1], &[0, -1, 1], p));
        assert_eq!(pf.recombine(), back);
    }

    #[test]
    fn polynomial_only() {
        let pf = partial_fractions(&rf(&[0, 0, 1], &[1], 7));
        assert_eq!(pf.polynomial, FpPoly::from_i64s(&[0, 0, 1], 7));
        assert!(pf.terms.is_empty());
    }

    #[test]
    fn double_pole() {
        // p=3: (2t+1)/t^2 = 2/t + 1/t^2
        let p = 3;
        let pf = partial_fractions(&rf(&[1, 2], &[0, 0, 1], p));
        let mults: Vec<u32> = pf.terms.iter().map(|t| t.multiplicity).collect();
        assert_eq!(mults, vec![1, 2]);
        assert!(pf.terms.iter().all(|t| t.factor == FpPoly::t(p)));
        assert_eq!(pf.terms[0].numerator, FpPoly::constant(2, p));
        assert_eq!(pf.terms[1].numerator, FpPoly::one(p));
        assert_eq!(pf.recombine(), rf(&[1, 2], &[0, 0, 1], p));
    }

    #[test]
    fn irreducible_quadratic_factor() {
        // p=3: t^2+1 irreducible; (t^3 + t + 2)/((t^2+1)^2 t)
        let p = 3;
        let f = rf(&[2, 1, 0, 1], &[0, 1, 0, 2, 0, 1], p);
        let pf = partial_fractions(&f);
        assert_eq!(pf.recombine(), f);
        for term in &pf.terms {
            assert!(term.numerator.degree() < term.factor.degree());
        }
    }
}
