//! The skew polynomial ring `K{T}` with `T a = a T + ∂(a)`.
//!
//! Polynomials are written `Σ c_i T^i` with coefficients on the left. A
//! left module `K{T}/K{T}P` with `P` monic of degree `d` has basis
//! `1, T, …, T^{d-1}`, and `∂` acts on it as left multiplication by `T`.

use std::fmt;

use thiserror::Error;

use crate::connections::{gauge_transform, p_curvature_matrix, ConnError, MatrixConnection};
use crate::exact_arith::RatFun;
use crate::matrix::{RatMatrix, RatVector};
use crate::sample::{random_ratfun, trial_rng};

pub const DEFAULT_CYCLIC_ATTEMPTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OreError {
    #[error("characteristic mismatch: {0} vs {1}")]
    Mismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("skew polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("no cyclic vector found in {attempts} attempts")]
    NoCyclicVector { attempts: usize },
    #[error(transparent)]
    Conn(#[from] ConnError),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewPoly {
    p: u32,
    coeffs: Vec<RatFun>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<RatFun>, p: u32) -> Self {
        while coeffs.last().is_some_and(RatFun::is_zero) {
            coeffs.pop();
        }
        SkewPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        SkewPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(RatFun::one(p))
    }

    pub fn constant(c: RatFun) -> Self {
        let p = c.modulus();
        Self::new(vec![c], p)
    }

    /// `c T^k`.
    pub fn monomial(c: RatFun, k: usize) -> Self {
        let p = c.modulus();
        let mut coeffs = vec![RatFun::zero(p); k];
        coeffs.push(c);
        Self::new(coeffs, p)
    }

    /// The variable `T`.
    pub fn var(p: u32) -> Self {
        Self::monomial(RatFun::one(p), 1)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFun {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFun::zero(self.p))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> RatFun {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| RatFun::zero(self.p))
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
            self.p,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect(), self.p)
    }

    /// `a · self`.
    pub fn scale_left(&self, a: &RatFun) -> Self {
        Self::new(self.coeffs.iter().map(|c| a * c).collect(), self.p)
    }

    /// `P(∇)v = Σ c_i ∇^i v`.
    pub fn apply(&self, c: &MatrixConnection, v: &[RatFun]) -> RatVector {
        let mut acc = vec![RatFun::zero(self.p); v.len()];
        let mut power = v.to_vec();
        for (i, ci) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = c.apply(&power);
            }
            for (a, x) in acc.iter_mut().zip(&power) {
                *a = &*a + &(ci * x);
            }
        }
        acc
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| term_text(c, i))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Single-term coefficients print without parentheses.
fn is_atom(s: &str) -> bool {
    !s.contains(['+', '/', '('])
}

fn term_text(c: &RatFun, i: usize) -> String {
    let power = match i {
        0 => String::new(),
        1 => "T".to_string(),
        _ => format!("T^{i}"),
    };
    let coeff = c.to_string();
    if i == 0 {
        return if is_atom(&coeff) {
            coeff
        } else {
            format!("({coeff})")
        };
    }
    if c.is_one() {
        power
    } else if is_atom(&coeff) {
        format!("{coeff}*{power}")
    } else {
        format!("({coeff})*{power}")
    }
}

fn check_same(a: u32, b: u32) -> Result<(), OreError> {
    if a == b {
        Ok(())
    } else {
        Err(OreError::Mismatch(a, b))
    }
}

/// Row `i` of Pascal's triangle mod `p`.
fn binomial_row(i: usize, p: u32) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..i {
        let mut next = vec![1i64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = (row[k - 1] + row[k]) % p as i64;
        }
        row = next;
    }
    row
}

/// Product using `T^i b = Σ_k C(i,k) ∂^k(b) T^{i-k}`.
pub fn ore_mul(a: &SkewPoly, b: &SkewPoly) -> Result<SkewPoly, OreError> {
    check_same(a.p, b.p)?;
    let p = a.p;
    if a.is_zero() || b.is_zero() {
        return Ok(SkewPoly::zero(p));
    }
    let mut out = vec![RatFun::zero(p); a.coeffs.len() + b.coeffs.len() - 1];
    for (j, bj) in b.coeffs.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        let max_i = a.coeffs.len() - 1;
        let derivs: Vec<RatFun> = (0..=max_i)
            .scan(bj.clone(), |d, _| {
                let cur = d.clone();
                *d = d.derivative();
                Some(cur)
            })
            .collect();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, c) in binomial_row(i, p).into_iter().enumerate() {
                if c == 0 || derivs[k].is_zero() {
                    continue;
                }
                let term = &(ai * &derivs[k]) * &RatFun::from_int(c, p);
                let idx = i - k + j;
                out[idx] = &out[idx] + &term;
            }
        }
    }
    Ok(SkewPoly::new(out, p))
}

/// `P = Q·D + R` with `deg R < deg D`.
pub fn ore_right_divide(pp: &SkewPoly, d: &SkewPoly) -> Result<(SkewPoly, SkewPoly), OreError> {
    check_same(pp.p, d.p)?;
    let dd = d.degree().ok_or(OreError::DivisionByZero)?;
    let lead_inv = d.lead().inverse().ok_or(OreError::DivisionByZero)?;
    let mut q = SkewPoly::zero(pp.p);
    let mut r = pp.clone();
    while let Some(rd) = r.degree().filter(|&rd| rd >= dd) {
        let step = SkewPoly::monomial(&r.lead() * &lead_inv, rd - dd);
        r = r.sub(&ore_mul(&step, d)?);
        q = q.add(&step);
    }
    Ok((q, r))
}

/// The connection on `K{T}/K{T}P`: companion matrix with ones below the
/// diagonal and last column `-c_0, …, -c_{d-1}`.
pub fn companion_connection(pp: &SkewPoly) -> Result<MatrixConnection, OreError> {
    let d = pp
        .degree()
        .filter(|&d| d >= 1 && pp.is_monic())
        .ok_or(OreError::NotMonic)?;
    let p = pp.p;
    let mut a = RatMatrix::zeros(p, d, d);
    for i in 1..d {
        a.set(i, i - 1, RatFun::one(p));
    }
    for i in 0..d {
        a.set(i, d - 1, -&pp.coeff(i));
    }
    Ok(MatrixConnection::new(a)?)
}

pub fn ore_pcurvature(pp: &SkewPoly) -> Result<RatMatrix, OreError> {
    Ok(p_curvature_matrix(&companion_connection(pp)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVector {
    pub v: RatVector,
    /// Monic `P` of degree `n` with `P(∇)v = 0`.
    pub poly: SkewPoly,
    /// Number of candidates tried, including the successful one.
    pub attempts: usize,
}

/// Columns `v, ∇v, …, ∇^{n-1}v`.
pub fn cyclic_basis(c: &MatrixConnection, v: &[RatFun]) -> RatMatrix {
    let mut cols = vec![v.to_vec()];
    for _ in 1..c.dim() {
        let next = c.apply(cols.last().expect("nonempty"));
        cols.push(next);
    }
    RatMatrix::from_columns(c.modulus(), c.dim(), &cols)
}

fn try_vector(c: &MatrixConnection, v: &[RatFun]) -> Option<SkewPoly> {
    let g = cyclic_basis(c, v);
    let n = c.dim();
    let last = c.apply(&g.column(n - 1));
    let coords = g.solve(&last).ok()?;
    let mut coeffs: Vec<RatFun> = coords.iter().map(|x| -x).collect();
    coeffs.push(RatFun::one(c.modulus()));
    let poly = SkewPoly::new(coeffs, c.modulus());
    poly.apply(c, v).iter().all(RatFun::is_zero).then_some(poly)
}

/// Candidate stream: standard basis vectors, then vectors with entries in
/// `{0, 1, t, t^2}`, then seeded random vectors.
fn candidates(p: u32, n: usize, seed: u64) -> impl Iterator<Item = RatVector> {
    let unit = move |j: usize| -> RatVector {
        (0..n)
            .map(|i| {
                if i == j {
                    RatFun::one(p)
                } else {
                    RatFun::zero(p)
                }
            })
            .collect()
    };
    let small = [
        RatFun::zero(p),
        RatFun::one(p),
        RatFun::t(p),
        &RatFun::t(p) * &RatFun::t(p),
    ];
    let total = 4usize.checked_pow(n as u32).unwrap_or(usize::MAX);
    let low_degree = (1..total)
        .map(move |mut code| {
            (0..n)
                .map(|_| {
                    let x = small[code % 4].clone();
                    code /= 4;
                    x
                })
                .collect::<RatVector>()
        })
        .filter(move |v| {
            v.iter().filter(|x| !x.is_zero()).count() > 1
                || v.iter().any(|x| !x.is_zero() && !x.is_one())
        });
    let random = (0u64..).map(move |k| {
        let mut rng = trial_rng(seed, k);
        (0..n)
            .map(|_| random_ratfun(&mut rng, p, 2))
            .collect::<RatVector>()
    });
    (0..n).map(unit).chain(low_degree).chain(random)
}

/// Searches at most `max_attempts` candidates for a cyclic vector.
pub fn cyclic_vector(
    c: &MatrixConnection,
    seed: u64,
    max_attempts: usize,
) -> Result<CyclicVector, OreError> {
    for (k, v) in candidates(c.modulus(), c.dim(), seed)
        .take(max_attempts)
        .enumerate()
    {
        if let Some(poly) = try_vector(c, &v) {
            return Ok(CyclicVector {
                v,
                poly,
                attempts: k + 1,
            });
        }
    }
    Err(OreError::NoCyclicVector {
        attempts: max_attempts,
    })
}

/// Whether `G = cyclic_basis(v)` carries `c` to the companion connection of
/// the found polynomial.
pub fn cyclic_round_trip_holds(
    c: &MatrixConnection,
    found: &CyclicVector,
) -> Result<bool, OreError> {
    let g = cyclic_basis(c, &found.v);
    Ok(gauge_transform(c, &g)? == companion_connection(&found.poly)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::{omega_connection_apply, p_curvature_rank1, Derivation, OneForm};
    use crate::exact_arith::FpPoly;
    use crate::sample::TrialRng;

    fn rf(num: &[i64], den: &[i64], p: u32) -> RatFun {
        RatFun::new(FpPoly::from_i64s(num, p), FpPoly::from_i64s(den, p)).unwrap()
    }

    fn random_skew(rng: &mut TrialRng, p: u32, deg: usize) -> SkewPoly {
        SkewPoly::new((0..=deg).map(|_| random_ratfun(rng, p, 2)).collect(), p)
    }

    fn random_monic(rng: &mut TrialRng, p: u32, deg: usize) -> SkewPoly {
        let mut coeffs: Vec<RatFun> = (0..deg).map(|_| random_ratfun(rng, p, 2)).collect();
        coeffs.push(RatFun::one(p));
        SkewPoly::new(coeffs, p)
    }

    #[test]
    fn commutation_rule() {
        let p = 5;
        let t = SkewPoly::constant(RatFun::t(p));
        let prod = ore_mul(&SkewPoly::var(p), &t).unwrap();
        assert_eq!(prod, SkewPoly::new(vec![RatFun::one(p), RatFun::t(p)], p));
        assert_eq!(prod.to_string(), "t*T + 1");
    }

    #[test]
    fn difference_of_squares() {
        let p = 7;
        let a = rf(&[1, 2], &[3, 0, 1], p);
        let plus = SkewPoly::new(vec![a.clone(), RatFun::one(p)], p);
        let minus = SkewPoly::new(vec![-&a, RatFun::one(p)], p);
        let expected = SkewPoly::new(
            vec![
                -&(&a.derivative() + &(&a * &a)),
                RatFun::zero(p),
                RatFun::one(p),
            ],
            p,
        );
        assert_eq!(ore_mul(&plus, &minus).unwrap(), expected);
    }

    #[test]
    fn ring_laws() {
        for p in [2u32, 3, 5] {
            let mut rng = trial_rng(1, p as u64);
            for _ in 0..10 {
                let (a, b, c) = (
                    random_skew(&mut rng, p, 2),
                    random_skew(&mut rng, p, 2),
                    random_skew(&mut rng, p, 1),
                );
                let ab_c = ore_mul(&ore_mul(&a, &b).unwrap(), &c).unwrap();
                let a_bc = ore_mul(&a, &ore_mul(&b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                assert_eq!(ore_mul(&a, &SkewPoly::one(p)).unwrap(), a);
                let ab = ore_mul(&a, &b).unwrap();
                if !a.is_zero() && !b.is_zero() {
                    assert_eq!(
                        ab.degree().unwrap(),
                        a.degree().unwrap() + b.degree().unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn division_examples() {
        let p = 5;
        let a = rf(&[0, 0, 1], &[1, 1], p);
        let t2 = SkewPoly::monomial(RatFun::one(p), 2);
        let d = SkewPoly::new(vec![-&a, RatFun::one(p)], p);
        let (q, r) = ore_right_divide(&t2, &d).unwrap();
        assert_eq!(q, SkewPoly::new(vec![a.clone(), RatFun::one(p)], p));
        assert_eq!(r, SkewPoly::constant(&(&a * &a) + &a.derivative()));

        let mut rng = trial_rng(2, 0);
        let pp = random_skew(&mut rng, p, 3);
        let (q, r) = ore_right_divide(&pp, &pp).unwrap();
        assert_eq!((q, r), (SkewPoly::one(p), SkewPoly::zero(p)));
        let small = random_skew(&mut rng, p, 1);
        let (q, r) = ore_right_divide(&small, &pp).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, small);
        assert_eq!(
            ore_right_divide(&pp, &SkewPoly::zero(p)),
            Err(OreError::DivisionByZero)
        );
    }

    #[test]
    fn division_reconstructs() {
        for p in [2u32, 3, 7] {
            let mut rng = trial_rng(3, p as u64);
            for _ in 0..10 {
                let a = random_skew(&mut rng, p, 3);
                let d = random_skew(&mut rng, p, 2);
                if d.is_zero() {
                    continue;
                }
                let (q, r) = ore_right_divide(&a, &d).unwrap();
                assert_eq!(ore_mul(&q, &d).unwrap().add(&r), a);
                assert!(r.degree().map_or(true, |rd| rd < d.degree().unwrap()));
            }
        }
    }

    #[test]
    fn companion_examples() {
        let p = 3;
        let theta = companion_connection(&SkewPoly::var(p)).unwrap();
        assert_eq!(theta, MatrixConnection::trivial(p, 1));
        let h = rf(&[1, 1], &[0, 1], p);
        let c = companion_connection(&SkewPoly::new(vec![-&h, RatFun::one(p)], p)).unwrap();
        assert_eq!(c, MatrixConnection::rank1(h.clone()));
        let x = rf(&[2, 0, 1], &[1, 1], p);
        assert_eq!(
            c.apply(&[x.clone()])[0],
            omega_connection_apply(&OneForm(h), &Derivation::d_dt(p), &x)
        );
        let b = RatFun::t(p);
        let c = companion_connection(&SkewPoly::new(
            vec![-&b, RatFun::zero(p), RatFun::one(p)],
            p,
        ))
        .unwrap();
        let expected = RatMatrix::from_rows(
            p,
            vec![
                vec![RatFun::zero(p), b.clone()],
                vec![RatFun::one(p), RatFun::zero(p)],
            ],
        )
        .unwrap();
        assert_eq!(c.matrix(), &expected);
        assert_eq!(
            companion_connection(&SkewPoly::monomial(RatFun::from_int(2, p), 1)),
            Err(OreError::NotMonic)
        );
    }

    #[test]
    fn cyclic_examples() {
        let p = 5;
        let theta2 = MatrixConnection::trivial(p, 2);
        let v = vec![RatFun::one(p), RatFun::t(p)];
        assert_eq!(
            try_vector(&theta2, &v),
            Some(SkewPoly::monomial(RatFun::one(p), 2))
        );
        let found = cyclic_vector(&theta2, 0, DEFAULT_CYCLIC_ATTEMPTS).unwrap();
        assert_eq!(found.poly, SkewPoly::monomial(RatFun::one(p), 2));
        assert!(cyclic_round_trip_holds(&theta2, &found).unwrap());

        let h = rf(&[1], &[1, 1], p);
        let found = cyclic_vector(&MatrixConnection::rank1(h.clone()), 0, 4).unwrap();
        assert_eq!(found.v, vec![RatFun::one(p)]);
        assert_eq!(found.poly, SkewPoly::new(vec![-&h, RatFun::one(p)], p));
    }

    #[test]
    fn trivial_connection_above_p_is_not_cyclic() {
        // ∇^2 = 0 on θ^3 when p = 2, so no v, ∇v, ∇²v can be independent.
        let theta3 = MatrixConnection::trivial(2, 3);
        assert_eq!(
            cyclic_vector(&theta3, 1, 20),
            Err(OreError::NoCyclicVector { attempts: 20 })
        );
    }

    #[test]
    fn companion_round_trip() {
        for p in [2u32, 3, 5] {
            let mut rng = trial_rng(4, p as u64);
            for deg in 1..=3 {
                let pp = random_monic(&mut rng, p, deg);
                let c = companion_connection(&pp).unwrap();
                let found = cyclic_vector(&c, 9, DEFAULT_CYCLIC_ATTEMPTS).unwrap();
                assert_eq!(found.attempts, 1);
                assert_eq!(found.poly, pp);
                assert!(cyclic_round_trip_holds(&c, &found).unwrap());
            }
        }
    }

    #[test]
    fn pcurvature_examples() {
        let p = 3;
        assert!(ore_pcurvature(&SkewPoly::var(p)).unwrap().is_zero());
        let inv_t = rf(&[1], &[0, 1], p);
        let pp = SkewPoly::new(vec![-&inv_t, RatFun::one(p)], p);
        assert!(ore_pcurvature(&pp).unwrap().is_zero());
        let pp = SkewPoly::new(vec![-RatFun::t(p), RatFun::one(p)], p);
        let t3 = RatFun::from_poly(FpPoly::monomial(1, 3, p));
        assert_eq!(ore_pcurvature(&pp).unwrap(), RatMatrix::scalar(-t3));
        for p in [2u32, 5] {
            let mut rng = trial_rng(5, p as u64);
            for _ in 0..5 {
                let h = random_ratfun(&mut rng, p, 3);
                let pp = SkewPoly::new(vec![-&h, RatFun::one(p)], p);
                let expected = p_curvature_rank1(&OneForm(h), &Derivation::d_dt(p)).unwrap();
                assert_eq!(ore_pcurvature(&pp).unwrap(), RatMatrix::scalar(expected));
            }
        }
    }

    #[test]
    fn display() {
        let p = 5;
        let pp = SkewPoly::new(
            vec![rf(&[1, 1], &[1], p), rf(&[1], &[0, 1], p), RatFun::one(p)],
            p,
        );
        assert_eq!(pp.to_string(), "T^2 + (1/t)*T + (t+1)");
        let pp = SkewPoly::new(vec![-RatFun::t(p), RatFun::zero(p), RatFun::one(p)], p);
        assert_eq!(pp.to_string(), "T^2 + 4*t");
        assert_eq!(SkewPoly::zero(p).to_string(), "0");
    }
}
