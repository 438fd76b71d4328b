//! Seeded random generators for the property suites.
//!
//! Every trial derives its own generator from `seed + trial`, so suites can
//! run trials in any order or in parallel and still produce identical reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeMap;

use crate::exact_arith::{FpPoly, RatFun};
use crate::lambda_ring::{Generator, K0Element, LambdaSymbol, RingMorphism, RingPresentation};
use crate::matrix::RatMatrix;

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

pub fn random_poly<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> FpPoly {
    let deg = rng.random_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| rng.random_range(0..p)).collect();
    FpPoly::from_coeffs(coeffs, p)
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> FpPoly {
    loop {
        let f = random_poly(rng, p, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random `num/den` with both degrees at most `max_deg`.
pub fn random_ratfun<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> RatFun {
    let num = random_poly(rng, p, max_deg);
    let den = random_nonzero_poly(rng, p, max_deg);
    RatFun::new(num, den).expect("nonzero denominator")
}

pub fn random_nonzero_ratfun<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> RatFun {
    loop {
        let f = random_ratfun(rng, p, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random element of `F_p(t^p)`.
pub fn random_pth_power<R: Rng>(rng: &mut R, p: u32, max_deg: usize) -> RatFun {
    random_ratfun(rng, p, max_deg).frobenius()
}

/// Square matrix with random entries of height at most `max_deg`.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    p: u32,
    rows: usize,
    cols: usize,
    max_deg: usize,
) -> RatMatrix {
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| random_ratfun(rng, p, max_deg)).collect())
        .collect();
    RatMatrix::from_rows(p, entries).expect("consistent shape")
}

/// Random invertible matrix with polynomial entries of degree at most `max_deg`.
pub fn random_invertible_poly_matrix<R: Rng>(
    rng: &mut R,
    p: u32,
    n: usize,
    max_deg: usize,
) -> RatMatrix {
    loop {
        let entries = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| RatFun::from_poly(random_poly(rng, p, max_deg)))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(p, entries).expect("consistent shape");
        if m.det().is_ok_and(|d| !d.is_zero()) {
            return m;
        }
    }
}

const NAMES: [&str; 6] = ["E", "F", "G", "H", "L", "M"];

/// `1..=max_gens` generators named `E, F, G, …` with ranks in `1..=max_rank`.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    max_gens: usize,
    max_rank: u32,
) -> RingPresentation {
    let n = rng.random_range(1..=max_gens.min(NAMES.len()));
    RingPresentation::new(
        NAMES[..n]
            .iter()
            .map(|name| Generator {
                name: name.to_string(),
                rank: rng.random_range(1..=max_rank),
            })
            .collect(),
    )
    .expect("distinct valid names")
}

/// `n_0 [1] + Σ n_g [g]` with `|n| <= max_coeff`.
pub fn random_linear_element<R: Rng>(
    rng: &mut R,
    pres: &RingPresentation,
    max_coeff: i64,
) -> K0Element {
    let mut x = K0Element::from_int(rng.random_range(-max_coeff..=max_coeff));
    for g in pres.generators() {
        let n = rng.random_range(-max_coeff..=max_coeff);
        x = x + K0Element::from_int(n) * K0Element::symbol(LambdaSymbol::new(g.name.clone(), 1));
    }
    x
}

/// A nonzero effective combination of `[1]` and generators of rank at most
/// `max_rank`.
pub fn random_effective_element<R: Rng>(
    rng: &mut R,
    pres: &RingPresentation,
    max_rank: u32,
) -> K0Element {
    let mut atoms: Vec<(K0Element, u32)> = vec![(K0Element::from_int(1), 1)];
    for g in pres.generators() {
        atoms.push((
            K0Element::symbol(LambdaSymbol::new(g.name.clone(), 1)),
            g.rank,
        ));
    }
    let target = rng.random_range(1..=max_rank);
    let mut x = K0Element::from_int(0);
    let mut rank = 0;
    loop {
        let fitting: Vec<&(K0Element, u32)> =
            atoms.iter().filter(|(_, r)| rank + r <= target).collect();
        if fitting.is_empty() {
            return x;
        }
        let (atom, r) = fitting[rng.random_range(0..fitting.len())];
        x = x + atom.clone();
        rank += r;
        if rank == target || rng.random_range(0..4) == 0 {
            return x;
        }
    }
}

/// Effective element of `pres` of exact rank `rank`.
fn effective_of_rank<R: Rng>(rng: &mut R, pres: &RingPresentation, rank: u32) -> K0Element {
    let mut x = K0Element::from_int(0);
    let mut left = rank;
    while left > 0 {
        let mut options = vec![(K0Element::from_int(1), 1)];
        for g in pres.generators().iter().filter(|g| g.rank <= left) {
            options.push((
                K0Element::symbol(LambdaSymbol::new(g.name.clone(), 1)),
                g.rank,
            ));
        }
        let (atom, r) = options.swap_remove(rng.random_range(0..options.len()));
        x = x + atom;
        left -= r;
    }
    x
}

/// Rank-preserving morphism sending each generator to an effective
/// combination of target generators and `[1]`.
pub fn random_morphism<R: Rng>(
    rng: &mut R,
    source: &RingPresentation,
    target: &RingPresentation,
) -> RingMorphism {
    let images: BTreeMap<String, K0Element> = source
        .generators()
        .iter()
        .map(|g| (g.name.clone(), effective_of_rank(rng, target, g.rank)))
        .collect();
    RingMorphism::new(source.clone(), target.clone(), images).expect("valid images")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_reproducible() {
        let a = random_ratfun(&mut trial_rng(7, 3), 5, 4);
        let b = random_ratfun(&mut trial_rng(7, 3), 5, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn k0_samplers() {
        use crate::lambda_ring::rank_e;
        let mut rng = trial_rng(2, 0);
        for _ in 0..20 {
            let pres = random_presentation(&mut rng, 3, 5);
            let x = random_effective_element(&mut rng, &pres, 8);
            assert!(x.is_effective());
            let e = rank_e(&pres, &x).unwrap();
            assert!((1..=8).contains(&e));
            let target = random_presentation(&mut rng, 3, 5);
            let f = random_morphism(&mut rng, &pres, &target);
            assert_eq!(f.source(), &pres);
        }
    }

    #[test]
    fn pth_powers_have_roots() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..20 {
            assert!(random_pth_power(&mut rng, 3, 3).pth_root().is_some());
        }
    }
}
