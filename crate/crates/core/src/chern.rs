//! Virtual Chern and Segre classes in a presented K₀.
//!
//! `c_l(x) = (-1)^l γ^l(x - d(x))` and `s_t(x) = c_t(x)^{-1}`. For a single
//! generator the closed form `Σ_j (-1)^j C(n-j, i-j) [Λ^j E]` serves as an
//! independent check.

use num_traits::Zero;

use crate::lambda_ring::{
    d_op, gamma_series, rank_e, K0Element, K0Series, LambdaError, RingPresentation,
};
use crate::scalar::binomial;

/// Default truncation order `e(x) + 2` (at least 2) used when no order is given.
pub fn default_order(pres: &RingPresentation, x: &K0Element) -> Result<usize, LambdaError> {
    Ok((rank_e(pres, x)?.max(0) as usize) + 2)
}

/// Chern power series `c_t(x)` to order `order`.
pub fn chern_series(
    pres: &RingPresentation,
    x: &K0Element,
    order: usize,
) -> Result<K0Series, LambdaError> {
    let reduced = x.clone() - d_op(pres, x)?;
    let g = gamma_series(pres, &reduced, order)?;
    let order = g.order();
    let coeffs = g
        .into_coeffs()
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c })
        .collect();
    Ok(K0Series::new(coeffs, order))
}

/// The `l`-th virtual Chern class.
pub fn chern_class(
    pres: &RingPresentation,
    x: &K0Element,
    l: usize,
) -> Result<K0Element, LambdaError> {
    Ok(chern_series(pres, x, l)?.coeff(l))
}

/// Segre series `s_t(x) = c_t(x)^{-1}`.
pub fn segre_series(
    pres: &RingPresentation,
    x: &K0Element,
    order: usize,
) -> Result<K0Series, LambdaError> {
    Ok(chern_series(pres, x, order)?.inverse()?)
}

pub fn segre_class(
    pres: &RingPresentation,
    x: &K0Element,
    k: usize,
) -> Result<K0Element, LambdaError> {
    Ok(segre_series(pres, x, k)?.coeff(k))
}

/// `c_i(E) = Σ_{j=0}^{i} (-1)^j C(n-j, i-j) [Λ^j E]` for a generator of rank `n`.
pub fn karoubi_closed_form(
    pres: &RingPresentation,
    generator: &str,
    i: u32,
) -> Result<K0Element, LambdaError> {
    let n = pres
        .rank(generator)
        .ok_or_else(|| LambdaError::UnknownGenerator(generator.to_string()))?;
    if i > n {
        return Err(LambdaError::BadDegree {
            generator: generator.to_string(),
            degree: i,
            rank: n,
        });
    }
    let mut out = K0Element::zero();
    for j in 0..=i {
        let c = binomial((n - j) as u64, (i - j) as u64);
        let c = if j % 2 == 1 { -c } else { c };
        out = out + pres.lambda(generator, j)?.scale(&c);
    }
    Ok(out)
}

/// `Σ_{l=0}^{e(x)} c_l(x)` for effective `x`.
pub fn total_class(pres: &RingPresentation, x: &K0Element) -> Result<K0Element, LambdaError> {
    pres.check_element(x)?;
    if !x.is_effective() {
        return Err(LambdaError::NotEffective(x.to_string()));
    }
    let e = rank_e(pres, x)? as usize;
    total_class_to(pres, x, e)
}

/// `Σ_{l=0}^{max_degree} c_l(x)` with no effectivity requirement.
pub fn total_class_to(
    pres: &RingPresentation,
    x: &K0Element,
    max_degree: usize,
) -> Result<K0Element, LambdaError> {
    let s = chern_series(pres, x, max_degree)?;
    Ok(s.into_coeffs()
        .into_iter()
        .fold(K0Element::zero(), |acc, c| acc + c))
}
