//! Differential calculus on `K = F_p(t)` over `L = F_p(t^p)`: derivations,
//! 1-forms, the Cartier operator, rank-one connections `∂ + ω(∂)`, their
//! curvature and p-curvature, and detection of logarithmic derivatives.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::exact_arith::{partial_fractions, FpElem, RatFun};
use crate::sample::{random_ratfun, trial_rng};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartierError {
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
    #[error("characteristic mismatch: {0} vs {1}")]
    Mismatch(u32, u32),
}

/// Deterministic probe functions for operator checks.
fn probes(p: u32) -> Vec<RatFun> {
    let mut rng = trial_rng(0x5eed, p as u64);
    let mut out = vec![RatFun::one(p), RatFun::t(p)];
    out.extend((0..8).map(|_| random_ratfun(&mut rng, p, 3)));
    out
}

/// The derivation `f · d/dt`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation(pub RatFun);

impl Derivation {
    /// `d/dt`.
    pub fn d_dt(p: u32) -> Self {
        Derivation(RatFun::one(p))
    }

    pub fn coeff(&self) -> &RatFun {
        &self.0
    }

    pub fn modulus(&self) -> u32 {
        self.0.modulus()
    }

    pub fn apply(&self, x: &RatFun) -> RatFun {
        &self.0 * &x.derivative()
    }

    /// `k`-fold composition applied to `x`.
    pub fn apply_n(&self, k: usize, x: &RatFun) -> RatFun {
        (0..k).fold(x.clone(), |acc, _| self.apply(&acc))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, a: &RatFun) -> Self {
        Derivation(a * &self.0)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*d/dt", self.0)
    }
}

/// `[f∂, g∂] = (f g' - g f') ∂`.
pub fn der_bracket(d1: &Derivation, d2: &Derivation) -> Derivation {
    let (f, g) = (&d1.0, &d2.0);
    Derivation(&(f * &g.derivative()) - &(g * &f.derivative()))
}

/// The restricted power `d^{[p]}`, the derivation equal to the p-fold
/// composite of `d`. Its coefficient is `d^p(t)`; the operator identity is
/// then confirmed on probe functions.
pub fn der_pth_power(d: &Derivation) -> Result<Derivation, CartierError> {
    let p = d.modulus();
    let t = RatFun::t(p);
    let result = Derivation(d.apply_n(p as usize, &t));
    for x in probes(p) {
        if d.apply_n(p as usize, &x) != result.apply(&x) {
            return Err(CartierError::InternalCheck(format!(
                "({d})^p is not a derivation on {x}"
            )));
        }
    }
    Ok(result)
}

/// The 1-form `h · dt`, paired with derivations by `ω(f∂) = f h`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneForm(pub RatFun);

impl OneForm {
    pub fn coeff(&self) -> &RatFun {
        &self.0
    }

    pub fn modulus(&self) -> u32 {
        self.0.modulus()
    }

    pub fn pair(&self, d: &Derivation) -> RatFun {
        &self.0 * &d.0
    }

    /// `df = f' dt`.
    pub fn exact(f: &RatFun) -> Self {
        OneForm(f.derivative())
    }

    /// `dx/x`.
    pub fn dlog(x: &RatFun) -> Option<Self> {
        x.inverse().map(|inv| OneForm(&x.derivative() * &inv))
    }

    pub fn add(&self, other: &Self) -> Self {
        OneForm(&self.0 + &other.0)
    }

    pub fn scale(&self, a: &RatFun) -> Self {
        OneForm(a * &self.0)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dt", self.0)
    }
}

/// An element of `K^{1/p} = F_p(s)` with `t = s^p`, stored as a rational
/// function in `s`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootValue {
    in_s: RatFun,
}

impl RootValue {
    /// Embeds `x ∈ K` via `t ↦ s^p`.
    pub fn embed(x: &RatFun) -> Self {
        RootValue {
            in_s: x.frobenius(),
        }
    }

    /// `x^{1/p}`: since Frobenius fixes F_p, the root of `h(t)` is `h(s)`.
    pub fn root_of(x: &RatFun) -> Self {
        RootValue { in_s: x.clone() }
    }

    pub fn as_function_of_s(&self) -> &RatFun {
        &self.in_s
    }

    /// The value as an element of `K`, when it lies there.
    pub fn to_k(&self) -> Option<RatFun> {
        self.in_s.pth_root()
    }

    /// `self^p ∈ K`.
    pub fn pow_p(&self) -> RatFun {
        self.in_s.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        RootValue {
            in_s: &self.in_s + &other.in_s,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootValue {
            in_s: &self.in_s - &other.in_s,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RootValue {
            in_s: &self.in_s * &other.in_s,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.in_s.is_zero()
    }
}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_k() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}", self.in_s.to_string().replace('t', "s")),
        }
    }
}

/// `Cω(∂) = (ω(∂^{[p]}) - ∂^{p-1}(ω(∂)))^{1/p}`.
pub fn cartier_op(w: &OneForm, d: &Derivation) -> Result<RootValue, CartierError> {
    Ok(RootValue::root_of(&cartier_radicand(w, d)?))
}

/// The quantity under the p-th root in the Cartier operator.
pub fn cartier_radicand(w: &OneForm, d: &Derivation) -> Result<RatFun, CartierError> {
    check_same(w.modulus(), d.modulus())?;
    let p = d.modulus() as usize;
    let dp = der_pth_power(d)?;
    Ok(&w.pair(&dp) - &d.apply_n(p - 1, &w.pair(d)))
}

fn check_same(a: u32, b: u32) -> Result<(), CartierError> {
    if a == b {
        Ok(())
    } else {
        Err(CartierError::Mismatch(a, b))
    }
}

/// `r(∂)(x) = ∂(x) + ω(∂) x`.
pub fn omega_connection_apply(w: &OneForm, d: &Derivation, x: &RatFun) -> RatFun {
    &d.apply(x) + &(&w.pair(d) * x)
}

/// Reads an operator `op` as multiplication by `op(1)` and checks that
/// reading on the probe functions.
fn as_multiplication(
    p: u32,
    what: &str,
    op: impl Fn(&RatFun) -> RatFun,
) -> Result<RatFun, CartierError> {
    let scalar = op(&RatFun::one(p));
    for u in probes(p) {
        if op(&u) != &scalar * &u {
            return Err(CartierError::InternalCheck(format!(
                "{what} is not K-linear on {u}"
            )));
        }
    }
    Ok(scalar)
}

/// Curvature `R(d1, d2) = r([d1,d2]) - [r(d1), r(d2)]` as a multiplication
/// operator, checked against `dω(d1, d2) = d1(ω(d2)) - d2(ω(d1)) - ω([d1,d2])`.
///
/// The two agree up to the sign convention of the curvature; on a curve both
/// vanish.
pub fn curvature_rank1(
    w: &OneForm,
    d1: &Derivation,
    d2: &Derivation,
) -> Result<RatFun, CartierError> {
    check_same(d1.modulus(), d2.modulus())?;
    check_same(w.modulus(), d1.modulus())?;
    let p = w.modulus();
    let br = der_bracket(d1, d2);
    let r = |d: &Derivation, x: &RatFun| omega_connection_apply(w, d, x);
    let curvature = as_multiplication(p, "curvature", |u| {
        let commutator = &r(d1, &r(d2, u)) - &r(d2, &r(d1, u));
        &r(&br, u) - &commutator
    })?;
    let d_omega = &(&d1.apply(&w.pair(d2)) - &d2.apply(&w.pair(d1))) - &w.pair(&br);
    if curvature != d_omega && curvature != -&d_omega {
        return Err(CartierError::InternalCheck(format!(
            "curvature {curvature} differs from dω = {d_omega}"
        )));
    }
    Ok(curvature)
}

/// p-curvature `ψ(d) = r(d^{[p]}) - r(d)^p` as a multiplication operator.
pub fn p_curvature_rank1(w: &OneForm, d: &Derivation) -> Result<RatFun, CartierError> {
    check_same(w.modulus(), d.modulus())?;
    let p = d.modulus();
    let dp = der_pth_power(d)?;
    as_multiplication(p, "p-curvature", |u| {
        let mut pow = u.clone();
        for _ in 0..p {
            pow = omega_connection_apply(w, d, &pow);
        }
        &omega_connection_apply(w, &dp, u) - &pow
    })
}

/// `(Cω(d) - ω(d))^p`, the closed form of the p-curvature; with
/// `signed = true` the variant carrying an extra factor `(-1)^p`.
pub fn p_curvature_closed_form(
    w: &OneForm,
    d: &Derivation,
    signed: bool,
) -> Result<RatFun, CartierError> {
    let c = cartier_op(w, d)?;
    let diff = c.sub(&RootValue::embed(&w.pair(d))).pow_p();
    if signed && d.modulus() % 2 == 1 {
        Ok(-diff)
    } else {
        Ok(diff)
    }
}

/// A witness `x` with `x'/x = h` when `ω = h dt` is a logarithmic derivative.
///
/// `h` must have no polynomial part and only simple poles whose numerators
/// are `F_p`-multiples `e·q'` of the derivative of the pole's factor; then
/// `x = Π q^e` with `e ∈ [0, p-1]`.
pub fn is_logarithmic(w: &OneForm) -> Option<RatFun> {
    let h = w.coeff();
    let p = h.modulus();
    let pf = partial_fractions(h);
    if !pf.polynomial.is_zero() {
        return None;
    }
    let mut x = RatFun::one(p);
    for term in &pf.terms {
        if term.multiplicity != 1 {
            return None;
        }
        let dq = term.factor.derivative();
        if dq.is_zero() || term.numerator.degree() != dq.degree() {
            return None;
        }
        let e = FpElem::new(term.numerator.lead() as i64, p)
            * FpElem::new(dq.lead() as i64, p).inverse()?;
        if term.numerator != dq.scale(e.value()) {
            return None;
        }
        let q = RatFun::from_poly(term.factor.clone());
        x = &x * &q.pow(e.lift() as i64).expect("nonnegative power");
    }
    let check = OneForm::dlog(&x)?;
    (check.coeff() == h).then_some(x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For sampled derivations `η` checks `ad(d^{[p]})(η) = ad(d)^p(η)` and the
/// connection rule `ad(d)(αη) = α·ad(d)(η) + d(α)η`.
pub fn adjoint_pth_check<R: Rng>(
    d: &Derivation,
    trials: usize,
    rng: &mut R,
) -> Result<AdjointReport, CartierError> {
    let p = d.modulus();
    let dp = der_pth_power(d)?;
    let mut report = AdjointReport {
        checks: 0,
        failures: vec![],
    };
    for _ in 0..trials {
        let eta = Derivation(random_ratfun(rng, p, 3));
        let alpha = random_ratfun(rng, p, 3);
        let lhs = der_bracket(&dp, &eta);
        let rhs = (0..p).fold(eta.clone(), |acc, _| der_bracket(d, &acc));
        if lhs != rhs {
            report.failures.push(format!(
                "ad(d^[p])({eta}) = {lhs} but ad(d)^p({eta}) = {rhs}"
            ));
        }
        let left = der_bracket(d, &eta.scale(&alpha));
        let right = Derivation(&(&alpha * &der_bracket(d, &eta).0) + &(&d.apply(&alpha) * &eta.0));
        if left != right {
            report
                .failures
                .push(format!("Leibniz fails for α = {alpha}, η = {eta}"));
        }
        report.checks += 2;
    }
    Ok(report)
}
