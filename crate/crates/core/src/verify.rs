//! Seeded property suites.
//!
//! Trial `k` of a run with seed `s` draws all of its randomness from
//! `trial_rng(s, k)`. Trials run in parallel and the report lists failures
//! by trial index, so a report depends only on suite, seed, trial count and
//! options.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cartier::{
    adjoint_pth_check, cartier_op, is_logarithmic, omega_connection_apply, p_curvature_closed_form,
    p_curvature_rank1, Derivation, OneForm, RootValue,
};
use crate::chern::{chern_class, chern_series, karoubi_closed_form, segre_series};
use crate::connections::{
    filtration_check, gauge_trivial, horizontal_sections, in_kp_span, p_curvature_matrix,
    ExactTriple, MatrixConnection,
};
use crate::exact_arith::{check_prime, RatFun};
use crate::lambda_ring::{
    lambda_series, rank_e, specialize_to_z, Generator, K0Element, LambdaSymbol, RingPresentation,
};
use crate::ore::{
    companion_connection, cyclic_round_trip_holds, cyclic_vector, ore_mul, ore_pcurvature,
    ore_right_divide, SkewPoly, DEFAULT_CYCLIC_ATTEMPTS,
};
use crate::sample::{
    random_effective_element, random_invertible_poly_matrix, random_linear_element, random_matrix,
    random_morphism, random_nonzero_ratfun, random_presentation, random_ratfun, trial_rng,
    TrialRng,
};
use crate::scalar::binomial;

pub const SUITES: [&str; 14] = [
    "whitney",
    "vanishing",
    "naturality",
    "segre",
    "karoubi",
    "specialize",
    "cartier-props",
    "pcurv-theorem",
    "operator-identity",
    "dlog",
    "filtration",
    "descent",
    "ore",
    "adjoint",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite `{0}`; expected one of: {list}", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unsupported characteristic {0}")]
    BadPrime(u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Fixes the characteristic for suites that otherwise cycle through
    /// several primes.
    pub p: Option<u32>,
    /// Compare against `(-1)^p (Cω - ω)^p` in `pcurv-theorem`.
    pub signed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub failures: Vec<TrialFailure>,
    /// Counts of tagged observations, e.g. how often a bound was sharp.
    pub notes: BTreeMap<String, u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn note(&self, tag: &str) -> u64 {
        self.notes.get(tag).copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "suite: {}", self.suite).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        writeln!(out, "trials: {}", self.trials).unwrap();
        writeln!(out, "failures: {}", self.failures.len()).unwrap();
        for (tag, n) in &self.notes {
            writeln!(out, "note: {tag}: {n}").unwrap();
        }
        for f in &self.failures {
            writeln!(out, "trial {}: {}", f.trial, f.description).unwrap();
        }
        write!(
            out,
            "result: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    tags: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(describe());
        }
    }

    fn tag(&mut self, t: impl Into<String>) {
        self.tags.push(t.into());
    }
}

type TrialResult = Result<Outcome, String>;
type Suite = fn(u64, &mut TrialRng, &VerifyOptions) -> TrialResult;

fn suite_fn(name: &str) -> Option<Suite> {
    Some(match name {
        "whitney" => whitney,
        "vanishing" => vanishing,
        "naturality" => naturality,
        "segre" => segre,
        "karoubi" => karoubi,
        "specialize" => specialize,
        "cartier-props" => cartier_props,
        "pcurv-theorem" => pcurv_theorem,
        "operator-identity" => operator_identity,
        "dlog" => dlog,
        "filtration" => filtration,
        "descent" => descent,
        "ore" => ore,
        "adjoint" => adjoint,
        _ => return None,
    })
}

pub fn run_verify(suite: &str, trials: u64, seed: u64) -> Result<VerifyReport, VerifyError> {
    run_verify_with(suite, trials, seed, &VerifyOptions::default())
}

pub fn run_verify_with(
    suite: &str,
    trials: u64,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let f = suite_fn(suite).ok_or_else(|| VerifyError::UnknownSuite(suite.to_string()))?;
    if let Some(p) = opts.p {
        check_prime(p).map_err(|_| VerifyError::BadPrime(p))?;
    }
    let outcomes: Vec<(u64, Outcome)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            let outcome = f(k, &mut rng, opts).unwrap_or_else(|e| Outcome {
                failures: vec![format!("error: {e}")],
                tags: vec![],
            });
            (k, outcome)
        })
        .collect();
    let mut report = VerifyReport {
        suite: suite.to_string(),
        trials,
        seed,
        failures: vec![],
        notes: BTreeMap::new(),
    };
    for (k, o) in outcomes {
        for description in o.failures {
            report.failures.push(TrialFailure {
                trial: k,
                description,
            });
        }
        for t in o.tags {
            *report.notes.entry(t).or_default() += 1;
        }
    }
    report.failures.sort_by_key(|f| f.trial);
    Ok(report)
}

fn pick_p(opts: &VerifyOptions, trial: u64, choices: &[u32]) -> u32 {
    opts.p
        .unwrap_or(choices[(trial % choices.len() as u64) as usize])
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn k0_pres<R: Rng>(rng: &mut R) -> RingPresentation {
    random_presentation(rng, 3, 5)
}

fn whitney(_: u64, rng: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let pres = k0_pres(rng);
    let x = random_linear_element(rng, &pres, 2);
    let y = random_linear_element(rng, &pres, 2);
    let n = rng.random_range(1..=12);
    let lhs = chern_series(&pres, &(x.clone() + y.clone()), n).map_err(e)?;
    let rhs = chern_series(&pres, &x, n)
        .map_err(e)?
        .mul(&chern_series(&pres, &y, n).map_err(e)?)
        .map_err(e)?;
    let mut o = Outcome::default();
    o.check(lhs == rhs, || {
        format!(
            "c_t(x+y) != c_t(x)c_t(y) to order {n}; x = {x}, y = {y}, ring = {}",
            pres.to_json()
        )
    });
    Ok(o)
}

fn vanishing(_: u64, rng: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let pres = k0_pres(rng);
    let x = random_effective_element(rng, &pres, 8);
    let ex = rank_e(&pres, &x).map_err(e)? as usize;
    let s = chern_series(&pres, &x, ex + 4).map_err(e)?;
    let mut o = Outcome::default();
    for l in ex + 1..=ex + 4 {
        o.check(s.coeff(l).is_zero(), || {
            format!(
                "c_{l}(x) = {} != 0 with e(x) = {ex}; x = {x}, ring = {}",
                s.coeff(l),
                pres.to_json()
            )
        });
    }
    if !s.coeff(ex).is_zero() {
        o.tag("c_e(x) != 0");
    }
    Ok(o)
}

fn naturality(_: u64, rng: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let source = k0_pres(rng);
    let target = k0_pres(rng);
    let f = random_morphism(rng, &source, &target);
    let x = random_linear_element(rng, &source, 2);
    let fx = f.apply(&x).map_err(e)?;
    let cs = chern_series(&source, &x, 6).map_err(e)?;
    let ct = chern_series(&target, &fx, 6).map_err(e)?;
    let mut o = Outcome::default();
    for l in 0..=6 {
        let pushed = f.apply(&cs.coeff(l)).map_err(e)?;
        o.check(pushed == ct.coeff(l), || {
            format!(
                "f*(c_{l}(x)) = {pushed} but c_{l}(f*x) = {}; x = {x}, source = {}, target = {}",
                ct.coeff(l),
                source.to_json(),
                target.to_json()
            )
        });
    }
    Ok(o)
}

fn line_bundle_witness(o: &mut Outcome) -> Result<(), String> {
    let pres = RingPresentation::new(vec![Generator {
        name: "l".into(),
        rank: 1,
    }])
    .map_err(e)?;
    let l = K0Element::symbol(LambdaSymbol::new("l", 1));
    let s2 = segre_series(&pres, &l, 2).map_err(e)?.coeff(2);
    let expected = (l - K0Element::one()).pow(2);
    o.check(s2 == expected && !s2.is_zero(), || {
        format!("s_2(l) = {s2}, expected {expected}")
    });
    Ok(())
}

fn segre(_: u64, rng: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let pres = k0_pres(rng);
    let x = random_linear_element(rng, &pres, 2);
    let y = random_linear_element(rng, &pres, 2);
    let n = rng.random_range(1..=10);
    let mut o = Outcome::default();
    let c = chern_series(&pres, &x, n).map_err(e)?;
    let s = segre_series(&pres, &x, n).map_err(e)?;
    let prod = c.mul(&s).map_err(e)?;
    o.check(prod == crate::power_series::TruncSeries::one(n), || {
        format!(
            "c_t(x)s_t(x) != 1 to order {n}; x = {x}, ring = {}",
            pres.to_json()
        )
    });
    let lhs = segre_series(&pres, &(x.clone() + y.clone()), n).map_err(e)?;
    let rhs = s.mul(&segre_series(&pres, &y, n).map_err(e)?).map_err(e)?;
    o.check(lhs == rhs, || {
        format!(
            "s_t(x+y) != s_t(x)s_t(y) to order {n}; x = {x}, y = {y}, ring = {}",
            pres.to_json()
        )
    });
    line_bundle_witness(&mut o)?;
    Ok(o)
}

fn karoubi(trial: u64, _: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let n = 1 + (trial % 6) as u32;
    let pres = RingPresentation::new(vec![Generator {
        name: "E".into(),
        rank: n,
    }])
    .map_err(e)?;
    let gen = K0Element::symbol(LambdaSymbol::new("E", 1));
    let mut o = Outcome::default();
    for i in 0..=n {
        let direct = chern_class(&pres, &gen, i as usize).map_err(e)?;
        let closed = karoubi_closed_form(&pres, "E", i).map_err(e)?;
        o.check(direct == closed, || {
            format!("rank {n}: c_{i}(E) = {direct}, closed form gives {closed}")
        });
    }
    Ok(o)
}

/// `C(m, k)` for any integer `m`.
fn general_binomial(m: i64, k: u64) -> BigInt {
    if m >= 0 {
        binomial(m as u64, k)
    } else {
        let b = binomial((-m) as u64 + k - 1, k);
        if k % 2 == 1 {
            -b
        } else {
            b
        }
    }
}

fn specialize(_: u64, rng: &mut TrialRng, _: &VerifyOptions) -> TrialResult {
    let pres = k0_pres(rng);
    let x = random_linear_element(rng, &pres, 2);
    let y = random_linear_element(rng, &pres, 2);
    let n = rng.random_range(1..=10);
    let mut o = Outcome::default();
    let z = |v: &K0Element| specialize_to_z(&pres, v).map_err(e);
    let ex = rank_e(&pres, &x).map_err(e)?;
    let lam = lambda_series(&pres, &x, n).map_err(e)?;
    for k in 0..=n {
        let got = z(&lam.coeff(k))?;
        let want = general_binomial(ex, k as u64);
        o.check(got == want, || {
            format!(
                "λ^{k}(x) specializes to {got}, expected C({ex},{k}) = {want}; x = {x}, ring = {}",
                pres.to_json()
            )
        });
    }
    let cx = chern_series(&pres, &x, n).map_err(e)?;
    let cy = chern_series(&pres, &y, n).map_err(e)?;
    let cxy = chern_series(&pres, &(x.clone() + y.clone()), n).map_err(e)?;
    let sx = segre_series(&pres, &x, n).map_err(e)?;
    let prod = cx.mul(&cy).map_err(e)?;
    for l in 0..=n {
        let want = if l == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        for (name, v) in [("c", cx.coeff(l)), ("s", sx.coeff(l))] {
            let got = z(&v)?;
            o.check(got == want, || {
                format!(
                    "{name}_{l}(x) specializes to {got}; x = {x}, ring = {}",
                    pres.to_json()
                )
            });
        }
        let (a, b) = (z(&cxy.coeff(l))?, z(&prod.coeff(l))?);
        o.check(a == b, || {
            format!("Whitney fails after specialization at degree {l}")
        });
    }
    Ok(o)
}

fn random_derivation(rng: &mut TrialRng, p: u32) -> Derivation {
    Derivation(random_nonzero_ratfun(rng, p, 2))
}

fn cartier_props(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5, 7]);
    let d = random_derivation(rng, p);
    let w1 = OneForm(random_ratfun(rng, p, 3));
    let w2 = OneForm(random_ratfun(rng, p, 3));
    let a = random_ratfun(rng, p, 2);
    let f = random_ratfun(rng, p, 3);
    let c = |w: &OneForm| cartier_op(w, &d).map_err(e);
    let mut o = Outcome::default();
    let (c1, c2) = (c(&w1)?, c(&w2)?);
    o.check(c(&w1.add(&w2))? == c1.add(&c2), || {
        format!("p = {p}: C(ω1+ω2) != Cω1 + Cω2 for ω1 = {w1}, ω2 = {w2}, d = {d}")
    });
    let ap = a.pow(p as i64).map_err(e)?;
    o.check(c(&w1.scale(&ap))? == RootValue::embed(&a).mul(&c1), || {
        format!("p = {p}: C(a^p ω) != a Cω for a = {a}, ω = {w1}, d = {d}")
    });
    o.check(c(&OneForm::exact(&f))?.is_zero(), || {
        format!("p = {p}: C(df) != 0 for f = {f}, d = {d}")
    });
    Ok(o)
}

fn pcurv_theorem(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5]);
    let w = OneForm(random_ratfun(rng, p, 3));
    let d = if trial % 2 == 0 {
        Derivation::d_dt(p)
    } else {
        random_derivation(rng, p)
    };
    let psi = p_curvature_rank1(&w, &d).map_err(e)?;
    let unsigned = p_curvature_closed_form(&w, &d, false).map_err(e)?;
    let signed = p_curvature_closed_form(&w, &d, true).map_err(e)?;
    let mut o = Outcome::default();
    let (expected, label) = if opts.signed {
        (&signed, "(-1)^p (Cω - ω)^p")
    } else {
        (&unsigned, "(Cω - ω)^p")
    };
    o.check(&psi == expected, || {
        format!("p = {p}: ψ = {psi} but {label} = {expected} for ω = {w}, d = {d}")
    });
    o.tag(format!(
        "p={p} signed variant {}",
        if psi == signed { "agrees" } else { "differs" }
    ));
    Ok(o)
}

fn operator_identity(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5]);
    let a = random_ratfun(rng, p, 3);
    let w = OneForm(a.clone());
    let d = Derivation::d_dt(p);
    let ap = a.pow(p as i64).map_err(e)?;
    let dpa = a.nth_derivative(p as usize - 1);
    let mut o = Outcome::default();
    for _ in 0..10 {
        let x = random_ratfun(rng, p, 3);
        let lhs = (0..p).fold(x.clone(), |acc, _| omega_connection_apply(&w, &d, &acc));
        let rhs = &(&(&ap * &x) + &x.nth_derivative(p as usize)) + &(&dpa * &x);
        o.check(lhs == rhs, || {
            format!("p = {p}: (a+∂)^p x != (a^p + ∂^p + ∂^(p-1)(a)) x for a = {a}, x = {x}")
        });
    }
    Ok(o)
}

fn dlog(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5, 7]);
    let x = random_nonzero_ratfun(rng, p, 4);
    let w = OneForm::dlog(&x).ok_or("dx/x undefined")?;
    let d = Derivation::d_dt(p);
    let mut o = Outcome::default();
    match is_logarithmic(&w) {
        Some(wit) => o.check(OneForm::dlog(&wit).as_ref() == Some(&w), || {
            format!("p = {p}: witness {wit} for dx/x with x = {x} does not reproduce {w}")
        }),
        None => o.check(false, || format!("p = {p}: dx/x not detected for x = {x}")),
    }
    let psi = p_curvature_rank1(&w, &d).map_err(e)?;
    o.check(psi.is_zero(), || {
        format!("p = {p}: ψ(dx/x) = {psi} for x = {x}")
    });

    let c = rng.random_range(1..p) as i64;
    let t = RatFun::t(p);
    let h = RatFun::from_int(c, p).checked_div(&(&t * &t)).map_err(e)?;
    let double = OneForm(h.clone());
    o.check(is_logarithmic(&double).is_none(), || {
        format!("p = {p}: {h} dt reported logarithmic")
    });
    let psi = p_curvature_rank1(&double, &d).map_err(e)?;
    let expected = -&RatFun::from_int(c, p)
        .pow(p as i64)
        .map_err(e)?
        .checked_div(&t.pow(2 * p as i64).map_err(e)?)
        .map_err(e)?;
    o.check(psi == expected && !psi.is_zero(), || {
        format!("p = {p}: ψ({h} dt) = {psi}, expected {expected}")
    });
    Ok(o)
}

/// All `(a, b, l)` with `a, b >= 1`, `a + b <= 4`, `2 <= l <= a + b`.
fn filtration_shapes() -> Vec<(usize, usize, usize)> {
    let mut out = vec![];
    for n in 2..=4 {
        for a in 1..n {
            for l in 2..=n {
                out.push((a, n - a, l));
            }
        }
    }
    out
}

pub fn filtration_case_count() -> usize {
    2 * filtration_shapes().len()
}

fn filtration(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let shapes = filtration_shapes();
    let k = (trial % (2 * shapes.len() as u64)) as usize;
    let p = opts.p.unwrap_or(if k < shapes.len() { 2 } else { 3 });
    let (a, b, l) = shapes[k % shapes.len()];
    let t = ExactTriple::new(
        random_matrix(rng, p, a, a, 2),
        random_matrix(rng, p, a, b, 2),
        random_matrix(rng, p, b, b, 2),
    )
    .map_err(e)?;
    let report = filtration_check(&t, l).map_err(e)?;
    let mut o = Outcome::default();
    o.check(report.passed(), || {
        let step = report.first_failure().expect("some step fails");
        format!(
            "p = {p}, a = {a}, b = {b}, l = {l}: step i = {} (stable: {}, quotient matches: {}); V = {}",
            step.i,
            step.stable,
            step.quotient_matches,
            t.total().matrix()
        )
    });
    Ok(o)
}

fn descent(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5]);
    let n = 1 + ((trial / 3) % 3) as usize;
    let g = random_invertible_poly_matrix(rng, p, n, 2);
    let c = gauge_trivial(&g).map_err(e)?;
    let mut o = Outcome::default();
    let psi = p_curvature_matrix(&c).map_err(e)?;
    o.check(psi.is_zero(), || {
        format!("p = {p}: ψ != 0 for A = -G'G^-1, G = {g}")
    });
    let h = horizontal_sections(&c).map_err(e)?;
    o.check(h.dimension() == n, || {
        format!(
            "p = {p}: horizontal dimension {} != {n} for G = {g}",
            h.dimension()
        )
    });
    for j in 0..n {
        o.check(in_kp_span(p, &h.vectors, &g.column(j)), || {
            format!("p = {p}: column {j} of G = {g} is not a K^p-combination of the solutions")
        });
    }
    let t_conn = MatrixConnection::rank1(RatFun::t(p));
    let dim = horizontal_sections(&t_conn).map_err(e)?.dimension();
    o.check(dim == 0, || {
        format!("p = {p}: A = [t] has {dim} horizontal sections")
    });
    Ok(o)
}

fn random_skew(rng: &mut TrialRng, p: u32, deg: usize) -> SkewPoly {
    SkewPoly::new((0..=deg).map(|_| random_ratfun(rng, p, 2)).collect(), p)
}

fn random_monic(rng: &mut TrialRng, p: u32, deg: usize) -> SkewPoly {
    let mut coeffs: Vec<RatFun> = (0..deg).map(|_| random_ratfun(rng, p, 2)).collect();
    coeffs.push(RatFun::one(p));
    SkewPoly::new(coeffs, p)
}

fn ore(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5]);
    let mut o = Outcome::default();
    let degs: [usize; 3] = [
        rng.random_range(0..=3),
        rng.random_range(0..=3),
        rng.random_range(0..=3),
    ];
    let (a, b, c) = (
        random_skew(rng, p, degs[0]),
        random_skew(rng, p, degs[1]),
        random_skew(rng, p, degs[2]),
    );
    let ab_c = ore_mul(&ore_mul(&a, &b).map_err(e)?, &c).map_err(e)?;
    let a_bc = ore_mul(&a, &ore_mul(&b, &c).map_err(e)?).map_err(e)?;
    o.check(ab_c == a_bc, || {
        format!("p = {p}: (PQ)R != P(QR) for P = {a}, Q = {b}, R = {c}")
    });
    if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
        let ab = ore_mul(&a, &b).map_err(e)?;
        o.check(ab.degree() == Some(da + db), || {
            format!("p = {p}: deg(PQ) != deg P + deg Q for P = {a}, Q = {b}")
        });
    }

    let (num_deg, den_deg) = (rng.random_range(0..=4), rng.random_range(0..=2));
    let num = random_skew(rng, p, num_deg);
    let mut den = random_skew(rng, p, den_deg);
    if den.is_zero() {
        den = SkewPoly::one(p);
    }
    let (q, r) = ore_right_divide(&num, &den).map_err(e)?;
    let rebuilt = ore_mul(&q, &den).map_err(e)?.add(&r);
    o.check(
        rebuilt == num && r.degree().map_or(true, |rd| rd < den.degree().unwrap_or(0)),
        || format!("p = {p}: division of {num} by {den} gives Q = {q}, R = {r}"),
    );

    let deg = rng.random_range(1..=3);
    let pp = random_monic(rng, p, deg);
    let comp = companion_connection(&pp).map_err(e)?;
    match cyclic_vector(&comp, trial, DEFAULT_CYCLIC_ATTEMPTS) {
        Ok(found) => o.check(cyclic_round_trip_holds(&comp, &found).map_err(e)?, || {
            format!(
                "p = {p}: round trip fails for P = {pp}, v = {:?}",
                found.v.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            )
        }),
        Err(err) => o.check(false, || format!("p = {p}: companion of {pp}: {err}")),
    }

    let h = random_ratfun(rng, p, 3);
    let t_minus_h = SkewPoly::new(vec![-&h, RatFun::one(p)], p);
    let psi = ore_pcurvature(&t_minus_h).map_err(e)?;
    let expected = p_curvature_rank1(&OneForm(h.clone()), &Derivation::d_dt(p)).map_err(e)?;
    o.check(psi.rows() == 1 && psi.get(0, 0) == &expected, || {
        format!("p = {p}: ore_pcurvature(T - h) = {psi}, rank-1 formula gives {expected}; h = {h}")
    });

    let n = rng.random_range(2..=3);
    let general = MatrixConnection::new(random_matrix(rng, p, n, n, 2)).map_err(e)?;
    o.tag(
        match cyclic_vector(&general, trial, DEFAULT_CYCLIC_ATTEMPTS) {
            Ok(_) => "random connection: cyclic vector found",
            Err(_) => "random connection: no cyclic vector within bound",
        },
    );
    Ok(o)
}

fn adjoint(trial: u64, rng: &mut TrialRng, opts: &VerifyOptions) -> TrialResult {
    let p = pick_p(opts, trial, &[2, 3, 5]);
    let d = random_derivation(rng, p);
    let report = adjoint_pth_check(&d, 3, rng).map_err(e)?;
    let mut o = Outcome::default();
    for f in report.failures {
        o.check(false, || format!("p = {p}, d = {d}: {f}"));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_few_trials() {
        for s in SUITES {
            let r = run_verify(s, 6, 1).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn zero_trials_is_an_empty_pass() {
        for s in SUITES {
            let r = run_verify(s, 0, 3).unwrap();
            assert!(r.passed());
            assert!(r.notes.is_empty());
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_verify("whitney", 10, 7).unwrap();
        let b = run_verify("whitney", 10, 7).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn signed_variant_fails_for_odd_p() {
        let opts = VerifyOptions {
            p: Some(3),
            signed: true,
        };
        let r = run_verify_with("pcurv-theorem", 10, 1, &opts).unwrap();
        assert!(!r.passed());
        let opts = VerifyOptions {
            p: Some(2),
            signed: true,
        };
        assert!(run_verify_with("pcurv-theorem", 10, 1, &opts)
            .unwrap()
            .passed());
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_verify("nope", 1, 0),
            Err(VerifyError::UnknownSuite(_))
        ));
    }

    #[test]
    fn general_binomial_matches_series() {
        // (1+t)^{-2} = 1 - 2t + 3t^2 - 4t^3
        let want = [1, -2, 3, -4];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(general_binomial(-2, k as u64), BigInt::from(*w));
        }
    }
}
