//! Factorization of univariate polynomials over F_p.
//!
//! Square-free decomposition handles the characteristic-p case where the
//! derivative can vanish; Berlekamp's algorithm then splits each square-free
//! part. With `p <= 97` the final gcd sweep over all residues is cheap and
//! deterministic.

use super::fp::{inv_mod, mul_mod, sub_mod};
use super::poly::FpPoly;

/// Monic irreducible factors with multiplicities, sorted by factor.
/// Constants (including zero) have no factors.
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    if f.is_constant() {
        return vec![];
    }
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (part, mult) in squarefree(&f.monic()) {
        for q in berlekamp(&part) {
            match out.iter_mut().find(|(g, _)| *g == q) {
                Some(entry) => entry.1 += mult,
                None => out.push((q, mult)),
            }
        }
    }
    out.sort();
    out
}

pub fn is_irreducible(f: &FpPoly) -> bool {
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = Π g^m`, each `g` square-free and monic.
pub fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        let root = f.pth_root().expect("zero derivative implies p-th power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, m) in squarefree(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a monic square-free polynomial into its monic irreducible factors.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.modulus();
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.clone()];
    }
    // Row i holds t^{ip} mod f.
    let tp = FpPoly::t(p).pow_mod(p as u64, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        rows.push((0..n).map(|j| cur.coeff(j)).collect::<Vec<u32>>());
        cur = cur.mul(&tp).rem(f);
    }
    // g with g^p = g mod f solves (Q^T - I) g = 0.
    let mut m = vec![vec![0u32; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for (j, &q) in row.iter().enumerate() {
            m[j][i] = q;
        }
        m[i][i] = sub_mod(m[i][i], 1, p);
    }
    let basis = nullspace_mod_p(m, p);
    let k = basis.len();
    if k == 1 {
        return vec![f.clone()];
    }
    let mut factors = vec![f.clone()];
    for v in basis {
        let g = FpPoly::from_coeffs(v, p);
        if g.is_constant() {
            continue;
        }
        for s in 0..p {
            if factors.len() == k {
                break;
            }
            let shifted = g.sub(&FpPoly::constant(s as i64, p));
            let mut next = Vec::with_capacity(factors.len() + 1);
            for h in factors.drain(..) {
                if h.degree() == Some(1) {
                    next.push(h);
                    continue;
                }
                let d = h.gcd(&shifted);
                if d.is_one() || d == h {
                    next.push(h);
                } else {
                    let other = h.div_exact(&d);
                    next.push(d);
                    next.push(other.monic());
                }
            }
            factors = next;
        }
        if factors.len() == k {
            break;
        }
    }
    debug_assert_eq!(factors.len(), k);
    factors
}

/// Right nullspace basis of a square matrix over F_p.
fn nullspace_mod_p(mut m: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let sub = mul_mod(factor, m[r][j], p);
                    m[i][j] = sub_mod(m[i][j], sub, p);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = sub_mod(0, m[i][free], p);
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64], p: u32) -> FpPoly {
        FpPoly::from_i64s(c, p)
    }

    fn recombine(fs: &[(FpPoly, u32)], p: u32) -> FpPoly {
        fs.iter()
            .fold(FpPoly::one(p), |acc, (g, m)| acc.mul(&g.pow(*m as u64)))
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree up to half.
    fn brute_irreducible(f: &FpPoly) -> bool {
        let p = f.modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    coeffs.push((x % p as usize) as u32);
                    x /= p as usize;
                }
                coeffs.push(1);
                let g = FpPoly::from_coeffs(coeffs, p);
                if f.rem(&g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn factors_recombine_and_are_irreducible() {
        let cases: Vec<(Vec<i64>, u32)> = vec![
            (vec![0, -1, 1], 5),            // t^2 - t
            (vec![1, 0, 0, 1], 3),          // t^3+1 = (t+1)^3
            (vec![1, 1, 0, 0, 1, 1, 1], 2), // mixed
            (vec![2, 0, 1, 0, 0, 0, 1], 7),
            (vec![0, 0, 1, 0, 0, 0, 0, 0, 0, 1], 3),
            (vec![1, 0, 0, 0, 1, 0, 0, 0, 1], 2),
        ];
        for (c, p) in cases {
            let f = poly(&c, p);
            let fs = factor(&f);
            assert_eq!(recombine(&fs, p), f.monic(), "recombine {f} mod {p}");
            for (g, _) in &fs {
                assert!(g.is_monic());
                assert!(brute_irreducible(g), "{g} reducible mod {p}");
            }
        }
    }

    #[test]
    fn pth_power_multiplicities() {
        let p = 3;
        let f = poly(&[1, 1], p).pow(6).mul(&poly(&[0, 1], p).pow(2));
        let fs = factor(&f);
        assert_eq!(fs, vec![(poly(&[0, 1], p), 2), (poly(&[1, 1], p), 6)]);
    }

    #[test]
    fn irreducible_quadratics_mod_2() {
        // t^2+t+1 is the only irreducible quadratic over F_2
        let irr: Vec<u32> = (0..4)
            .filter(|&i| {
                let f = FpPoly::from_coeffs(vec![i & 1, (i >> 1) & 1, 1], 2);
                is_irreducible(&f)
            })
            .collect();
        assert_eq!(irr, vec![3]);
    }
}
