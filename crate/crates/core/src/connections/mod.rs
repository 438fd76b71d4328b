//! Matrix connections `∇ = ∂ + A` on `K^n`, `K = F_p(t)`.
//!
//! Since `Der(K)` is free of rank one on `∂ = d/dt`, a connection is fixed by
//! its value on `∂`: `∇(v) = v' + A v`, and `∇_{f∂} = f ∇`.

mod registry;
mod wedge;

use std::collections::HashMap;

use thiserror::Error;

use crate::cartier::{Derivation, OneForm};
use crate::exact_arith::RatFun;
use crate::lambda_ring::LambdaError;
use crate::matrix::{MatrixError, RatMatrix, RatVector};
use crate::sample::{random_ratfun, trial_rng};

pub use registry::ConnRegistry;
pub use wedge::{multisets, subsets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnError {
    #[error("characteristic mismatch: {0} vs {1}")]
    Mismatch(u32, u32),
    #[error("connection matrix must be square and nonempty")]
    Shape,
    #[error("degree {l} out of range for dimension {n}")]
    DegreeOutOfRange { l: usize, n: usize },
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixConnection {
    a: RatMatrix,
}

impl MatrixConnection {
    pub fn new(a: RatMatrix) -> Result<Self, ConnError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(ConnError::Shape);
        }
        Ok(MatrixConnection { a })
    }

    /// `θ_K^{⊕n}`.
    pub fn trivial(p: u32, n: usize) -> Self {
        MatrixConnection {
            a: RatMatrix::zeros(p, n, n),
        }
    }

    /// The rank-one connection `∂ + h`.
    pub fn rank1(h: RatFun) -> Self {
        MatrixConnection {
            a: RatMatrix::scalar(h),
        }
    }

    /// `(K, ρ_ω)` with `ρ_ω(∂) = ∂ + ω(∂)`.
    pub fn from_form(w: &OneForm) -> Self {
        Self::rank1(w.coeff().clone())
    }

    pub fn modulus(&self) -> u32 {
        self.a.modulus()
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    /// `∇_∂(v) = v' + A v`.
    pub fn apply(&self, v: &[RatFun]) -> RatVector {
        let av = self.a.mul_vec(v);
        v.iter()
            .zip(av)
            .map(|(x, y)| &x.derivative() + &y)
            .collect()
    }

    pub fn apply_n(&self, k: usize, v: &[RatFun]) -> RatVector {
        (0..k).fold(v.to_vec(), |acc, _| self.apply(&acc))
    }

    /// `∇_{f∂}(v) = f ∇_∂(v)`.
    pub fn apply_derivation(&self, d: &Derivation, v: &[RatFun]) -> RatVector {
        self.apply(v).iter().map(|x| d.coeff() * x).collect()
    }

    /// Checks `∇(a x) = a ∇(x) + ∂(a) x` on `samples` seeded random pairs.
    pub fn leibniz_holds(&self, seed: u64, samples: usize) -> bool {
        let p = self.modulus();
        let mut rng = trial_rng(seed, 0);
        (0..samples).all(|_| {
            let a = random_ratfun(&mut rng, p, 2);
            let x: RatVector = (0..self.dim())
                .map(|_| random_ratfun(&mut rng, p, 2))
                .collect();
            let ax: RatVector = x.iter().map(|xi| &a * xi).collect();
            let lhs = self.apply(&ax);
            let da = a.derivative();
            let rhs: RatVector = self
                .apply(&x)
                .iter()
                .zip(&x)
                .map(|(nx, xi)| &(&a * nx) + &(&da * xi))
                .collect();
            lhs == rhs
        })
    }
}

fn check_pair(c1: &MatrixConnection, c2: &MatrixConnection) -> Result<(), ConnError> {
    if c1.modulus() == c2.modulus() {
        Ok(())
    } else {
        Err(ConnError::Mismatch(c1.modulus(), c2.modulus()))
    }
}

pub fn conn_sum(
    c1: &MatrixConnection,
    c2: &MatrixConnection,
) -> Result<MatrixConnection, ConnError> {
    check_pair(c1, c2)?;
    Ok(MatrixConnection {
        a: c1.a.block_diag(&c2.a),
    })
}

/// `A₁ ⊗ I + I ⊗ A₂` on the basis `e_i ⊗ f_j`, index `i·n₂ + j`.
pub fn conn_tensor(
    c1: &MatrixConnection,
    c2: &MatrixConnection,
) -> Result<MatrixConnection, ConnError> {
    check_pair(c1, c2)?;
    Ok(MatrixConnection {
        a: c1.a.kron_sum(&c2.a)?,
    })
}

/// `Λ^l` on the lexicographically ordered basis `e_S`, `|S| = l`.
pub fn conn_exterior(c: &MatrixConnection, l: usize) -> Result<MatrixConnection, ConnError> {
    if l > c.dim() {
        return Err(ConnError::DegreeOutOfRange { l, n: c.dim() });
    }
    Ok(MatrixConnection {
        a: wedge::exterior_matrix(&c.a, l),
    })
}

/// `Sym^l` on the basis of sorted multi-indices.
pub fn conn_sym(c: &MatrixConnection, l: usize) -> MatrixConnection {
    MatrixConnection {
        a: wedge::sym_matrix(&c.a, l),
    }
}

/// `ψ(∂) = -M_p` with `M_1 = A`, `M_{k+1} = M_k' + A M_k`, so that
/// `∇^k e = M_k e` for constant vectors `e`. Cross-checked against `p`-fold application of `∇` on probe vectors.
pub fn p_curvature_matrix(c: &MatrixConnection) -> Result<RatMatrix, ConnError> {
    let p = c.modulus();
    let mut m = c.a.clone();
    for _ in 1..p {
        m = m.derivative().add(&c.a.mul(&m)?)?;
    }
    let mut rng = trial_rng(0xc0ffee, c.dim() as u64);
    for _ in 0..3 {
        let v: RatVector = (0..c.dim())
            .map(|_| random_ratfun(&mut rng, p, 2))
            .collect();
        let direct = c.apply_n(p as usize, &v);
        // ∇^p is K-linear, so ∇^p v = M_p v.
        if direct != m.mul_vec(&v) {
            return Err(ConnError::InternalCheck(
                "p-curvature recursion disagrees with ∇^p".into(),
            ));
        }
    }
    Ok(m.neg())
}

/// `A' = G^{-1}(A G + G')`, the matrix of `∇` in the basis given by the
/// columns of `G`.
pub fn gauge_transform(c: &MatrixConnection, g: &RatMatrix) -> Result<MatrixConnection, ConnError> {
    let inv = g.inverse()?;
    let a = inv.mul(&c.a.mul(g)?.add(&g.derivative())?)?;
    MatrixConnection::new(a)
}

/// `A = -G' G^{-1}`, the connection whose horizontal sections are the
/// columns of `G`.
pub fn gauge_trivial(g: &RatMatrix) -> Result<MatrixConnection, ConnError> {
    let inv = g.inverse()?;
    MatrixConnection::new(g.derivative().mul(&inv)?.neg())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub i: usize,
    /// Dimension of `F_i / F_{i+1}`.
    pub quotient_dim: usize,
    pub stable: bool,
    pub quotient_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub l: usize,
    pub steps: Vec<FiltrationStep>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.stable && s.quotient_matches)
    }

    pub fn first_failure(&self) -> Option<&FiltrationStep> {
        self.steps
            .iter()
            .find(|s| !(s.stable && s.quotient_matches))
    }
}

/// `V` with matrix `[[A_U, B], [0, A_W]]`, an extension `0 → U → V → W → 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactTriple {
    a_u: RatMatrix,
    b: RatMatrix,
    a_w: RatMatrix,
}

impl ExactTriple {
    pub fn new(a_u: RatMatrix, b: RatMatrix, a_w: RatMatrix) -> Result<Self, ConnError> {
        let p = a_u.modulus();
        for m in [&b, &a_w] {
            if m.modulus() != p {
                return Err(ConnError::Mismatch(p, m.modulus()));
            }
        }
        let ok = a_u.is_square()
            && a_w.is_square()
            && a_u.rows() > 0
            && a_w.rows() > 0
            && b.rows() == a_u.rows()
            && b.cols() == a_w.rows();
        if !ok {
            return Err(ConnError::Shape);
        }
        Ok(ExactTriple { a_u, b, a_w })
    }

    pub fn modulus(&self) -> u32 {
        self.a_u.modulus()
    }

    pub fn sub(&self) -> MatrixConnection {
        MatrixConnection {
            a: self.a_u.clone(),
        }
    }

    pub fn quotient(&self) -> MatrixConnection {
        MatrixConnection {
            a: self.a_w.clone(),
        }
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn total(&self) -> MatrixConnection {
        let (a, b) = (self.a_u.rows(), self.a_w.rows());
        let mut m = self.a_u.block_diag(&self.a_w);
        for i in 0..a {
            for j in 0..b {
                m.set(i, a + j, self.b.get(i, j).clone());
            }
        }
        MatrixConnection { a: m }
    }
}

/// Checks that `F_i = span{e_S : |S ∩ U| ≥ i}` is a filtration of `Λ^l V`
/// by sub-connections with `F_i/F_{i+1} ≅ Λ^i U ⊗ Λ^{l-i} W`.
pub fn filtration_check(t: &ExactTriple, l: usize) -> Result<FiltrationReport, ConnError> {
    let a = t.a_u.rows();
    let n = a + t.a_w.rows();
    if l < 2 || l > n {
        return Err(ConnError::DegreeOutOfRange { l, n });
    }
    let big = conn_exterior(&t.total(), l)?;
    let basis = subsets(n, l);
    let u_count: Vec<usize> = basis
        .iter()
        .map(|s| s.iter().filter(|&&x| x < a).count())
        .collect();
    let mut steps = vec![];
    for i in 0..=l {
        let in_fi: Vec<usize> = (0..basis.len()).filter(|&k| u_count[k] >= i).collect();
        let stable = in_fi.iter().all(|&col| {
            (0..basis.len())
                .filter(|&row| u_count[row] < i)
                .all(|row| big.a.get(row, col).is_zero())
        });
        let exact: Vec<usize> = (0..basis.len()).filter(|&k| u_count[k] == i).collect();
        let quotient_matches = if exact.is_empty() {
            true
        } else {
            let induced = big.a.submatrix(&exact, &exact);
            let expected = conn_tensor(
                &conn_exterior(&t.sub(), i)?,
                &conn_exterior(&t.quotient(), l - i)?,
            )?;
            induced == expected.a
        };
        steps.push(FiltrationStep {
            i,
            quotient_dim: exact.len(),
            stable,
            quotient_matches,
        });
    }
    Ok(FiltrationReport { l, steps })
}

/// A `K^p`-basis of the horizontal sections `{v : ∇v = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalSections {
    pub vectors: Vec<RatVector>,
}

impl HorizontalSections {
    /// Dimension over `K^p = F_p(t^p)`.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }
}

/// Coordinates of `v ∈ K^n` over `F_p(s)`, `s = t^p`, in the basis
/// `t^i e_j` (index `j·p + i`).
pub fn kp_coordinates(v: &[RatFun]) -> RatVector {
    v.iter().flat_map(RatFun::frobenius_components).collect()
}

fn from_kp_coordinates(p: u32, n: usize, coords: &[RatFun]) -> RatVector {
    let p_us = p as usize;
    (0..n)
        .map(|j| {
            (0..p_us).fold(RatFun::zero(p), |acc, i| {
                let monomial = RatFun::from_poly(crate::exact_arith::FpPoly::monomial(1, i, p));
                &acc + &(&monomial * &coords[j * p_us + i].frobenius())
            })
        })
        .collect()
}

/// Solves `∇v = 0` as a `pn × pn` linear system over `F_p(s)`.
pub fn horizontal_sections(c: &MatrixConnection) -> Result<HorizontalSections, ConnError> {
    let p = c.modulus();
    let (n, p_us) = (c.dim(), p as usize);
    let mut columns = Vec::with_capacity(n * p_us);
    for j in 0..n {
        for i in 0..p_us {
            let mut e = vec![RatFun::zero(p); n];
            e[j] = RatFun::from_poly(crate::exact_arith::FpPoly::monomial(1, i, p));
            columns.push(kp_coordinates(&c.apply(&e)));
        }
    }
    let system = RatMatrix::from_columns(p, n * p_us, &columns);
    let mut vectors = vec![];
    for coords in system.kernel() {
        let v = from_kp_coordinates(p, n, &coords);
        if c.apply(&v).iter().any(|x| !x.is_zero()) {
            return Err(ConnError::InternalCheck(
                "solution is not horizontal".into(),
            ));
        }
        vectors.push(v);
    }
    Ok(HorizontalSections { vectors })
}

/// Whether `w` lies in the `K^p`-span of `basis`.
pub fn in_kp_span(p: u32, basis: &[RatVector], w: &[RatFun]) -> bool {
    let rows = w.len() * p as usize;
    let mut columns: Vec<RatVector> = basis.iter().map(|v| kp_coordinates(v)).collect();
    let before = RatMatrix::from_columns(p, rows, &columns).rank();
    columns.push(kp_coordinates(w));
    RatMatrix::from_columns(p, rows, &columns).rank() == before
}

/// Position of each basis multi-index, for building induced matrices.
pub(crate) fn index_of(basis: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect()
}
