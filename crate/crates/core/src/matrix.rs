//! Dense matrices over `F_p(t)` with exact Gaussian elimination.

use std::fmt;

use thiserror::Error;

use crate::exact_arith::RatFun;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("characteristic mismatch: {0} vs {1}")]
    Mismatch(u32, u32),
}

pub type RatVector = Vec<RatFun>;

/// Row-major `rows × cols` matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl RatMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        RatMatrix {
            p,
            rows,
            cols,
            data: vec![RatFun::zero(p); rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, RatFun::one(p));
        }
        m
    }

    pub fn from_rows(p: u32, rows: Vec<Vec<RatFun>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Shape("ragged rows".into()));
            }
            for x in row {
                if x.modulus() != p {
                    return Err(MatrixError::Mismatch(p, x.modulus()));
                }
                data.push(x);
            }
        }
        Ok(RatMatrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_columns(p: u32, rows: usize, columns: &[RatVector]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// `1×1` matrix.
    pub fn scalar(x: RatFun) -> Self {
        RatMatrix {
            p: x.modulus(),
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn diagonal(p: u32, entries: &[RatFun]) -> Self {
        let mut m = Self::zeros(p, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RatFun) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFun>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RatFun) -> RatFun) -> Self {
        RatMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.p != other.p {
            return Err(MatrixError::Mismatch(self.p, other.p));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = &*x + y;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn scale(&self, a: &RatFun) -> Self {
        self.map(|x| a * x)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.p != other.p {
            return Err(MatrixError::Mismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[RatFun]) -> RatVector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(RatFun::zero(self.p), |acc, (a, x)| &acc + &(a * x))
            })
            .collect()
    }

    /// Entrywise `d/dt`.
    pub fn derivative(&self) -> Self {
        self.map(RatFun::derivative)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> RatFun {
        (0..self.rows.min(self.cols)).fold(RatFun::zero(self.p), |acc, i| &acc + self.get(i, i))
    }

    /// Kronecker product; index `(i, j)` of `A ⊗ B` is `i·dim B + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// `A ⊗ I + I ⊗ B` for square `A`, `B`.
    pub fn kron_sum(&self, other: &Self) -> Result<Self, MatrixError> {
        if !self.is_square() || !other.is_square() {
            return Err(MatrixError::Shape("kron_sum needs square matrices".into()));
        }
        let left = self.kron(&Self::identity(self.p, other.rows));
        let right = Self::identity(self.p, self.rows).kron(other);
        left.add(&right)
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let v = &inv * m.get(r, j);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<RatVector> {
        let (r, pivots) = self.rref();
        let mut basis = vec![];
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![RatFun::zero(self.p); self.cols];
            v[free] = RatFun::one(self.p);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<RatFun, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape(
                "determinant of a non-square matrix".into(),
            ));
        }
        let mut m = self.clone();
        let mut det = RatFun::one(self.p);
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(RatFun::zero(self.p));
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, RatFun::one(self.p));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&idx, &right))
    }

    /// Solves `A x = b` for square invertible `A`.
    pub fn solve(&self, b: &[RatFun]) -> Result<RatVector, MatrixError> {
        let inv = self.inverse()?;
        Ok(inv.mul_vec(b))
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_ratfun, trial_rng};

    fn random_matrix(seed: u64, p: u32, n: usize) -> RatMatrix {
        let mut rng = trial_rng(seed, 0);
        let rows = (0..n)
            .map(|_| (0..n).map(|_| random_ratfun(&mut rng, p, 2)).collect())
            .collect();
        RatMatrix::from_rows(p, rows).unwrap()
    }

    #[test]
    fn inverse_and_det() {
        for seed in 0..10 {
            let m = random_matrix(seed, 5, 3);
            match m.inverse() {
                Ok(inv) => {
                    assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(5, 3));
                    assert!(!m.det().unwrap().is_zero());
                }
                Err(_) => assert!(m.det().unwrap().is_zero()),
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let a = random_matrix(1, 3, 3);
        let b = random_matrix(2, 3, 3);
        assert_eq!(
            a.mul(&b).unwrap().det().unwrap(),
            &a.det().unwrap() * &b.det().unwrap()
        );
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let p = 3;
        let a = random_matrix(4, p, 3);
        let b = a
            .mul(&RatMatrix::diagonal(
                p,
                &[RatFun::one(p), RatFun::one(p), RatFun::zero(p)],
            ))
            .unwrap();
        let ker = b.kernel();
        assert_eq!(ker.len() + b.rank(), 3);
        for v in ker {
            assert!(b.mul_vec(&v).iter().all(RatFun::is_zero));
        }
    }

    #[test]
    fn kron_sum_of_scalars() {
        let p = 7;
        let a = RatMatrix::scalar(RatFun::t(p));
        let b = RatMatrix::scalar(RatFun::from_int(3, p));
        assert_eq!(
            a.kron_sum(&b).unwrap(),
            RatMatrix::scalar(&RatFun::t(p) + &RatFun::from_int(3, p))
        );
    }

    #[test]
    fn derivative_obeys_leibniz() {
        let a = random_matrix(5, 5, 2);
        let b = random_matrix(6, 5, 2);
        let lhs = a.mul(&b).unwrap().derivative();
        let rhs = a
            .derivative()
            .mul(&b)
            .unwrap()
            .add(&a.mul(&b.derivative()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
