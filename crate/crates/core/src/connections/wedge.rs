//! Induced matrices on exterior and symmetric powers.

use super::index_of;
use crate::matrix::RatMatrix;

/// Strictly increasing `l`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, l, &mut vec![], &mut out);
    out
}

/// Non-decreasing `l`-tuples from `0..n` in lexicographic order.
pub fn multisets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, l, &mut vec![], &mut out);
    out
}

/// Sorts `v` in place and returns the sign of the sorting permutation.
fn sort_with_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Derivation action of `A` on `Λ^l`: `A` applied in one slot, summed over
/// slots.
pub(super) fn exterior_matrix(a: &RatMatrix, l: usize) -> RatMatrix {
    let p = a.modulus();
    let basis = subsets(a.rows(), l);
    let index = index_of(&basis);
    let mut out = RatMatrix::zeros(p, basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for slot in 0..l {
            for r in 0..a.rows() {
                let x = a.get(r, s[slot]);
                if x.is_zero() || (r != s[slot] && s.contains(&r)) {
                    continue;
                }
                let mut target = s.clone();
                target[slot] = r;
                let sign = sort_with_sign(&mut target);
                let row = index[&target];
                let term = if sign < 0 { -x } else { x.clone() };
                let v = out.get(row, col) + &term;
                out.set(row, col, v);
            }
        }
    }
    out
}

pub(super) fn sym_matrix(a: &RatMatrix, l: usize) -> RatMatrix {
    let p = a.modulus();
    let basis = multisets(a.rows(), l);
    let index = index_of(&basis);
    let mut out = RatMatrix::zeros(p, basis.len(), basis.len());
    for (col, s) in basis.iter().enumerate() {
        for slot in 0..l {
            for r in 0..a.rows() {
                let x = a.get(r, s[slot]);
                if x.is_zero() {
                    continue;
                }
                let mut target = s.clone();
                target[slot] = r;
                target.sort_unstable();
                let row = index[&target];
                let v = out.get(row, col) + x;
                out.set(row, col, v);
            }
        }
    }
    out
}
