//! Dense linear algebra over a [`Field`]. Matrices are row-major `Vec<Vec<Fe>>`.

use crate::error::{LrcError, Result};
use crate::field::{Fe, Field};

pub type Matrix = Vec<Vec<Fe>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in c..cols {
                    let v = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    let mut w = m.clone();
    rref(f, &mut w).len()
}

/// Basis of `{v : m·v = 0}`, in canonical RREF order (one vector per free column).
pub fn nullspace(f: &Field, m: &Matrix, ncols: usize) -> Vec<Vec<Fe>> {
    let mut w = m.clone();
    let pivots = rref(f, &mut w);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fe::ZERO; ncols];
            v[fc] = Fe::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(w[i][fc]);
            }
            v
        })
        .collect()
}

pub fn det(f: &Field, m: &Matrix) -> Fe {
    let n = m.len();
    let mut w = m.clone();
    let mut d = Fe::ONE;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Fe::ZERO;
        };
        if pr != c {
            w.swap(pr, c);
            d = f.neg(d);
        }
        d = f.mul(d, w[c][c]);
        let inv = f.inv(w[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let factor = f.mul(w[i][c], inv);
            for j in c..n {
                let v = f.mul(factor, w[c][j]);
                w[i][j] = f.sub(w[i][j], v);
            }
        }
    }
    d
}

/// Solves the square system `m·x = b`.
pub fn solve(f: &Field, m: &Matrix, b: &[Fe]) -> Result<Vec<Fe>> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(LrcError::DegenerateSystem("singular square system".into()));
    }
    Ok(aug.iter().map(|row| row[n]).collect())
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| f.sum((0..inner).map(|k| f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(f: &Field, v: &[Fe], m: &Matrix) -> Vec<Fe> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![Fe::ZERO; cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, &e) in out.iter_mut().zip(row) {
            *o = f.add(*o, f.mul(*x, e));
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec(f: &Field, m: &Matrix, v: &[Fe]) -> Vec<Fe> {
    m.iter()
        .map(|row| f.sum(row.iter().zip(v).map(|(&a, &b)| f.mul(a, b))))
        .collect()
}

pub fn submatrix(m: &Matrix, rows: &[usize]) -> Matrix {
    rows.iter().map(|&i| m[i].clone()).collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// First `k`-row subset whose square submatrix is singular, if any.
pub fn first_singular_minor(f: &Field, m: &Matrix, k: usize) -> Option<Vec<usize>> {
    combinations(m.len(), k)
        .into_iter()
        .find(|rows| det(f, &submatrix(m, rows)).is_zero())
}
