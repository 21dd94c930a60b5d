//! Exact rational linear algebra.
//!
//! Matrices are plain row-major `Vec<Vec<Q>>`. All routines are exact; the
//! column count is passed explicitly so that empty matrices behave.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Row-major rational matrix.
pub type Matrix = Vec<Vec<Q>>;

/// Integer as a rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`. Panics when `d == 0`.
pub fn qf(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Zero vector of length `n`.
pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

/// Unit vector `e_i` of length `n`.
pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

/// `a + b` componentwise.
pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b` componentwise.
pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `s * a`.
pub fn scale(s: &Q, a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| s * x).collect()
}

/// `a += s * b` in place.
pub fn axpy(a: &mut [Q], s: &Q, b: &[Q]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += s * y;
    }
}

/// Standard dot product.
pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// True when every entry is zero.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `m * v`.
pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// `v^T * m`, i.e. the combination of rows of `m` with coefficients `v`.
pub fn vec_mat(v: &[Q], m: &[Vec<Q>], ncols: usize) -> Vec<Q> {
    let mut out = zeros(ncols);
    for (c, row) in v.iter().zip(m) {
        axpy(&mut out, c, row);
    }
    out
}

/// Transpose of an `nrows x ncols` matrix.
pub fn transpose(m: &[Vec<Q>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form together with pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows of the reduced form.
    pub rows: Matrix,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of `m`, which has `ncols` columns.
pub fn rref(m: &[Vec<Q>], ncols: usize) -> Rref {
    let mut a: Matrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}

/// Rank of `m` (a matrix with `ncols` columns).
pub fn rank(m: &[Vec<Q>], ncols: usize) -> usize {
    rref(m, ncols).pivots.len()
}

/// A basis of `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<Q>], ncols: usize) -> Matrix {
    let r = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = zeros(ncols);
            x[f] = Q::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &[Vec<Q>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let red = rref(&aug, 2 * n);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    Some(red.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Outcome of solving `A X = B`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    /// The unique solution, one row per unknown.
    Unique(Matrix),
    /// `A` has a nontrivial kernel.
    Underdetermined,
    /// The system has no solution; the index is the first equation violated
    /// by the solution of a maximal independent subsystem.
    Inconsistent(usize),
}

/// Solves `A X = B` where `A` is `m x n` and `B` is `m x k`.
pub fn solve(a: &[Vec<Q>], n: usize, b: &[Vec<Q>], k: usize) -> Solution {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (i, row) in a.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis, n) > chosen.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
        if chosen.len() == n {
            break;
        }
    }
    if chosen.len() < n {
        return Solution::Underdetermined;
    }
    let square: Matrix = chosen.iter().map(|&i| a[i].clone()).collect();
    let inv = inverse(&square).expect("independent rows form an invertible block");
    let rhs: Matrix = chosen.iter().map(|&i| b[i].clone()).collect();
    let x: Matrix = inv.iter().map(|row| vec_mat(row, &rhs, k)).collect();
    for (i, (arow, brow)) in a.iter().zip(b).enumerate() {
        if vec_mat(arow, &x, k) != *brow {
            return Solution::Inconsistent(i);
        }
    }
    Solution::Unique(x)
}

/// Solves the single right-hand side system `A x = b`.
pub fn solve_vec(a: &[Vec<Q>], n: usize, b: &[Q]) -> Solution {
    let bm: Matrix = b.iter().map(|x| vec![x.clone()]).collect();
    match solve(a, n, &bm, 1) {
        Solution::Unique(x) => Solution::Unique(vec![x.into_iter().map(|r| r[0].clone()).collect()]),
        other => other,
    }
}

/// Integer vector if every entry is integral.
pub fn to_integers(v: &[Q]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Rescales `v` by a positive rational to a primitive integer vector
/// (coprime entries). The zero vector is returned unchanged.
pub fn primitive(v: &[Q]) -> Vec<Q> {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g))
        .collect()
}

/// Whether `v` is a positive rational multiple of `w`.
pub fn same_direction(v: &[Q], w: &[Q]) -> bool {
    let Some(i) = w.iter().position(|x| !x.is_zero()) else {
        return is_zero_vec(v);
    };
    let s = &v[i] / &w[i];
    s.is_positive() && v.iter().zip(w).all(|(a, b)| *a == &s * b)
}
