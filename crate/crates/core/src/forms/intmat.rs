//! Dense integer matrices: exact determinant, Smith normal form with
//! transforms, integer kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn zeros(m: usize, n: usize) -> Mat {
    vec![vec![BigInt::zero(); n]; m]
}

pub fn transpose(a: &Mat) -> Mat {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Product of an m x k and a k x n matrix; `cols` gives n when k = 0.
pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n).map(|j| row.iter().zip(b.iter()).fold(BigInt::zero(), |acc, (x, br)| acc + x * &br[j])).collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &Mat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// U A V = diag(d), U and V unimodular, each d_i dividing the next, d_i >= 0.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith(a: &Mat) -> Smith {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut a = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);

    fn row_axpy(x: &mut Mat, dst: usize, src: usize, q: &BigInt) {
        let s = x[src].clone();
        for (d, s) in x[dst].iter_mut().zip(s.iter()) {
            *d -= q * s;
        }
    }
    fn col_axpy(x: &mut Mat, dst: usize, src: usize, q: &BigInt) {
        for r in x.iter_mut() {
            let s = r[src].clone();
            r[dst] -= q * s;
        }
    }
    fn swap_cols(x: &mut Mat, i: usize, j: usize) {
        for r in x.iter_mut() {
            r.swap(i, j);
        }
    }

    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = match best {
                Some(p) => p,
                None => {
                    let diag = (0..m.min(n)).map(|i| a[i][i].clone()).collect();
                    return Smith { u, v, diag };
                }
            };
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diag = (0..m.min(n)).map(|i| a[i][i].clone()).collect();
    Smith { u, v, diag }
}

/// Basis of the integer kernel {x in Z^n : A x = 0}, as columns of an
/// n x k matrix. The kernel is saturated.
pub fn kernel(a: &Mat, n: usize) -> Mat {
    if a.is_empty() {
        return identity(n);
    }
    let s = smith(a);
    let r = s.rank();
    (0..n).map(|i| s.v[i][r..].to_vec()).collect()
}

/// Inverse of a unimodular matrix (None if the determinant is not +-1).
pub fn unimodular_inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let s = smith(a);
    if s.diag.iter().any(|d| !d.is_one()) || s.diag.len() != n {
        return None;
    }
    // U A V = I, so A^-1 = V U
    Some(mul(&s.v, &s.u))
}
