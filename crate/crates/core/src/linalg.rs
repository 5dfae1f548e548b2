//! Small exact linear algebra over ℤ and ℚ.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is arbitrary precision,
//! so nothing can wrap around.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result, Q};

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
        .collect()
}

pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Diagonal of the Smith normal form, zeros dropped, each entry positive and
/// dividing the next.
pub fn smith_diagonal(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a = to_big(m);
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let f = a[i][t].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for j in t..cols {
                        let v = &f * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for i in t..rows {
                        let v = &f * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must also divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for r in a.iter_mut() {
                    r.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Signature `(positive, negative, zero)` of a symmetric matrix.
///
/// Congruence elimination over ℚ. A nonzero diagonal entry is used as a pivot
/// when one exists; otherwise a hyperbolic 2×2 block `[[0,c],[c,0]]` is split
/// off, contributing one positive and one negative square.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let mut a = to_rational(m);
    let mut idx: Vec<usize> = (0..m.len()).collect();
    let (mut pos, mut neg) = (0, 0);
    while !idx.is_empty() {
        if let Some(p) = idx.iter().position(|&i| !a[i][i].is_zero()) {
            let i = idx.remove(p);
            let piv = a[i][i].clone();
            if piv.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &k in &idx {
                for &l in &idx {
                    let v = &a[k][i] * &a[i][l] / &piv;
                    a[k][l] -= v;
                }
            }
            continue;
        }
        let pair = idx
            .iter()
            .enumerate()
            .find_map(|(p, &i)| idx[p + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (i, j)));
        let Some((i, j)) = pair else { break };
        pos += 1;
        neg += 1;
        idx.retain(|&k| k != i && k != j);
        let c = a[i][j].clone();
        for &k in &idx {
            for &l in &idx {
                let v = (&a[k][i] * &a[j][l] + &a[k][j] * &a[i][l]) / &c;
                a[k][l] -= v;
            }
        }
    }
    (pos, neg, m.len() - pos - neg)
}

/// Solves `m x = rhs` for square nonsingular `m`. Returns `None` when singular.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in c..=n {
            a[c][j] = &a[c][j] / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut s: i128 = 0;
            for t in 0..k {
                s += a[i][t] as i128 * b[t][j] as i128;
            }
            out[i][j] = i64::try_from(s).map_err(|_| Error::Overflow("matrix product"))?;
        }
    }
    Ok(out)
}

pub fn mat_vec(a: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .map(|r| {
            let s: i128 = r.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum();
            i64::try_from(s).map_err(|_| Error::Overflow("matrix-vector product"))
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Converts a rational known to be an integer.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
