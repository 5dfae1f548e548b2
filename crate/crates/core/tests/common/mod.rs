#![allow(dead_code)]

use k3dp::singularity::ResolutionGraph;
use k3dp::Q;
use num_traits::{One, Zero};

/// Hirzebruch–Jung expansion by repeated ceiling division.
pub fn hj_oracle(n: i64, q: i64) -> Vec<i64> {
    let (mut a, mut b) = (n, q);
    let mut out = Vec::new();
    while b > 0 {
        let c = (a + b - 1) / b;
        out.push(c);
        (a, b) = (b, c * b - a);
    }
    out
}

/// Evaluates [b1, ..., bk] as a reduced fraction, back to front.
pub fn hj_value_oracle(bs: &[i64]) -> (i64, i64) {
    let (mut num, mut den) = (1i64, 0i64);
    for &b in bs.iter().rev() {
        (num, den) = (b * num - den, num);
    }
    (num, den)
}

pub fn inverse_mod(q: i64, n: i64) -> i64 {
    (1..n).find(|x| (x * q) % n == 1).unwrap_or(0)
}

/// Plain Gauss–Jordan over the rationals.
pub fn solve_q(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().zip(rhs).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = Q::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let v = a[col][c].clone() * f.clone();
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Discrepancies from adjunction, using only self-intersections and edges.
pub fn discrepancy_oracle(g: &ResolutionGraph) -> Vec<Q> {
    let n = g.self_ints.len();
    let mut m = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        m[i][i] = Q::from_integer(g.self_ints[i].into());
    }
    for &(a, b) in &g.edges {
        m[a][b] += Q::one();
        m[b][a] += Q::one();
    }
    let rhs: Vec<Q> = g.self_ints.iter().map(|&s| Q::from_integer((-2 - s).into())).collect();
    solve_q(&m, &rhs).expect("negative definite")
}

pub fn qq(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn line(n: usize, ok: bool, detail: &str) -> String {
    format!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" })
}

pub mod nefify_gen;

/// `ρ(Z) = 10 − K_Z² − (Σ a_i E_i)² − #E` from Noether's formula on the minimal resolution.
pub fn noether_rho(k2: &Q, sing: &[k3dp::singularity::Symbol]) -> Q {
    let mut rho = Q::from_integer(10.into()) - k2;
    for s in sing {
        let g = k3dp::singularity::minimal_graph(s).unwrap();
        let a = discrepancy_oracle(&g);
        let m = g.intersection_matrix();
        for i in 0..a.len() {
            for j in 0..a.len() {
                rho -= a[i].clone() * a[j].clone() * Q::from_integer(m[i][j].into());
            }
        }
        rho -= Q::from_integer((g.len() as i64).into());
    }
    rho
}
