//! Reference data and brute-force oracles shared by the integration tests.
//! Nothing here calls into the algorithms under test.
#![allow(dead_code)]

use mtspec::abelian::{FgAbGroup, GroupHom, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// `(row, degree, free rank, torsion orders, generator names)`, typed in by
/// hand from the published table.
pub type Row = (&'static str, u32, usize, &'static [u64], &'static [&'static str]);

pub const COHOMOLOGY: &[Row] = &[
    ("E4", 0, 1, &[], &["u"]),
    ("E4", 1, 0, &[], &[]),
    ("E4", 2, 0, &[], &[]),
    ("E4", 3, 0, &[2], &["W3u"]),
    ("E4", 4, 2, &[], &["eu", "p1u"]),
    ("E4", 5, 0, &[], &[]),
    ("E3", 0, 1, &[], &["u"]),
    ("E3", 1, 0, &[], &[]),
    ("E3", 2, 0, &[], &[]),
    ("E3", 3, 0, &[2], &["W3u"]),
    ("E3", 4, 1, &[], &["p1u"]),
    ("E3", 5, 0, &[], &[]),
    ("E2", 0, 1, &[], &["u"]),
    ("E2", 1, 0, &[], &[]),
    ("E2", 2, 1, &[], &["cu"]),
    ("E2", 3, 0, &[], &[]),
    ("E2", 4, 1, &[], &["c^2u"]),
    ("E2", 5, 0, &[], &[]),
    ("P4", 0, 0, &[], &[]),
    ("P4", 1, 0, &[], &[]),
    ("P4", 2, 0, &[], &[]),
    ("P4", 3, 0, &[], &[]),
    ("P4", 4, 2, &[], &["psi", "sigma"]),
    ("P4", 5, 0, &[], &[]),
    ("P3", 0, 0, &[], &[]),
    ("P3", 1, 0, &[], &[]),
    ("P3", 2, 0, &[], &[]),
    ("P3", 3, 0, &[], &[]),
    ("P3", 4, 1, &[], &["rho"]),
    ("P3", 5, 0, &[], &[]),
    ("P2", 0, 0, &[], &[]),
    ("P2", 1, 0, &[], &[]),
    ("P2", 2, 1, &[], &["tau"]),
    ("P2", 3, 0, &[], &[]),
    ("P2", 4, 1, &[], &["rho"]),
    ("P2", 5, 0, &[], &[]),
];

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn q(n: i64, d: i64) -> mtspec::exact::Unit {
    mtspec::exact::Unit::ratio(n, d).expect("nonzero")
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}` with
/// `D_k` the gcd of all `k x k` minors.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> Vec<BigInt> {
    let rows: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=a.rows().min(a.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// Every element of a finite group as a coordinate vector.
pub fn elements(g: &FgAbGroup) -> Vec<Vec<i64>> {
    assert_eq!(g.free_rank(), 0);
    let mut out = vec![Vec::new()];
    for d in g.torsion() {
        let d = d.to_i64().unwrap();
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

pub fn apply(h: &GroupHom, x: &[i64]) -> Vec<i64> {
    let m = h.matrix();
    let orders: Vec<i64> = h.target().torsion().iter().map(|d| d.to_i64().unwrap()).collect();
    (0..m.rows())
        .map(|i| {
            let s: i64 = (0..m.cols()).map(|j| m[(i, j)].to_i64().unwrap() * x[j]).sum();
            s.rem_euclid(orders[i])
        })
        .collect()
}

/// Exactness at the middle of `A -f-> B -g-> C` by listing elements.
pub struct Chase {
    pub composite_zero: bool,
    pub image_order: usize,
    pub kernel_order: usize,
    pub exact: bool,
}

pub fn chase(f: &GroupHom, g: &GroupHom) -> Chase {
    use std::collections::BTreeSet;
    let image: BTreeSet<Vec<i64>> = elements(f.source()).iter().map(|a| apply(f, a)).collect();
    let zero_c = vec![0; g.target().ngens()];
    let kernel: BTreeSet<Vec<i64>> = elements(g.source())
        .into_iter()
        .filter(|b| apply(g, b) == zero_c)
        .collect();
    Chase {
        composite_zero: image.is_subset(&kernel),
        image_order: image.len(),
        kernel_order: kernel.len(),
        exact: image == kernel,
    }
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    m.rows() == m.cols() && det(&rows).abs() == BigInt::from(1)
}
