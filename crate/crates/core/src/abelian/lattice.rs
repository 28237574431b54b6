//! Sub-lattices of `Z^n` given by spanning columns, and the quotients
//! between them. Everything here reduces to one Smith normal form call.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::smith_normal_form;
use super::{FgAbGroup, IntMatrix};

/// Integer solution `y` of `a * y = x`, if one exists.
pub fn solve(a: &IntMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), x.len());
    let s = smith_normal_form(a);
    let ux = s.u.mul_vec(x);
    let diag = s.diagonal();
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, c) in ux.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_default();
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        }
    }
    Some(s.v.mul_vec(&z))
}

pub fn contains(a: &IntMatrix, x: &[BigInt]) -> bool {
    solve(a, x).is_some()
}

/// Columns spanning `{ y : a * y = 0 }`; they are linearly independent.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    s.v.select_cols(&idx)
}

/// Linearly independent columns spanning the same lattice as the columns of `a`.
pub fn column_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    let factors = s.invariant_factors();
    let cols: Vec<Vec<BigInt>> = factors
        .iter()
        .enumerate()
        .map(|(i, d)| s.u_inv.column(i).into_iter().map(|x| x * d).collect())
        .collect();
    IntMatrix::from_columns(a.rows(), &cols)
}

/// The group `span(outer) / span(inner)`, where `outer` has independent columns
/// and every column of `inner` lies in `span(outer)`.
pub fn subquotient(outer: &IntMatrix, inner: &IntMatrix) -> FgAbGroup {
    let coeffs: Vec<Vec<BigInt>> = inner
        .columns()
        .iter()
        .map(|c| solve(outer, c).expect("inner lattice must lie in outer lattice"))
        .collect();
    FgAbGroup::cokernel(&IntMatrix::from_columns(outer.cols(), &coeffs))
}

/// True when every column of `inner` lies in the span of `outer`.
pub fn includes(outer: &IntMatrix, inner: &IntMatrix) -> bool {
    inner.columns().iter().all(|c| contains(outer, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn membership() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert!(contains(&a, &v(&[4, 9])));
        assert!(!contains(&a, &v(&[1, 0])));
        let y = solve(&a, &v(&[4, -3])).unwrap();
        assert_eq!(a.mul_vec(&y), v(&[4, -3]));
    }

    #[test]
    fn kernel_of_row() {
        let a = IntMatrix::from_rows(&[[2, 4]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        let c = k.column(0);
        assert!(a.mul_vec(&c).iter().all(Zero::is_zero));
        // primitive generator: (2, -1) up to sign
        assert_eq!(c.iter().map(|x| x * x).sum::<BigInt>(), BigInt::from(5));
    }

    #[test]
    fn basis_spans_same_lattice() {
        let a = IntMatrix::from_rows(&[[2, 4, 6], [1, 2, 3]]);
        let b = column_basis(&a);
        assert_eq!(b.cols(), 1);
        assert!(includes(&a, &b) && includes(&b, &a));
    }
}
