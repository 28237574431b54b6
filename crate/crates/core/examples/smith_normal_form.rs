//! Smith normal form of the restriction matrix for (4;4) -> (4;3) theories,
//! and the cokernel it presents.

use mtspec::abelian::{smith_normal_form, FgAbGroup, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[[2, -1], [0, 3]]);
    let s = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("U =\n{}", s.u);
    println!("V =\n{}", s.v);
    println!("U A V =\n{}", s.d);
    assert_eq!(&(&s.u * &a) * &s.v, s.d);

    let g = FgAbGroup::cokernel(&a);
    println!("Z^2 / colspan(A) = {g}");

    let wide = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    println!(
        "invariant factors of a 3x3 example: {:?}",
        smith_normal_form(&wide).invariant_factors()
    );
}
