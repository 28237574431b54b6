//! The Euler theory of λ on closed surfaces against the Frobenius algebra
//! with μ = λ².

use mtspec::exact::{Multiplicative, Unit};
use mtspec::tftlab::{euler_theory_value, frobenius_closed_value, FrobeniusData, ManifoldClass, SurfaceBordism};

fn main() {
    let mu = Unit::integer(5).unwrap();
    let f = FrobeniusData::new(mu.clone());
    println!(
        "μ = {mu}: comult {}, counit {}, verified {}",
        f.comult,
        f.counit,
        f.verify().passed
    );

    let tampered = FrobeniusData::from_parts(mu, Unit::one(), Unit::integer(2).unwrap());
    println!("tampered data violates {:?}", tampered.verify().violated());

    let lambda = Unit::ratio(-3, 2).unwrap();
    let mu = lambda.pow(2);
    for g in 0..=5 {
        let surface = ManifoldClass::surface(g);
        let euler = euler_theory_value(&lambda, SurfaceBordism::closed(&surface).unwrap());
        let frob = frobenius_closed_value(&mu, g);
        println!("g={g}: Euler {euler:<10} Frobenius {frob:<10} equal {}", euler == frob);
    }

    // A pair of pants read from one circle to two.
    let pants = SurfaceBordism {
        chi_total: -1,
        chi_source: 0,
    };
    println!("pants: {}", euler_theory_value(&lambda, pants));
}
