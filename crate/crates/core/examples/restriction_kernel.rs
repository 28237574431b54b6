//! The six (4;4) theories that become trivial once restricted to (4;3),
//! written with exact roots of unity.

use mtspec::classify::{restrict_theory, restriction_kernel, TheoryParams};
use mtspec::exact::Unit;
use mtspec::notation::Style;

fn main() {
    let k = restriction_kernel(4, 4, 3).unwrap();
    println!("{k}");
    let lambda = TheoryParams::new(vec![Unit::ratio(7, 2).unwrap(), Unit::ratio(-1, 3).unwrap()]);
    let base = restrict_theory(4, 4, 3, &lambda).unwrap();
    for kappa in k.elements.as_ref().unwrap() {
        let moved = kappa.times(&lambda);
        let image = restrict_theory(4, 4, 3, &moved).unwrap();
        println!(
            "κ = ({:<12}) κ·λ = ({:<20}) same restriction: {}",
            kappa.render(Style::Unicode),
            moved.render(Style::Unicode),
            image == base
        );
    }
    println!("{}", restriction_kernel(2, 2, 1).unwrap());
    println!("{}", restriction_kernel(4, 3, 1).unwrap());
}
