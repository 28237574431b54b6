//! Recovers the connected-cover rows from the long exact sequence, and shows
//! what is left when the side conditions are dropped.

use mtspec::abelian::{extensions, FgAbGroup};
use mtspec::spectra::{derive_cover_cohomology, standard_constraints};

fn main() {
    let z = FgAbGroup::free(1);
    for e in extensions(&z, &FgAbGroup::cyclic(6)).unwrap() {
        println!("0 -> Z -> {} -> Z/6 -> 0   (class {:?})", e.middle, e.class);
    }

    for d in 2..=4 {
        let cs = standard_constraints(d).unwrap();
        for k in 0..=5 {
            let r = derive_cover_cohomology(d, k, &cs).unwrap();
            println!("d={d} k={k}: {}", r.group.unwrap());
        }
    }

    let free = derive_cover_cohomology(3, 4, &[]).unwrap();
    let names: Vec<_> = free.candidates.iter().map(ToString::to_string).collect();
    println!("d=3 k=4 without constraints: {}", names.join(", "));
}
