//! Vector-field bordism classes of formal sums of closed manifolds.

use mtspec::notation::Style;
use mtspec::spectra::vf_splitting;
use mtspec::tftlab::{is_vf_nullbordant, vf_invariant, Catalog, FormalSum};

fn main() {
    let catalog = Catalog::builtin();
    for d in 1..=4 {
        println!("π_0 MTSO({d}) = {}", vf_splitting(d).unwrap().render(Style::Unicode));
    }

    let sums = [
        (1, "S1"),
        (1, "2*S1"),
        (2, "S2"),
        (2, "Sigma_4 + 3*S2"),
        (2, "Sigma_3 - (-2)*S2"),
        (3, "S3 + T3 - 7*S1xS2"),
        (4, "CP2"),
        (4, "K3"),
        (4, "CP2#CP2 - 2*CP2"),
        (4, "S2xSigma_5 + 8*S4"),
    ];
    for (d, text) in sums {
        let s = FormalSum::parse(text, catalog).unwrap();
        let inv = vf_invariant(d, &s).unwrap();
        println!(
            "d={d} {text:<22} invariant {:<10} nullbordant {}",
            inv.render(),
            is_vf_nullbordant(d, &s).unwrap()
        );
    }
}
