//! Prints every stored row: the three Thom spectra, their connected covers
//! and `HZ` itself, with generator names.

use mtspec::notation::Style;
use mtspec::spectra::{cohomology, homotopy_group, CertifiedTable, SpectrumId, MAX_COHOMOLOGY_DEGREE};

fn main() {
    let style = Style::Unicode;
    for d in (2..=4).rev() {
        for cover in 0..=1 {
            let s = SpectrumId::new(d, cover).unwrap();
            let row: Vec<String> = (0..=MAX_COHOMOLOGY_DEGREE)
                .map(|k| cohomology(s, k).unwrap().render(style))
                .collect();
            println!("{:<18} {}", s.render(style), row.join(" | "));
        }
    }

    let table = CertifiedTable::builtin();
    let hz: Vec<String> = (0..=6).map(|k| table.hz_entry(k).unwrap().render(style)).collect();
    println!("{:<18} {}", "Hℤ", hz.join(" | "));

    println!();
    for d in 1..=4 {
        let pis: Vec<String> = (0..=u32::from(d))
            .map(|k| homotopy_group(d, k).unwrap().render(style))
            .collect();
        println!("π_*(Σ^{d}MTSO({d})) = {}", pis.join(", "));
    }

    // Higher covers are never stored; they resolve down the grid.
    let p3 = SpectrumId::new(4, 3).unwrap();
    println!("{} in degree 4: {}", p3, cohomology(p3, 4).unwrap());
}
