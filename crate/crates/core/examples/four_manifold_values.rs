use mtspec::exact::Unit;
use mtspec::notation::Style;
use mtspec::tftlab::{invertible_4d_monomial, invertible_4d_value, Catalog};

fn main() {
    let catalog = Catalog::builtin();
    let l1 = Unit::integer(2).unwrap();
    let l2 = "zeta6".parse::<Unit>().unwrap();
    for name in ["S4", "T4", "CP2", "K3", "CP2 # CP2", "S2xSigma_2", "K3 + S4"] {
        let m = catalog.parse_expression(name).unwrap();
        let mono = invertible_4d_monomial(&m).unwrap();
        let v = invertible_4d_value(&l1, &l2, &m).unwrap();
        println!(
            "{name:<12} χ={:<4} σ={:<4} p₁={:<4} {:<12} at (2, ζ₆): {}",
            m.euler,
            m.signature,
            m.p1_number,
            mono.render(Style::Unicode),
            v
        );
    }
}
