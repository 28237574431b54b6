use mtspec::classify::{gilmer_masbaum_report, mcg_extension_class, ExtensionClass};
use mtspec::notation::Style;

fn main() {
    let report = gilmer_masbaum_report().unwrap();
    print!("{}", report.render(Style::Unicode));

    for n in -3..=3 {
        let x = ExtensionClass::new(n);
        println!("{:>3} -> {}", x.render(Style::Ascii), mcg_extension_class(&x));
    }
}
