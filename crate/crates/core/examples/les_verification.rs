use mtspec::spectra::{verify_les, CertifiedTable};

fn main() {
    for d in [4, 3, 2] {
        let report = verify_les(d).unwrap();
        println!("d = {d}: all exact = {}", report.all_exact);
        for c in &report.chunks {
            println!("  k={}: {}", c.degree, c.rendered);
        }
    }

    // A single wrong coefficient is caught.
    let text = CertifiedTable::builtin_text().replace("p1u=3sigma", "p1u=sigma");
    let broken = CertifiedTable::parse(&text).unwrap();
    let report = broken.verify_les(4).unwrap();
    let bad: Vec<_> = report
        .steps
        .iter()
        .filter(|s| !s.exactness.exact)
        .map(|s| &s.position)
        .collect();
    println!("with p1u -> σ: not exact at {bad:?}");
}
