use mtspec::classify::{classify, restrict_theory, restriction_matrix, TheoryParams};
use mtspec::exact::Unit;
use mtspec::notation::Style;

fn main() {
    for d in 1..=4 {
        for n in (1..=d).rev() {
            println!("({d}; {n}): {}", classify(d, n).unwrap().render(Style::Unicode));
        }
    }

    let a = restriction_matrix(4, 4, 3).unwrap();
    println!("\n{:?} -> {:?}\n{}", a.source_names, a.target_names, a.matrix);

    let lambda = TheoryParams::new(vec!["2".parse::<Unit>().unwrap(), "3".parse().unwrap()]);
    let restricted = restrict_theory(4, 4, 3, &lambda).unwrap();
    println!("(2, 3) restricts to ({})", restricted.render(Style::Unicode));

    let l = TheoryParams::new(vec!["-5/3".parse().unwrap()]);
    println!(
        "Euler theory -5/3 restricts to {}",
        restrict_theory(2, 2, 1, &l).unwrap().render(Style::Unicode)
    );
}
