//! Drives the command line in-process, in text and JSON form.

use mtspec::cli::run_with_data;

fn main() {
    let commands: &[&[&str]] = &[
        &["mtspec", "table", "hz"],
        &["mtspec", "classify", "--d", "2", "--n", "2"],
        &[
            "mtspec", "restrict", "--d", "4", "--from", "4", "--to", "3", "--params", "2,3",
        ],
        &["mtspec", "--ascii", "kernel", "--d", "4", "--from", "4", "--to", "3"],
        &[
            "mtspec",
            "bordism",
            "--d",
            "4",
            "--sum",
            "K3 + 8*S4",
            "--format",
            "json",
        ],
        &["mtspec", "classify", "--d", "5", "--n", "1"],
    ];
    for args in commands {
        let out = run_with_data(args.iter().copied(), None);
        println!("$ {}  [exit {}]", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
