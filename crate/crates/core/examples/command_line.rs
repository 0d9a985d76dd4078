//! Driving the command-line interface in-process.

use bfredholm::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for args in [
        vec!["index", "T(z^3)"],
        vec!["--format", "json", "analyze", "T(z)"],
        vec!["entries", "T(z^-1) * T(z)", "--rows", "3", "--cols", "3"],
        vec!["--format", "csv", "scan", "T(z - 1/2)", "--radii", "1/16", "--directions", "4"],
        vec!["analyze", "T(z-1)"],
    ] {
        let out = run(std::iter::once("bfredholm").chain(args.iter().copied()));
        println!("$ bfredholm {}  (exit {})", args.join(" "), out.code);
        print!("{}", out.stdout);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
