//! The index of a Toeplitz-plus-finite-rank operator by two routes: the
//! trace of the commutator with a Drazin witness, and minus the winding
//! number of the symbol.

use bfredholm::dsl::{eval, parse};
use bfredholm::engine::analyze;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for src in [
        "T(z^3)",
        "T(z^-2) + FR{e0|fin[1,2]}",
        "T((z - 1/2)^2/(z - 3))",
        "T(z - 1/2i) (++) M[[0,1,0],[0,0,1],[0,0,0]]",
    ] {
        let a = eval(&parse(src)?)?;
        let r = analyze(&a)?;
        println!(
            "{src:<46} {:<10} trace {:>3?}  winding {:>3?}",
            r.classification.to_string(),
            r.index_trace,
            r.index_winding
        );
        assert_eq!(r.index_trace, r.index_winding);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
