//! `T(z - 1)` lies outside the class, yet every small shift off the curve
//! `|1 + λ| = 1` is Fredholm, with an index that depends on the side.

use bfredholm::engine::nonstability_demo;
use bfredholm::report::{emit_nonstability, Format};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = nonstability_demo();
    print!("{}", emit_nonstability(&report, Format::Text));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
