//! Classify `A - λe` on small circles around zero and print the table as CSV.

use bfredholm::dsl::{eval, parse};
use bfredholm::engine::{analyze, punctured_scan};
use bfredholm::report::{emit_scan, Format};
use bfredholm::scalar::rat;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = eval(&parse("T(z^2) (++) M[[0,1],[0,0]]")?)?;
    let table = punctured_scan(&a, &[rat(1, 8), rat(1, 16)], 4)?;
    print!("{}", emit_scan(&analyze(&a)?, &table, Format::Csv));
    assert!(table.samples.iter().all(|s| s.index == table.index_at_zero));

    // the zero symbol is B-Fredholm at 0 and Fredholm of index 0 nearby
    let b = eval(&parse("T(0) (++) M[[0,1],[0,0]]")?)?;
    let table = punctured_scan(&b, &[rat(1, 32)], 4)?;
    println!("at 0: {}", table.classification_at_zero);
    print!("{}", emit_scan(&analyze(&b)?, &table, Format::Csv));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
