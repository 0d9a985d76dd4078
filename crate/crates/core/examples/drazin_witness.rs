//! A B-Fredholm operator that is not Fredholm: a zero symbol next to a
//! nilpotent Jordan block. Its witness is Drazin invertible modulo the
//! finite-rank ideal.

use bfredholm::dsl::{eval, parse};
use bfredholm::engine::{classify, drazin_witness, index_trace};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = eval(&parse("T(0) (++) M[[0,1,0],[0,0,1],[0,0,0]]")?)?;
    println!("a = {a}");
    println!("class: {}", classify(&a));

    let w = drazin_witness(&a)?;
    println!("witness a0 = {}", w.inverse);
    println!("quotient index p = {}", w.quotient_index);
    for (name, d) in ["a a0 - a0 a", "a0 a a0 - a0", "a^(p+1) a0 - a^p"].iter().zip(&w.defects) {
        println!("  {name}: in ideal = {}", d.in_ideal());
    }
    assert!(w.defects_in_ideal);
    println!("index = {}", index_trace(&a)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
