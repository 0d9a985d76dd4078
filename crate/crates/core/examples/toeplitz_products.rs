//! Toeplitz products and their finite-rank Hankel defects.
//!
//! `T(f)T(g) = T(fg) - H` where `H` has finite rank for rational symbols.

use bfredholm::operator::{hankel_defect, BlockOperator};
use bfredholm::scalar::GaussianRational as GR;
use bfredholm::symbol::RationalSymbol;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = RationalSymbol::factored(GR::one(), 0, &[(GR::ratio(1, 2), 1)], &[(GR::from_int(3), 1)])?;
    let g = RationalSymbol::factored(GR::one(), -1, &[], &[(GR::ratio(1, 3), 1)])?;
    println!("f = {f}\ng = {g}");

    let h = hankel_defect(&f, &g)?;
    println!("rank of T(f)T(g) - T(fg): {}", h.rank());

    let product = BlockOperator::toeplitz(f.clone()).mul(&BlockOperator::toeplitz(g.clone()))?;
    let expected = BlockOperator::toeplitz(f.mul(&g)).sub(&BlockOperator::finite_rank(h))?;
    assert!(product.op_equal(&expected)?);

    println!("top-left 4x4 window of T(f)T(g):");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| product.entry(0, i, j).map(|x| x.to_string())).collect::<Result<_, _>>()?;
        println!("  {}", row.join("  "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
